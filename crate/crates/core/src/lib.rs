//! Exact homological algebra for L∞ and A∞ structures: graded multilinear
//! maps, homotopy transfer along a contraction, and the Maurer–Cartan
//! equation over Artinian coefficient rings.

pub mod cli;
pub mod error;
pub mod graded;
pub mod homotopy;
pub mod linalg;
pub mod mc;
pub mod scalar;
pub mod structures;
pub mod fixtures;
mod par;

pub use error::{Error, Result};
pub use scalar::Scalar;
