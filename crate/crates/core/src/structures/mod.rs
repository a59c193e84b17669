//! DGLAs, DGAs, L∞ and A∞ structures with exact identity checkers, the
//! homological vector field picture, and twisting by Maurer–Cartan
//! elements.

mod ainf;
mod deform;
mod dgla;
mod field;
mod linf;
mod morphism;
mod ops;

pub use ainf::AInfinityStructure;
pub(crate) use ainf::all_tuples;
pub use deform::{deform_structure, deformed_differential, SeriesLInfinity, SeriesOp};
pub use dgla::{Dga, DgaReport, Dgla, DglaReport};
pub use field::{shift_sign, PolyVectorField};
pub use linf::{Generator, LInfinityStructure};
pub use morphism::LMorphismToAbelian;
pub use ops::{ArityDefects, DefectReport};
