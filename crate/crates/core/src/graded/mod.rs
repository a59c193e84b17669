//! Graded vector spaces, sign conventions and graded multilinear maps.
//!
//! Everything in the crate is evaluated against this substrate: exact
//! rational vectors in a finite Z-graded space, homogeneous linear maps,
//! Koszul signs and shuffles, and multilinear maps that are either graded
//! antisymmetric (the exterior convention used for L-infinity operations),
//! graded symmetric in the shifted grading (coalgebra picture), or carry no
//! symmetry at all (A-infinity operations).

mod map;
pub(crate) mod multi;
pub(crate) mod perm;
mod space;

pub use map::HomogeneousMap;
pub use multi::{canonical_tuples, canonicalize, Convention, MultiMap, TensorMap};
pub use perm::{koszul_sign, shuffles, Permutation, Shuffle, ShuffleTable, Sign};
pub use space::{BasisElement, GradedSpace, Shifted, Vector};
