//! Contractions onto cohomology and the structures they induce.

mod hodge;
mod induce;
mod obstruction;

pub use hodge::{HodgeData, HodgeReport};
pub use induce::{
    complementary_structure, explicit_mu3, homotopy_commutator, induce_ainfinity, induce_linfinity, kuranishi_morphism,
};
pub use obstruction::{obstruction_map, ObstructionForm};
