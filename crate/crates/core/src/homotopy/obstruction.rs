use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::structures::Dgla;

use super::hodge::HodgeData;

/// The induced bracket on cohomology, `([γ_α], [γ_β]) ↦ [P_H[γ_α, γ_β]]`,
/// in the harmonic basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionForm {
    /// `entries[α][β]` are the harmonic coordinates of `P_H[γ_α, γ_β]`.
    pub entries: Vec<Vec<Vec<Scalar>>>,
    pub degrees: Vec<i32>,
}

impl ObstructionForm {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().flatten().all(Zero::is_zero)
    }

    pub fn entry(&self, alpha: usize, beta: usize) -> &[Scalar] {
        &self.entries[alpha][beta]
    }
}

pub fn obstruction_map(a: &Dgla, h: &HodgeData) -> Result<ObstructionForm> {
    if h.space() != a.space() || h.d() != a.d() {
        return Err(Error::HodgeMismatch);
    }
    let basis = h.harmonic_basis();
    let entries = basis
        .iter()
        .map(|x| basis.iter().map(|y| h.harmonic_coordinates(&a.br(x, y))).collect())
        .collect();
    let degrees = (0..basis.len()).map(|i| h.harmonic_degree(i)).collect();
    Ok(ObstructionForm { entries, degrees })
}
