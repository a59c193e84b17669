use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::Vector;
use crate::homotopy::HodgeData;

use super::ring::{PolynomialRing, SharedRing};
use super::series::FormalSeries;

/// Which cohomology classes receive a parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FrameMode {
    /// Only `H¹`; all parameters are even of degree 0.
    Degree1,
    /// All of `H^*`; `t_α` has degree `1 - |γ_α|`.
    Full,
}

impl FrameMode {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "0" => Some(FrameMode::Degree1),
            "Z" | "z" => Some(FrameMode::Full),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FrameMode::Degree1 => "0",
            FrameMode::Full => "Z",
        }
    }
}

/// Linear coordinates `t^α` on cohomology, one per harmonic representative
/// `γ_α` kept by the mode, with the truncated polynomial ring they
/// generate.
#[derive(Clone, Debug)]
pub struct ParameterFrame {
    mode: FrameMode,
    dim: usize,
    ring: Arc<PolynomialRing>,
    representatives: Vec<Vector>,
    harmonic_indices: Vec<usize>,
}

impl ParameterFrame {
    pub fn new(h: &HodgeData, mode: FrameMode, order: usize) -> Self {
        let harmonic_indices: Vec<usize> = (0..h.harmonic_basis().len())
            .filter(|&a| mode == FrameMode::Full || h.harmonic_degree(a) == 1)
            .collect();
        let params: Vec<(String, i32)> = harmonic_indices
            .iter()
            .enumerate()
            .map(|(i, &a)| (format!("t{}", i + 1), 1 - h.harmonic_degree(a)))
            .collect();
        let representatives = harmonic_indices.iter().map(|&a| h.harmonic_basis()[a].clone()).collect();
        Self { mode, dim: h.space().dim(), ring: Arc::new(PolynomialRing::new(params, order)), representatives, harmonic_indices }
    }

    pub fn mode(&self) -> FrameMode {
        self.mode
    }

    pub fn ring(&self) -> &PolynomialRing {
        &self.ring
    }

    pub fn shared_ring(&self) -> SharedRing {
        self.ring.clone()
    }

    pub fn order(&self) -> usize {
        self.ring.order()
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn representatives(&self) -> &[Vector] {
        &self.representatives
    }

    /// Index in the harmonic basis of the class behind parameter `i`.
    pub fn harmonic_index(&self, i: usize) -> usize {
        self.harmonic_indices[i]
    }

    /// `Σ_α γ_α t^α`.
    pub fn linear_term(&self) -> FormalSeries {
        let mut s = FormalSeries::zero(self.dim);
        for (i, g) in self.representatives.iter().enumerate() {
            if let Some(t) = self.ring.param_index(i) {
                s.add_term(t, g, &crate::scalar::one());
            }
        }
        s
    }

    pub(crate) fn check_against(&self, h: &HodgeData) -> Result<()> {
        if self.dim != h.space().dim() {
            return Err(Error::FrameMismatch);
        }
        for (i, &a) in self.harmonic_indices.iter().enumerate() {
            if h.harmonic_basis().get(a) != Some(&self.representatives[i]) {
                return Err(Error::FrameMismatch);
            }
        }
        Ok(())
    }
}
