use std::collections::BTreeMap;

use crate::error::Result;
use crate::homotopy::{induce_linfinity, obstruction_map, HodgeData, ObstructionForm};
use crate::structures::Dgla;

use super::equation::{degeneration_check, kuranishi_locus, kuranishi_map, mc_residual, versal_solution};
use super::equation::{DegenerationReport, LocusIdeal};
use super::frame::{FrameMode, ParameterFrame};
use super::series::FormalSeries;

/// Everything known about the formal moduli germ at the base point.
#[derive(Clone, Debug)]
pub struct ModuliReport {
    pub frame: ParameterFrame,
    pub max_arity: usize,
    /// `dim H^k` by degree `k` (only nonzero entries).
    pub cohomology: BTreeMap<i32, usize>,
    /// `dim H¹` in mode 0, `dim H^*` in mode Z.
    pub moduli_dimension: usize,
    pub obstruction: ObstructionForm,
    pub versal: FormalSeries,
    /// `Γ + ½η[Γ,Γ] = Σ γ_α t^α` holds exactly.
    pub kuranishi_relation: bool,
    pub locus: LocusIdeal,
    /// The L∞ residual of `Γ` vanishes through the order.
    pub residual_vanishes: bool,
    pub degeneration: DegenerationReport,
    /// `H² = 0`, so the classical and L∞ deformation functors agree.
    pub unobstructed: bool,
}

impl ModuliReport {
    pub fn passes(&self) -> bool {
        self.kuranishi_relation && self.residual_vanishes && self.degeneration.passes()
    }
}

pub fn moduli_report(a: &Dgla, h: &HodgeData, mode: FrameMode, order: usize, max_arity: usize) -> Result<ModuliReport> {
    let frame = ParameterFrame::new(h, mode, order);
    let l = induce_linfinity(a, h.eta(), max_arity.max(order))?;
    let gamma = versal_solution(a, h, &frame)?;
    let ring = frame.ring();
    let kuranishi_relation = kuranishi_map(a, h.eta(), ring, &gamma) == frame.linear_term().truncated(ring, order);
    let locus = kuranishi_locus(a, h, &frame, &gamma)?;
    let residual_vanishes = mc_residual(&l, ring, &gamma)?.is_zero();
    let degeneration = degeneration_check(a, &l, &frame, &gamma, &locus, max_arity)?;
    let cohomology = h.cohomology_dims().into_iter().filter(|(_, n)| *n > 0).collect::<BTreeMap<_, _>>();
    let moduli_dimension = frame.len();
    Ok(ModuliReport {
        unobstructed: !cohomology.contains_key(&2),
        obstruction: obstruction_map(a, h)?,
        max_arity,
        cohomology,
        moduli_dimension,
        versal: gamma,
        kuranishi_relation,
        locus,
        residual_vanishes,
        degeneration,
        frame,
    })
}
