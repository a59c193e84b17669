//! Maurer–Cartan theory over local Artinian coefficient rings.

mod artin;
mod equation;
mod frame;
mod report;
pub mod ring;
pub mod series;

pub use artin::{
    gauge_direction, gauge_tangency, kuranishi_bijection_check, nilpotent_residual, residual_derivative, tensor_vector_to_series,
    tensor_with_artin, BijectionReport,
};
pub use equation::{
    classical_residual, degeneration_check, kuranishi_inverse, kuranishi_locus, kuranishi_map, mc_residual, power, versal_solution,
    DegenerationReport, IdealSpan, LocusGenerator, LocusIdeal,
};
pub use frame::{FrameMode, ParameterFrame};
pub use report::{moduli_report, ModuliReport};
pub use ring::{ArtinAlgebra, CoefficientRing, GroundField, PolynomialRing, RingElement, SharedRing, TensorRing};
pub use series::{eval_multi, eval_tensor, expand_arguments, FormalSeries};
