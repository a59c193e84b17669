//! Deformations over a fixed local Artinian algebra `B`: the structure on
//! `g ⊗ m`, the Kuranishi correspondence, and gauge directions.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{canonical_tuples, GradedSpace, HomogeneousMap, MultiMap, Vector};
use crate::homotopy::induce_linfinity;
use crate::scalar::{factorial, one};
use crate::graded::Sign;
use crate::structures::{deform_structure, Dgla, Generator, LInfinityStructure};

use super::equation::{LocusIdeal, kuranishi_inverse, kuranishi_map, mc_residual, residual_through};
use super::ring::{ArtinAlgebra, CoefficientRing, PolynomialRing, SharedRing, TensorRing};
use super::series::{eval_multi, FormalSeries};

/// Basis of `g ⊗ m`: pairs `(i, b)` with `b ≥ 1`, index `i * |m| + (b - 1)`.
fn tensor_space(g: &GradedSpace, b: &dyn CoefficientRing) -> Result<GradedSpace> {
    let mut basis = Vec::new();
    for i in 0..g.dim() {
        for r in 1..b.len() {
            basis.push((format!("{}*{}", g.label(i), b.label(r)), g.degree(i) + b.degree(r)));
        }
    }
    GradedSpace::new(basis)
}

/// The L∞-structure on the nilpotent algebra `g ⊗ m` with
/// `μ_n(v_1 b_1, ..., v_n b_n) = ±μ_n(v_1, ..., v_n) b_1 ... b_n`. Operations
/// beyond the nilpotency bound of `B` vanish.
pub fn tensor_with_artin(l: &LInfinityStructure, b: &ArtinAlgebra) -> Result<LInfinityStructure> {
    let g = l.space();
    let space = tensor_space(g, b)?;
    let m = b.len() - 1;
    let top = b.nilpotency_bound();
    let mut ops = Vec::with_capacity(top);
    for n in 1..=top {
        let mu = l.op(n)?;
        let mut op = MultiMap::exterior(n, &space, 2 - n as i32);
        if !mu.is_zero() {
            let tuples = canonical_tuples(&space, n);
            let values = crate::par::map(&tuples, |t| {
                let args: Vec<FormalSeries> =
                    t.iter().map(|&j| FormalSeries::monomial(&g.basis_vector(j / m), j % m + 1)).collect();
                let refs: Vec<&FormalSeries> = args.iter().collect();
                let value = eval_multi(mu, b, &refs);
                let mut out = space.zero_vector();
                for (r, v) in value.terms() {
                    for (i, c) in v.support() {
                        out.add_coeff(i * m + r - 1, c);
                    }
                }
                out
            });
            for (t, v) in tuples.into_iter().zip(values) {
                if !v.is_zero() {
                    op.insert_canonical(t, v);
                }
            }
        }
        ops.push(op);
    }
    LInfinityStructure::new(&space, ops, top.max(1), Generator::Zero)
}

/// `-Σ_k (-1)^{k(k+1)/2}/k! μ_k(x,...,x)` for a plain vector of a nilpotent
/// structure whose operations vanish past its arity cap.
pub fn nilpotent_residual(l: &LInfinityStructure, x: &Vector) -> Result<Vector> {
    let mut out = l.space().zero_vector();
    for k in 1..=l.arity_cap() {
        let op = l.op(k)?;
        if op.is_zero() {
            continue;
        }
        let value = op.evaluate(&vec![x.clone(); k])?;
        out.add_scaled(&value, &(-Sign::power((k * (k + 1) / 2) as i64).to_scalar() / factorial(k)));
    }
    Ok(out)
}

/// Element of `g ⊗ m` as a series over `B`.
pub fn tensor_vector_to_series(g: &GradedSpace, b: &dyn CoefficientRing, x: &Vector) -> FormalSeries {
    let m = b.len() - 1;
    let mut s = FormalSeries::zero(g.dim());
    for (j, c) in x.support() {
        s.add_coeff(j % m + 1, j / m, c);
    }
    s
}

/// Outcome of the Kuranishi correspondence test over one algebra `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionReport {
    /// Number of independent coefficients in the generic element of
    /// `(g ⊗ m)¹`.
    pub generic_parameters: usize,
    /// `c` with `d k(Γ) = R(Γ) + c η[Γ, R(Γ)]` for the generic `Γ`, where
    /// `k(Γ) = Γ + ½η[Γ,Γ]` and `R` is the L∞ residual; `None` when neither
    /// sign works.
    pub intertwining_sign: Option<i32>,
    /// Solving `Γ = Γ̃ - ½η[Γ,Γ]` by iteration recovers the generic `Γ`.
    pub inverse_recovers: bool,
}

impl BijectionReport {
    /// Since `1 + cη[Γ, -]` is invertible on nilpotent elements, the
    /// intertwining identity makes `k` carry L∞ solutions exactly onto
    /// `d`-closed elements, and the inverse makes it a bijection.
    pub fn passes(&self) -> bool {
        self.intertwining_sign.is_some() && self.inverse_recovers
    }
}

/// Tests that `Γ ↦ Γ + ½η[Γ,Γ]` is a bijection between solutions of the L∞
/// equation of the induced structure and `d`-closed elements, symbolically in
/// a generic element of `(g ⊗ m)¹`.
pub fn kuranishi_bijection_check(a: &Dgla, eta: &HomogeneousMap, b: SharedRing) -> Result<BijectionReport> {
    let g = a.space();
    let top = b.nilpotency_bound();
    let l = induce_linfinity(a, eta, top.max(2))?;
    let pairs: Vec<(usize, usize)> = (0..g.dim())
        .flat_map(|i| (1..b.len()).map(move |r| (i, r)))
        .filter(|&(i, r)| g.degree(i) + b.degree(r) == 1)
        .collect();
    let params: Vec<(String, i32)> = (0..pairs.len()).map(|j| (format!("c{}", j + 1), 0)).collect();
    let coeffs = PolynomialRing::new(params, top.max(1));
    let c_index: Vec<usize> = (0..pairs.len()).map(|j| coeffs.param_index(j).expect("order ≥ 1")).collect();
    let ring = TensorRing::new(b, Arc::new(coeffs));
    let mut gamma = FormalSeries::zero(g.dim());
    for (j, &(i, r)) in pairs.iter().enumerate() {
        gamma.add_coeff(ring.join(r, c_index[j]), i, &one());
    }
    // each term of Γ carries one factor from m, so arities past `top` vanish
    let residual = residual_through(&l, &ring, &gamma, top)?;
    let lhs = kuranishi_map(a, eta, &ring, &gamma).apply(a.d());
    let correction = eval_multi(a.bracket(), &ring, &[&gamma, &residual]).apply(eta);
    let intertwining_sign = [1i32, -1].into_iter().find(|&c| {
        let mut rhs = residual.clone();
        rhs.add_scaled(&correction, &crate::scalar::int(c.into()));
        rhs == lhs
    });
    let x = kuranishi_inverse(a, eta, &ring, &kuranishi_map(a, eta, &ring, &gamma));
    Ok(BijectionReport { generic_parameters: pairs.len(), intertwining_sign, inverse_recovers: x == gamma })
}

/// Infinitesimal gauge action of `α ∈ g⁰` at a solution `Γ`: the value at
/// `Γ` of the vector field `[Q, Ψ(α)]`, computed by translating `Q` to `Γ[1]`
/// and reading off its linear coefficient on `α`. Equals `d_Γ α`.
pub fn gauge_direction(l: &LInfinityStructure, gamma: &FormalSeries, ring: SharedRing, alpha: &Vector) -> Result<FormalSeries> {
    if !mc_residual(l, &*ring, gamma)?.is_zero() {
        return Err(Error::NotMaurerCartan(ring.nilpotency_bound()));
    }
    field_value(l, gamma, ring, alpha)
}

fn field_value(l: &LInfinityStructure, gamma: &FormalSeries, ring: SharedRing, alpha: &Vector) -> Result<FormalSeries> {
    if !l.space().is_of_degree(alpha, 0) {
        return Err(Error::DegreeMismatch("gauge parameter must have degree 0".into()));
    }
    let twisted = deform_structure(l, gamma, ring, 1)?;
    Ok(twisted.apply_unary(&FormalSeries::constant(alpha)))
}

/// Derivative of the residual at `Γ` along `x`, read off from
/// `R(Γ + εx) = R(Γ) + ε DR(Γ)[x]` over `B[ε]/ε²`.
pub fn residual_derivative(l: &LInfinityStructure, gamma: &FormalSeries, ring: SharedRing, x: &FormalSeries) -> Result<FormalSeries> {
    let dual = TensorRing::new(ring, Arc::new(ArtinAlgebra::dual_numbers()));
    let mut lifted = FormalSeries::zero(gamma.dim());
    for (r, v) in gamma.terms() {
        lifted.add_term(dual.join(*r, 0), v, &one());
    }
    for (r, v) in x.terms() {
        lifted.add_term(dual.join(*r, 1), v, &one());
    }
    let full = mc_residual(l, &dual, &lifted)?;
    let mut out = FormalSeries::zero(gamma.dim());
    for (r, v) in full.terms() {
        let (left, eps) = dual.split(*r);
        if eps == 1 {
            out.add_term(left, v, &one());
        }
    }
    Ok(out)
}

/// Whether the gauge direction of `α` at `Γ` is tangent to the solution
/// set: the derivative of the residual along it lies in the ideal generated
/// by the coefficients of the residual. For a solution this says the
/// derivative vanishes.
pub fn gauge_tangency(l: &LInfinityStructure, gamma: &FormalSeries, ring: SharedRing, alpha: &Vector) -> Result<bool> {
    let x = field_value(l, gamma, ring.clone(), alpha)?;
    let derivative = residual_derivative(l, gamma, ring.clone(), &x)?;
    let residual = mc_residual(l, &*ring, gamma)?;
    Ok(LocusIdeal::from_series(&residual).span(&*ring).contains_series(&derivative))
}
