//! The Maurer–Cartan equation, versal solutions and the Kuranishi locus.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded::{GradedSpace, Sign};
use crate::homotopy::HodgeData;
use crate::linalg;
use crate::scalar::{factorial, ratio, Scalar};
use crate::structures::{Dgla, LInfinityStructure};

use super::frame::ParameterFrame;
use super::ring::{CoefficientRing, RingElement};
use super::series::{eval_multi, FormalSeries};

fn check_degree_one(space: &GradedSpace, ring: &dyn CoefficientRing, gamma: &FormalSeries) -> Result<()> {
    if gamma.dim() != space.dim() {
        return Err(Error::SpaceMismatch);
    }
    if !gamma.is_homogeneous(space, ring, 1) {
        return Err(Error::DegreeMismatch("Γ must have total degree 1".into()));
    }
    if !gamma.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    Ok(())
}

/// `μ_k(Γ, ..., Γ)`.
pub fn power(l: &LInfinityStructure, ring: &dyn CoefficientRing, gamma: &FormalSeries, k: usize) -> Result<FormalSeries> {
    let args = vec![gamma; k];
    Ok(eval_multi(l.op(k)?, ring, &args))
}

/// `dΓ + ½μ_2(Γ,Γ) - (1/3!)μ_3(Γ,Γ,Γ) - (1/4!)μ_4(...) + ...`, i.e.
/// `-Σ_k (-1)^{k(k+1)/2}/k! μ_k(Γ,...,Γ)`. The sum stops at the nilpotency
/// bound of the ring, so truncation is implicit.
pub fn mc_residual(l: &LInfinityStructure, ring: &dyn CoefficientRing, gamma: &FormalSeries) -> Result<FormalSeries> {
    residual_through(l, ring, gamma, ring.nilpotency_bound())
}

/// The residual summed through arity `max_k`; exact whenever
/// `μ_k(Γ,...,Γ)` vanishes for `k > max_k`.
pub(crate) fn residual_through(
    l: &LInfinityStructure,
    ring: &dyn CoefficientRing,
    gamma: &FormalSeries,
    max_k: usize,
) -> Result<FormalSeries> {
    check_degree_one(l.space(), ring, gamma)?;
    let mut out = FormalSeries::zero(l.space().dim());
    if gamma.is_zero() {
        return Ok(out);
    }
    for k in 1..=max_k {
        let op = l.op(k)?;
        if op.is_zero() {
            continue;
        }
        let value = eval_multi(op, ring, &vec![gamma; k]);
        let c = -Sign::power((k * (k + 1) / 2) as i64).to_scalar() / factorial(k);
        out.add_scaled(&value, &c);
    }
    Ok(out)
}

/// `dΓ + ½[Γ,Γ]`.
pub fn classical_residual(a: &Dgla, ring: &dyn CoefficientRing, gamma: &FormalSeries) -> FormalSeries {
    let mut out = gamma.apply(a.d());
    out.add_scaled(&eval_multi(a.bracket(), ring, &[gamma, gamma]), &ratio(1, 2));
    out
}

/// `Γ_1 = Σ γ_α t^α`, `Γ_n = -½η(Σ_{k=1}^{n-1} [Γ_k, Γ_{n-k}])`, through the
/// order of the frame.
pub fn versal_solution(a: &Dgla, h: &HodgeData, frame: &ParameterFrame) -> Result<FormalSeries> {
    if h.space() != a.space() || h.d() != a.d() {
        return Err(Error::HodgeMismatch);
    }
    frame.check_against(h)?;
    let ring = frame.ring();
    let mut gamma = frame.linear_term();
    for n in 2..=frame.order() {
        let bracket = eval_multi(a.bracket(), ring, &[&gamma, &gamma]).band(ring, n);
        let term = bracket.apply(h.eta()).scaled(&ratio(-1, 2));
        gamma.add_assign(&term);
    }
    Ok(gamma)
}

/// `Γ + ½η[Γ,Γ]`.
pub fn kuranishi_map(a: &Dgla, eta: &crate::graded::HomogeneousMap, ring: &dyn CoefficientRing, gamma: &FormalSeries) -> FormalSeries {
    let mut out = gamma.clone();
    out.add_scaled(&eval_multi(a.bracket(), ring, &[gamma, gamma]).apply(eta), &ratio(1, 2));
    out
}

/// Inverse of [`kuranishi_map`] on nilpotent elements: iterates
/// `Γ ← Γ̃ - ½η[Γ,Γ]`, which stabilizes after `nilpotency_bound` steps.
pub fn kuranishi_inverse(a: &Dgla, eta: &crate::graded::HomogeneousMap, ring: &dyn CoefficientRing, target: &FormalSeries) -> FormalSeries {
    let mut x = target.clone();
    for _ in 0..ring.nilpotency_bound() {
        let mut next = target.clone();
        next.add_scaled(&eval_multi(a.bracket(), ring, &[&x, &x]).apply(eta), &ratio(-1, 2));
        x = next;
    }
    x
}

/// One polynomial equation of the locus, tagged with its cohomology class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocusGenerator {
    /// Index in the harmonic basis.
    pub class: usize,
    pub polynomial: RingElement,
}

/// Equations `P_H[Γ(t), Γ(t)] = 0` in the harmonic basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocusIdeal {
    pub generators: Vec<LocusGenerator>,
}

impl LocusIdeal {
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Linear span of `m · g` over monomials `m` and generators `g`, in
    /// reduced row echelon form.
    /// The ideal generated by the coordinates of a series.
    pub fn from_series(s: &FormalSeries) -> Self {
        let generators = (0..s.dim())
            .map(|class| LocusGenerator { class, polynomial: s.coordinate(class) })
            .filter(|g| !g.polynomial.is_zero())
            .collect();
        Self { generators }
    }

    pub fn span(&self, ring: &dyn CoefficientRing) -> IdealSpan {
        let n = ring.len();
        let mut rows = Vec::new();
        for gen in &self.generators {
            for m in 0..n {
                let p = RingElement::basis(m).mul(&gen.polynomial, ring);
                if !p.is_zero() {
                    rows.push(p.to_dense(n));
                }
            }
        }
        let pivots = linalg::rref(&mut rows);
        rows.truncate(pivots.len());
        IdealSpan { rows, pivots, len: n }
    }

    /// Bands (total degrees) in which generators have terms.
    pub fn bands(&self, ring: &dyn CoefficientRing) -> Vec<usize> {
        let mut b: Vec<usize> = self
            .generators
            .iter()
            .flat_map(|g| g.polynomial.terms().keys().map(|&m| ring.weight(m)).collect::<Vec<_>>())
            .collect();
        b.sort_unstable();
        b.dedup();
        b
    }
}

/// Echelon basis of a truncated ideal, for membership tests.
#[derive(Clone, Debug)]
pub struct IdealSpan {
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    len: usize,
}

impl IdealSpan {
    pub fn contains(&self, f: &RingElement) -> bool {
        let mut v = f.to_dense(self.len);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &c * r;
                }
            }
        }
        v.iter().all(Zero::is_zero)
    }

    /// Every coordinate of the series lies in the ideal.
    pub fn contains_series(&self, s: &FormalSeries) -> bool {
        (0..s.dim()).all(|i| self.contains(&s.coordinate(i)))
    }
}

pub fn kuranishi_locus(a: &Dgla, h: &HodgeData, frame: &ParameterFrame, gamma: &FormalSeries) -> Result<LocusIdeal> {
    if h.space() != a.space() || h.d() != a.d() {
        return Err(Error::HodgeMismatch);
    }
    let ring = frame.ring();
    let bracket = eval_multi(a.bracket(), ring, &[gamma, gamma]);
    let classes = h.harmonic_basis().len();
    let mut polys = vec![RingElement::zero(); classes];
    for (b, v) in bracket.terms() {
        for (alpha, c) in h.harmonic_coordinates(v).into_iter().enumerate() {
            polys[alpha].add_term(*b, &c);
        }
    }
    let generators = polys
        .into_iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(class, polynomial)| LocusGenerator { class, polynomial })
        .collect();
    Ok(LocusIdeal { generators })
}

/// Verdicts of the reduction of the L∞ Maurer–Cartan equation to the
/// classical one along the locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationReport {
    /// `μ_2(Γ,Γ) ≡ [Γ,Γ]` modulo the ideal.
    pub quadratic: bool,
    /// `(n, μ_n(Γ,...,Γ) ≡ 0)` for `3 ≤ n ≤ max_arity`.
    pub higher: Vec<(usize, bool)>,
    /// The residual `≡ dΓ + ½[Γ,Γ]`.
    pub classical: bool,
}

impl DegenerationReport {
    pub fn passes(&self) -> bool {
        self.quadratic && self.classical && self.higher.iter().all(|(_, ok)| *ok)
    }
}

pub fn degeneration_check(
    a: &Dgla,
    l: &LInfinityStructure,
    frame: &ParameterFrame,
    gamma: &FormalSeries,
    ideal: &LocusIdeal,
    max_arity: usize,
) -> Result<DegenerationReport> {
    let ring = frame.ring();
    let span = ideal.span(ring);
    let bracket = eval_multi(a.bracket(), ring, &[gamma, gamma]);
    let quadratic = span.contains_series(&power(l, ring, gamma, 2)?.sub(&bracket));
    let mut higher = Vec::new();
    for n in 3..=max_arity {
        higher.push((n, span.contains_series(&power(l, ring, gamma, n)?)));
    }
    let residual = mc_residual(l, ring, gamma)?;
    let classical = span.contains_series(&residual.sub(&classical_residual(a, ring, gamma)));
    Ok(DegenerationReport { quadratic, higher, classical })
}
