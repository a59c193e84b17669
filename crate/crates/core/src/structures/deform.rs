//! Twisting an L∞-structure by an element `Γ ∈ (g ⊗ m)¹`.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use crate::error::{Error, Result};
use crate::graded::{canonical_tuples, multi::sort_in_place, Convention, GradedSpace, Sign};
use crate::mc::{eval_multi, expand_arguments, CoefficientRing, FormalSeries, RingElement, SharedRing};
use crate::scalar::{factorial, Scalar};

use super::field::{shift_sign, PolyVectorField};
use super::linf::LInfinityStructure;
use super::ops::{collect_defects, shuffle_composite, DefectReport, OpFamily};

/// An operation `Λ^n g → g ⊗ B`, stored on canonical tuples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeriesOp {
    pub values: BTreeMap<Vec<usize>, FormalSeries>,
}

/// L∞-structure on `g ⊗ B` given by `B`-valued operations on basis tuples
/// of `g`, extended `B`-multilinearly.
#[derive(Clone)]
pub struct SeriesLInfinity {
    space: GradedSpace,
    ring: SharedRing,
    ops: Vec<SeriesOp>,
}

impl std::fmt::Debug for SeriesLInfinity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SeriesLInfinity").field("space", &self.space).field("ops", &self.ops).finish()
    }
}

impl SeriesLInfinity {
    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn ring(&self) -> &dyn CoefficientRing {
        &*self.ring
    }

    pub fn arity_cap(&self) -> usize {
        self.ops.len()
    }

    pub fn op(&self, n: usize) -> Result<&SeriesOp> {
        self.ops.get(n.wrapping_sub(1)).ok_or(Error::MissingArity(n))
    }

    /// Value on a basis tuple in any order.
    pub fn eval_basis(&self, n: usize, tuple: &[usize]) -> FormalSeries {
        let mut acc = FormalSeries::zero(self.space.dim());
        self.accumulate_basis(n, &mut acc, tuple, Sign::Plus);
        acc
    }

    /// The unary operation applied to a series.
    pub fn apply_unary(&self, v: &FormalSeries) -> FormalSeries {
        let mut acc = FormalSeries::zero(self.space.dim());
        self.accumulate_first(1, &mut acc, v, &[], Sign::Plus);
        acc
    }

    /// Whether the unary operation is the identity-free part `d_Γ` with
    /// `d_Γ² = 0` on every basis vector.
    pub fn differential_squares_to_zero(&self) -> Vec<(usize, FormalSeries)> {
        (0..self.space.dim())
            .map(|i| (i, self.apply_unary(&self.eval_basis(1, &[i]))))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    pub fn check(&self, max_arity: usize) -> Result<DefectReport<FormalSeries>> {
        if max_arity > self.ops.len() {
            return Err(Error::MissingArity(max_arity));
        }
        let degrees = self.space.degrees();
        let per_arity = (1..=max_arity)
            .map(|n| {
                collect_defects(
                    n,
                    canonical_tuples(&self.space, n),
                    |t| shuffle_composite(self, self, t, degrees),
                    FormalSeries::is_zero,
                )
            })
            .collect();
        Ok(DefectReport { per_arity })
    }
}

impl OpFamily for SeriesLInfinity {
    type Value = FormalSeries;

    fn zero(&self) -> FormalSeries {
        FormalSeries::zero(self.space.dim())
    }

    fn is_zero(value: &FormalSeries) -> bool {
        value.is_zero()
    }

    fn accumulate_basis(&self, n: usize, acc: &mut FormalSeries, tuple: &[usize], sign: Sign) {
        let mut t = tuple.to_vec();
        let Some(s) = sort_in_place(&mut t, self.space.degrees(), Convention::Exterior) else {
            return;
        };
        if let Some(v) = self.ops[n - 1].values.get(&t) {
            acc.add_scaled(v, &(s * sign).to_scalar());
        }
    }

    fn accumulate_first(&self, n: usize, acc: &mut FormalSeries, first: &FormalSeries, rest: &[usize], sign: Sign) {
        let rest_degree: i32 = rest.iter().map(|&i| self.space.degree(i)).sum();
        let mut tuple = Vec::with_capacity(rest.len() + 1);
        for (b, v) in first.terms() {
            let pass = Sign::koszul(self.ring.degree(*b), rest_degree) * sign;
            let coefficient = RingElement::basis(*b);
            for (j, c) in v.support() {
                tuple.clear();
                tuple.push(j);
                tuple.extend_from_slice(rest);
                let value = self.eval_basis(n, &tuple);
                if value.is_zero() {
                    continue;
                }
                acc.add_scaled(&value.mul_right(&coefficient, &*self.ring), &(pass.to_scalar() * c));
            }
        }
    }

    fn vanishes(&self, n: usize) -> bool {
        self.ops.get(n - 1).map_or(true, |op| op.values.is_empty())
    }
}

fn check_twist(space: &GradedSpace, ring: &dyn CoefficientRing, gamma: &FormalSeries) -> Result<()> {
    if gamma.dim() != space.dim() {
        return Err(Error::SpaceMismatch);
    }
    if !gamma.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    if !gamma.is_homogeneous(space, ring, 1) {
        return Err(Error::DegreeMismatch("Γ must have total degree 1".into()));
    }
    Ok(())
}

/// The twisted structure `μ^Γ`, obtained by translating the homological
/// vector field to `Γ[1]` and reading its Taylor coefficients back:
/// `μ̂^Γ_n(w) = Σ_k 1/k! μ̂_{n+k}(Γ[1]^k, w)`. Requires the operations of
/// `l` through arity `max_arity + p`, with `p` the nilpotency bound of `B`.
pub fn deform_structure(
    l: &LInfinityStructure,
    gamma: &FormalSeries,
    ring: SharedRing,
    max_arity: usize,
) -> Result<SeriesLInfinity> {
    let g = l.space();
    check_twist(g, &*ring, gamma)?;
    let depth = if gamma.is_zero() { 0 } else { ring.nilpotency_bound() };
    let q = PolyVectorField::from_linfinity(l, max_arity + depth)?;
    let shifted: Vec<i32> = g.degrees().iter().map(|d| d - 1).collect();
    // Γ[1]^k expanded once per k: (canonical prefix, ring index) -> coefficient
    let powers: Vec<HashMap<(Vec<usize>, usize), Scalar>> = (0..=depth)
        .map(|k| expand_arguments(g, &*ring, Convention::ShiftedSymmetric, &vec![gamma; k]))
        .collect();
    let mut ops = Vec::with_capacity(max_arity);
    for n in 1..=max_arity {
        let tuples = canonical_tuples(g, n);
        let values = crate::par::map(&tuples, |t| {
            let t_shifted: i32 = t.iter().map(|&i| shifted[i]).sum();
            let mut out = FormalSeries::zero(g.dim());
            for (k, power) in powers.iter().enumerate() {
                let component = q.component(n + k).expect("computed through max_arity + depth");
                if component.is_zero() {
                    continue;
                }
                let inv = Scalar::one() / factorial(k);
                for ((prefix, r), c) in power {
                    let mut tuple = prefix.clone();
                    tuple.extend_from_slice(t);
                    let Some(sort) = sort_in_place(&mut tuple, g.degrees(), Convention::ShiftedSymmetric) else {
                        continue;
                    };
                    if let Some(v) = component.get_canonical(&tuple) {
                        let sign = sort * Sign::koszul(ring.degree(*r), t_shifted);
                        out.add_term(*r, v, &(sign.to_scalar() * c * &inv));
                    }
                }
            }
            let degrees: Vec<i32> = t.iter().map(|&i| g.degree(i)).collect();
            out.scaled(&shift_sign(&degrees).to_scalar())
        });
        let mut op = SeriesOp::default();
        for (t, v) in tuples.into_iter().zip(values) {
            if !v.is_zero() {
                op.values.insert(t, v);
            }
        }
        ops.push(op);
    }
    Ok(SeriesLInfinity { space: g.clone(), ring, ops })
}

/// `d_Γ v = -Σ_{k≥1} (-1)^{k(k+1)/2} / (k-1)! μ_k(Γ,...,Γ,v)`.
pub fn deformed_differential(
    l: &LInfinityStructure,
    gamma: &FormalSeries,
    ring: &dyn CoefficientRing,
    v: &FormalSeries,
) -> Result<FormalSeries> {
    let g = l.space();
    check_twist(g, ring, gamma)?;
    let mut out = FormalSeries::zero(g.dim());
    for k in 1..=ring.nilpotency_bound() + 1 {
        let mu = l.op(k)?;
        if mu.is_zero() {
            continue;
        }
        let mut args: Vec<&FormalSeries> = vec![gamma; k - 1];
        args.push(v);
        let value = eval_multi(mu, ring, &args);
        let sign = -Sign::power((k * (k + 1) / 2) as i64).to_scalar();
        out.add_scaled(&value, &(sign / factorial(k - 1)));
    }
    Ok(out)
}
