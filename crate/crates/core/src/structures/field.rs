//! The homological vector field of an L∞-structure: Taylor coefficients
//! `μ̂_n: ⊙^n(g[1]) → g[1]`, graded symmetric in the shifted degrees.

use crate::error::{Error, Result};
use crate::graded::{canonical_tuples, Convention, GradedSpace, MultiMap, Sign, ShuffleTable, Vector};

use super::linf::{Generator, LInfinityStructure};
use super::ops::{collect_defects, DefectReport};

/// Polynomial vector field on `g[1]` without constant term, truncated at
/// polynomial degree `cap`. Component `n` holds the Taylor coefficient of
/// degree `n`; values are stored in the basis of `g` (read as `g[1]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVectorField {
    space: GradedSpace,
    components: Vec<MultiMap>,
    intrinsic_degree: i32,
}

/// `(-1)^{Σ_i (n-i) ṽ_i + n}` for a tuple of degrees `ṽ_1, ..., ṽ_n`.
pub fn shift_sign(degrees: &[i32]) -> Sign {
    let n = degrees.len();
    let exponent: i64 = degrees.iter().enumerate().map(|(i, &d)| (n - 1 - i) as i64 * d as i64).sum::<i64>() + n as i64;
    Sign::power(exponent)
}

impl PolyVectorField {
    /// Components must be graded symmetric in the shifted degrees, of
    /// arity `1..=cap` in order.
    pub fn new(space: &GradedSpace, components: Vec<MultiMap>, intrinsic_degree: i32) -> Result<Self> {
        for (i, c) in components.iter().enumerate() {
            if c.arity() != i + 1 {
                return Err(Error::ArityMismatch { expected: i + 1, found: c.arity() });
            }
            if c.convention() != Convention::ShiftedSymmetric || c.source() != space || c.target() != space {
                return Err(Error::SpaceMismatch);
            }
            // stored degree is the unshifted degree of μ̂_n read on g
            if c.degree() != intrinsic_degree + 1 - (i as i32 + 1) {
                return Err(Error::DegreeMismatch(format!("component {} has the wrong degree", i + 1)));
            }
        }
        Ok(Self { space: space.clone(), components, intrinsic_degree })
    }

    /// `μ̂_n(v_1[1],...,v_n[1]) = (-1)^{Σ(n-i)ṽ_i + n} μ_n(v_1,...,v_n)[n]`.
    pub fn from_linfinity(l: &LInfinityStructure, cap: usize) -> Result<Self> {
        let g = l.space();
        let mut components = Vec::with_capacity(cap);
        for n in 1..=cap {
            let mu = l.op(n)?;
            let mut c = MultiMap::new(n, g, g, 2 - n as i32, Convention::ShiftedSymmetric);
            for (t, v) in mu.values() {
                let degrees: Vec<i32> = t.iter().map(|&i| g.degree(i)).collect();
                c.insert_canonical(t.clone(), v.scaled(&shift_sign(&degrees).to_scalar()));
            }
            components.push(c);
        }
        Self::new(g, components, 1)
    }

    /// Inverse of [`PolyVectorField::from_linfinity`].
    pub fn to_linfinity(&self) -> Result<LInfinityStructure> {
        if self.intrinsic_degree != 1 {
            return Err(Error::DegreeMismatch("only degree +1 fields define L∞-structures".into()));
        }
        let g = &self.space;
        let ops = self
            .components
            .iter()
            .map(|c| {
                let mut mu = MultiMap::exterior(c.arity(), g, c.degree());
                for (t, v) in c.values() {
                    let degrees: Vec<i32> = t.iter().map(|&i| g.degree(i)).collect();
                    mu.insert_canonical(t.clone(), v.scaled(&shift_sign(&degrees).to_scalar()));
                }
                mu
            })
            .collect();
        LInfinityStructure::new(g, ops, self.components.len(), Generator::Stored)
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn cap(&self) -> usize {
        self.components.len()
    }

    pub fn intrinsic_degree(&self) -> i32 {
        self.intrinsic_degree
    }

    pub fn component(&self, n: usize) -> Result<&MultiMap> {
        self.components.get(n.wrapping_sub(1)).ok_or(Error::MissingArity(n))
    }

    pub fn components(&self) -> &[MultiMap] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(MultiMap::is_zero)
    }

    /// Shifted degrees `|e_i| - 1` of the coordinate frame.
    pub fn shifted_degrees(&self) -> Vec<i32> {
        self.space.degrees().iter().map(|d| d - 1).collect()
    }

    /// `(Q∘Q)_n = Σ_{k} Σ_{σ ∈ Sh(k,n)} ε(σ) μ̂_{n+1-k}(μ̂_k(w_{σ(1..k)}), w_{σ(k+1..n)})`
    /// on canonical tuples, with `ε` the Koszul sign in the shifted
    /// degrees. For an odd field this is `½[Q,Q]`.
    pub fn square_component(&self, tuple: &[usize]) -> Vector {
        let n = tuple.len();
        let shifted = self.shifted_degrees();
        let tuple_degrees: Vec<i32> = tuple.iter().map(|&i| shifted[i]).collect();
        let mut acc = self.space.zero_vector();
        let mut first = Vec::with_capacity(n);
        let mut rest = Vec::with_capacity(n);
        for k in 1..=n {
            let l = n + 1 - k;
            let (inner, outer) = (&self.components[k - 1], &self.components[l - 1]);
            if inner.is_zero() || outer.is_zero() {
                continue;
            }
            for sh in ShuffleTable::get(k, n) {
                first.clear();
                rest.clear();
                first.extend(sh.images[..k].iter().map(|&p| tuple[p]));
                rest.extend(sh.images[k..].iter().map(|&p| tuple[p]));
                let value = inner.eval_basis(&first);
                if value.is_zero() {
                    continue;
                }
                let sign = crate::graded::perm::koszul_unchecked(&sh.images, &tuple_degrees);
                outer.accumulate_first(&mut acc, &value, &rest, &sign.to_scalar());
            }
        }
        acc
    }

    /// `½[Q,Q]` through the truncation, as a degree +2 field.
    pub fn square(&self) -> PolyVectorField {
        let g = &self.space;
        let degree = 2 * self.intrinsic_degree;
        let components = (1..=self.cap())
            .map(|n| {
                let tuples = canonical_tuples(g, n);
                let values = crate::par::map(&tuples, |t| self.square_component(t));
                let mut c = MultiMap::new(n, g, g, degree + 1 - n as i32, Convention::ShiftedSymmetric);
                for (t, v) in tuples.into_iter().zip(values) {
                    c.insert_canonical(t, v);
                }
                c
            })
            .collect();
        PolyVectorField { space: g.clone(), components, intrinsic_degree: degree }
    }

    /// Nonzero components of `½[Q,Q]`, per polynomial degree.
    pub fn square_report(&self) -> DefectReport<Vector> {
        let per_arity = (1..=self.cap())
            .map(|n| collect_defects(n, canonical_tuples(&self.space, n), |t| self.square_component(t), Vector::is_zero))
            .collect();
        DefectReport { per_arity }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::HomogeneousMap;
    use crate::scalar::{int, one};
    use crate::structures::Dgla;

    #[test]
    fn shift_sign_examples() {
        assert_eq!(shift_sign(&[0]), Sign::Minus);
        assert_eq!(shift_sign(&[1]), Sign::Minus);
        // n=2: (-1)^{ṽ_1 + 2}
        assert_eq!(shift_sign(&[1, 0]), Sign::Minus);
        assert_eq!(shift_sign(&[0, 1]), Sign::Plus);
    }

    #[test]
    fn round_trip_and_linear_field() {
        let a = crate::fixtures::heis();
        let l = a.as_linfinity(4);
        let q = PolyVectorField::from_linfinity(&l, 4).unwrap();
        assert_eq!(q.intrinsic_degree(), 1);
        let back = q.to_linfinity().unwrap();
        assert!(back.agrees_with(&l, 4).unwrap());
        assert!(q.square().is_zero());
    }

    #[test]
    fn complex_gives_square_zero_linear_field() {
        let g = GradedSpace::from_degrees(&[0, 1, 2]);
        let mut d = HomogeneousMap::zero(&g, &g, 1);
        d.set_entry(1, 0, one()).unwrap();
        let l = LInfinityStructure::abelian(&g, &d, 3).unwrap();
        let q = PolyVectorField::from_linfinity(&l, 3).unwrap();
        assert_eq!(q.component(1).unwrap().eval_basis(&[0]), g.basis_vector(1).scaled(&int(-1)));
        assert!(q.square().is_zero());
        // a differential with d² ≠ 0 gives a nonzero square
        d.set_entry(2, 1, one()).unwrap();
        let l = LInfinityStructure::abelian(&g, &d, 3).unwrap();
        let sq = PolyVectorField::from_linfinity(&l, 3).unwrap().square();
        assert_eq!(sq.component(1).unwrap().eval_basis(&[0]), g.basis_vector(2));
    }

    #[test]
    fn broken_quadratic_part_is_localized() {
        // [a,b] = c with d c = e but d a = d b = 0 violates Leibniz at (a,b)
        let g = GradedSpace::new(vec![("a", 1), ("b", 1), ("c", 2), ("e", 3)]).unwrap();
        let mut d = HomogeneousMap::zero(&g, &g, 1);
        d.set_entry(3, 2, one()).unwrap();
        let mut br = MultiMap::exterior(2, &g, 0);
        br.set(&[0, 1], g.basis_vector(2)).unwrap();
        let l = Dgla::new(&g, d, br).unwrap().as_linfinity(3);
        let report = PolyVectorField::from_linfinity(&l, 3).unwrap().square_report();
        assert_eq!(report.first_failing_arity(), Some(2));
        let (t, v) = &report.defects_at(2)[0];
        assert_eq!(t, &vec![0, 1]);
        assert_eq!(v.support().map(|(i, _)| i).collect::<Vec<_>>(), vec![3]);
        assert!(!l.check(3).unwrap().is_valid());
    }
}
