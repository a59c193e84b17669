//! Elements of `g ⊗ B` and the extension of multilinear maps to them.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::ring::{CoefficientRing, RingElement};
use crate::graded::{multi::sort_in_place, Convention, GradedSpace, HomogeneousMap, MultiMap, Sign, TensorMap, Vector};
use crate::scalar::Scalar;

/// `Σ_b v_b ⊗ b`, stored by ring basis index. Zero vectors are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSeries {
    dim: usize,
    terms: BTreeMap<usize, Vector>,
}

impl FormalSeries {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    /// `v ⊗ 1`.
    pub fn constant(v: &Vector) -> Self {
        Self::monomial(v, 0)
    }

    pub fn monomial(v: &Vector, b: usize) -> Self {
        let mut s = Self::zero(v.len());
        s.add_term(b, v, &Scalar::one());
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<usize, Vector> {
        &self.terms
    }

    pub fn coefficient(&self, b: usize) -> Option<&Vector> {
        self.terms.get(&b)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// No component along the unit.
    pub fn is_nilpotent(&self) -> bool {
        !self.terms.contains_key(&0)
    }

    pub fn add_term(&mut self, b: usize, v: &Vector, c: &Scalar) {
        if c.is_zero() || v.is_zero() {
            return;
        }
        let entry = self.terms.entry(b).or_insert_with(|| Vector::zeros(self.dim));
        entry.add_scaled(v, c);
        if entry.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn add_coeff(&mut self, b: usize, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(b).or_insert_with(|| Vector::zeros(self.dim));
        entry.add_coeff(i, c);
        if entry.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn add_scaled(&mut self, other: &FormalSeries, c: &Scalar) {
        for (b, v) in &other.terms {
            self.add_term(*b, v, c);
        }
    }

    pub fn add_assign(&mut self, other: &FormalSeries) {
        self.add_scaled(other, &Scalar::one());
    }

    pub fn sub(&self, other: &FormalSeries) -> FormalSeries {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        out
    }

    pub fn scaled(&self, c: &Scalar) -> FormalSeries {
        let mut out = FormalSeries::zero(self.dim);
        out.add_scaled(self, c);
        out
    }

    /// `f(v ⊗ b) = f(v) ⊗ b`.
    pub fn apply(&self, f: &HomogeneousMap) -> FormalSeries {
        let mut out = FormalSeries::zero(f.target().dim());
        for (b, v) in &self.terms {
            out.add_term(*b, &f.apply(v), &Scalar::one());
        }
        out
    }

    /// `(v ⊗ b) · r = v ⊗ (b r)`.
    pub fn mul_right(&self, r: &RingElement, ring: &dyn CoefficientRing) -> FormalSeries {
        let mut out = FormalSeries::zero(self.dim);
        for (b, v) in &self.terms {
            for (q, x) in r.terms() {
                for (c, y) in ring.mul(*b, *q).iter() {
                    out.add_term(*c, v, &(x * y));
                }
            }
        }
        out
    }

    /// Drops ring basis elements whose weight exceeds `order`.
    pub fn truncated(&self, ring: &dyn CoefficientRing, order: usize) -> FormalSeries {
        FormalSeries {
            dim: self.dim,
            terms: self.terms.iter().filter(|(b, _)| ring.weight(**b) <= order).map(|(b, v)| (*b, v.clone())).collect(),
        }
    }

    /// Keeps only ring basis elements of weight exactly `w`.
    pub fn band(&self, ring: &dyn CoefficientRing, w: usize) -> FormalSeries {
        FormalSeries {
            dim: self.dim,
            terms: self.terms.iter().filter(|(b, _)| ring.weight(**b) == w).map(|(b, v)| (*b, v.clone())).collect(),
        }
    }

    pub fn max_weight(&self, ring: &dyn CoefficientRing) -> usize {
        self.terms.keys().map(|b| ring.weight(*b)).max().unwrap_or(0)
    }

    /// The `i`-th coordinate, as an element of the ring.
    pub fn coordinate(&self, i: usize) -> RingElement {
        let mut r = RingElement::zero();
        for (b, v) in &self.terms {
            r.add_term(*b, v.get(i));
        }
        r
    }

    /// Whether every term `e_i ⊗ b` has `|e_i| + |b| = degree`.
    pub fn is_homogeneous(&self, space: &GradedSpace, ring: &dyn CoefficientRing, degree: i32) -> bool {
        self.terms.iter().all(|(b, v)| v.support().all(|(i, _)| space.degree(i) + ring.degree(*b) == degree))
    }

    pub fn format(&self, space: &GradedSpace, ring: &dyn CoefficientRing) -> String {
        let mut parts = Vec::new();
        for i in 0..self.dim {
            let c = self.coordinate(i);
            if !c.is_zero() {
                parts.push(format!("({})*{}", c.format(ring), space.label(i)));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Expands `arg_1 ⊗ ... ⊗ arg_n` (each in `g ⊗ B`) into
/// `Σ c · (e_I) ⊗ b` with `I` canonical for the convention, moving all ring
/// coefficients to the right with Koszul signs. Coefficients pass vectors
/// with the degrees of the convention: actual degrees for the exterior
/// picture, shifted degrees for the symmetric one.
pub fn expand_arguments(
    space: &GradedSpace,
    ring: &dyn CoefficientRing,
    convention: Convention,
    args: &[&FormalSeries],
) -> HashMap<(Vec<usize>, usize), Scalar> {
    let degrees: Vec<i32> = match convention {
        Convention::Exterior => space.degrees().to_vec(),
        Convention::ShiftedSymmetric => space.degrees().iter().map(|d| d - 1).collect(),
    };
    let mut state: HashMap<(Vec<usize>, usize), Scalar> = HashMap::new();
    state.insert((Vec::new(), 0), Scalar::one());
    for arg in args {
        let mut next: HashMap<(Vec<usize>, usize), Scalar> = HashMap::new();
        for ((prefix, r), c) in &state {
            let rdeg = ring.degree(*r);
            for (b, v) in arg.terms() {
                let prods = ring.mul(*r, *b);
                if prods.is_empty() {
                    continue;
                }
                for (i, vi) in v.support() {
                    let mut tuple = prefix.clone();
                    tuple.push(i);
                    let Some(sort_sign) = sort_in_place(&mut tuple, space.degrees(), convention) else {
                        continue;
                    };
                    let sign = sort_sign * Sign::koszul(rdeg, degrees[i]);
                    let base = sign.to_scalar() * c * vi;
                    for (r2, x) in prods.iter() {
                        let e = next.entry((tuple.clone(), *r2)).or_insert_with(Scalar::zero);
                        *e += &base * x;
                    }
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        state = next;
        if state.is_empty() {
            break;
        }
    }
    state
}

/// `μ(arg_1, ..., arg_n)` for a scalar multilinear map extended
/// `B`-linearly.
pub fn eval_multi(op: &MultiMap, ring: &dyn CoefficientRing, args: &[&FormalSeries]) -> FormalSeries {
    assert_eq!(args.len(), op.arity(), "arity mismatch");
    let mut out = FormalSeries::zero(op.target().dim());
    let expanded = expand_arguments(op.source(), ring, op.convention(), args);
    for ((tuple, r), c) in expanded {
        if let Some(v) = op.get_canonical(&tuple) {
            out.add_term(r, v, &c);
        }
    }
    out
}

/// `m(arg_1, ..., arg_n)` for an ordered multilinear map extended
/// `B`-linearly.
pub fn eval_tensor(op: &TensorMap, ring: &dyn CoefficientRing, args: &[&FormalSeries]) -> FormalSeries {
    assert_eq!(args.len(), op.arity(), "arity mismatch");
    let space = op.space();
    let mut out = FormalSeries::zero(space.dim());
    let mut state: HashMap<(Vec<usize>, usize), Scalar> = HashMap::new();
    state.insert((Vec::new(), 0), Scalar::one());
    for arg in args {
        let mut next: HashMap<(Vec<usize>, usize), Scalar> = HashMap::new();
        for ((prefix, r), c) in &state {
            for (b, v) in arg.terms() {
                let prods = ring.mul(*r, *b);
                for (i, vi) in v.support() {
                    let sign = Sign::koszul(ring.degree(*r), space.degree(i));
                    let base = sign.to_scalar() * c * vi;
                    let mut tuple = prefix.clone();
                    tuple.push(i);
                    for (r2, x) in prods.iter() {
                        *next.entry((tuple.clone(), *r2)).or_insert_with(Scalar::zero) += &base * x;
                    }
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        state = next;
    }
    for ((tuple, r), c) in state {
        if let Some(v) = op.get(&tuple) {
            out.add_term(r, v, &c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mc::ring::{ArtinAlgebra, PolynomialRing};
    use crate::scalar::int;

    fn heis_bracket() -> (GradedSpace, MultiMap) {
        let g = GradedSpace::new(vec![("x", 1), ("y", 1), ("z", 2)]).unwrap();
        let mut br = MultiMap::exterior(2, &g, 0);
        br.set(&[0, 1], Vector::basis(3, 2)).unwrap();
        (g, br)
    }

    #[test]
    fn bracket_of_generic_element() {
        let (g, br) = heis_bracket();
        let ring = PolynomialRing::new(vec![("t1", 0), ("t2", 0)], 3);
        let t1 = ring.param_index(0).unwrap();
        let t2 = ring.param_index(1).unwrap();
        let mut gamma = FormalSeries::monomial(&g.basis_vector(0), t1);
        gamma.add_term(t2, &g.basis_vector(1), &int(1));
        let out = eval_multi(&br, &ring, &[&gamma, &gamma]);
        // [Γ,Γ] = 2 t1 t2 z
        let t1t2 = ring.mul(t1, t2)[0].0;
        let mut expected = FormalSeries::zero(3);
        expected.add_coeff(t1t2, 2, &int(2));
        assert_eq!(out, expected);
    }

    #[test]
    fn odd_coefficients_pick_up_signs() {
        // θ odd; [x θ, y] = -θ... computed through the tensor sign: x⊗θ then y
        // passes θ over y: (-1)^{|θ||y|} = -1
        let (g, br) = heis_bracket();
        let ring = ArtinAlgebra::exterior_line(1);
        let a = FormalSeries::monomial(&g.basis_vector(0), 1);
        let b = FormalSeries::constant(&g.basis_vector(1));
        let out = eval_multi(&br, &ring, &[&a, &b]);
        assert_eq!(out, FormalSeries::monomial(&g.basis_vector(2), 1).scaled(&int(-1)));
        let out = eval_multi(&br, &ring, &[&b, &a]);
        // [y, x θ] = [y,x] θ = -(-1)^{1} [x,y]θ = zθ
        assert_eq!(out, FormalSeries::monomial(&g.basis_vector(2), 1));
    }

    #[test]
    fn constant_arguments_match_scalar_evaluation() {
        let (g, br) = heis_bracket();
        let ring = ArtinAlgebra::dual_numbers();
        let out = eval_multi(&br, &ring, &[&FormalSeries::constant(&g.basis_vector(1)), &FormalSeries::constant(&g.basis_vector(0))]);
        assert_eq!(out, FormalSeries::constant(&br.evaluate(&[g.basis_vector(1), g.basis_vector(0)]).unwrap()));
    }

    #[test]
    fn shifted_expansion_kills_squares_of_shifted_odd_vectors() {
        let g = GradedSpace::new(vec![("a", 0), ("x", 1)]).unwrap();
        let ring = PolynomialRing::new(vec![("s", 0), ("t", 0)], 2);
        let (s, t) = (ring.param_index(0).unwrap(), ring.param_index(1).unwrap());
        let mut v = FormalSeries::monomial(&g.basis_vector(0), s);
        v.add_term(t, &g.basis_vector(0), &int(1));
        // a[1] is odd, so (a s + a t)^2 = 0
        assert!(expand_arguments(&g, &ring, Convention::ShiftedSymmetric, &[&v, &v]).is_empty());
        let w = FormalSeries::monomial(&g.basis_vector(1), s);
        let square = expand_arguments(&g, &ring, Convention::ShiftedSymmetric, &[&w, &w]);
        assert_eq!(square.len(), 1);
        assert!(expand_arguments(&g, &ring, Convention::Exterior, &[&w, &w]).len() == 1);
    }
}
