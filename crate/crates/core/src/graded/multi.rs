use std::collections::BTreeMap;


use super::perm::Sign;
use super::space::{GradedSpace, Vector};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Symmetry convention of a multilinear map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Graded antisymmetric in the given grading: a map on `Λ^n g`.
    /// Swapping neighbours `u, w` costs `-(-1)^{|u||w|}`.
    Exterior,
    /// Graded symmetric in the grading shifted by one: a map on
    /// `⊙^n(g[1])`. Swapping neighbours costs `(-1)^{(|u|-1)(|w|-1)}`.
    ShiftedSymmetric,
}

impl Convention {
    fn swap_sign(self, a: i32, b: i32) -> Sign {
        match self {
            Convention::Exterior => -Sign::koszul(a, b),
            Convention::ShiftedSymmetric => Sign::koszul(a - 1, b - 1),
        }
    }
}

/// Sorts a basis tuple into non-decreasing order and returns the sign `s`
/// with `f(tuple) = s * f(sorted)`. Returns `None` when the symmetry forces
/// the value to vanish: a repeated basis vector of even degree (odd shifted
/// degree) in either convention.
pub fn canonicalize(tuple: &[usize], degrees: &[i32], convention: Convention) -> Option<(Vec<usize>, Sign)> {
    let mut sorted = tuple.to_vec();
    let sign = sort_in_place(&mut sorted, degrees, convention)?;
    Some((sorted, sign))
}

pub(crate) fn sort_in_place(t: &mut [usize], degrees: &[i32], convention: Convention) -> Option<Sign> {
    let mut sign = Sign::Plus;
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] >= t[j] {
            if t[j - 1] == t[j] {
                if degrees[t[j]] % 2 == 0 {
                    return None;
                }
                break;
            }
            sign *= convention.swap_sign(degrees[t[j - 1]], degrees[t[j]]);
            t.swap(j - 1, j);
            j -= 1;
        }
    }
    // an equal pair may have been left non-adjacent by an early break
    if t.windows(2).any(|w| w[0] == w[1] && degrees[w[0]] % 2 == 0) {
        return None;
    }
    Some(sign)
}

/// All canonical `n`-tuples: non-decreasing, with repetition allowed only
/// for basis vectors of odd degree.
pub fn canonical_tuples(space: &GradedSpace, n: usize) -> Vec<Vec<usize>> {
    fn rec(space: &GradedSpace, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..space.dim() {
            let next = if space.degree(i) % 2 == 0 { i + 1 } else { i };
            cur.push(i);
            rec(space, n, next, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(space, n, 0, &mut Vec::with_capacity(n), &mut out);
    out
}

/// A graded multilinear map of fixed arity and degree whose values are
/// stored on canonical basis tuples only; every other tuple is obtained by
/// the symmetry convention with Koszul signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiMap {
    arity: usize,
    source: GradedSpace,
    target: GradedSpace,
    degree: i32,
    convention: Convention,
    values: BTreeMap<Vec<usize>, Vector>,
}

impl MultiMap {
    pub fn new(arity: usize, source: &GradedSpace, target: &GradedSpace, degree: i32, convention: Convention) -> Self {
        Self {
            arity,
            source: source.clone(),
            target: target.clone(),
            degree,
            convention,
            values: BTreeMap::new(),
        }
    }

    /// A graded antisymmetric map `Λ^n g → g` of the given degree.
    pub fn exterior(arity: usize, space: &GradedSpace, degree: i32) -> Self {
        Self::new(arity, space, space, degree, Convention::Exterior)
    }

    /// A linear map viewed as a unary operation.
    pub fn from_linear(f: &super::HomogeneousMap) -> Self {
        let mut out = MultiMap::new(1, f.source(), f.target(), f.degree(), Convention::Exterior);
        for i in 0..f.source().dim() {
            out.insert_canonical(vec![i], f.column(i));
        }
        out
    }

    /// The unary operation as a linear map.
    pub fn to_linear(&self) -> super::HomogeneousMap {
        assert_eq!(self.arity, 1, "only unary operations are linear maps");
        let cols: Vec<Vector> = (0..self.source.dim()).map(|i| self.eval_basis(&[i])).collect();
        super::HomogeneousMap::from_columns(&self.source, &self.target, self.degree, &cols).expect("degree consistent")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn source(&self) -> &GradedSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedSpace {
        &self.target
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Nonzero stored values keyed by canonical tuple.
    pub fn values(&self) -> &BTreeMap<Vec<usize>, Vector> {
        &self.values
    }

    pub fn output_degree(&self, tuple: &[usize]) -> i32 {
        tuple.iter().map(|&i| self.source.degree(i)).sum::<i32>() + self.degree
    }

    pub fn canonicalize(&self, tuple: &[usize]) -> Option<(Vec<usize>, Sign)> {
        canonicalize(tuple, self.source.degrees(), self.convention)
    }

    fn check_tuple(&self, tuple: &[usize]) -> Result<()> {
        if tuple.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: tuple.len() });
        }
        tuple.iter().try_for_each(|&i| self.source.check_index(i))
    }

    /// Assigns `f(tuple) = value`; the stored canonical value is adjusted
    /// by the reordering sign.
    pub fn set(&mut self, tuple: &[usize], value: Vector) -> Result<()> {
        self.check_tuple(tuple)?;
        if value.len() != self.target.dim() {
            return Err(Error::SpaceMismatch);
        }
        let Some((canonical, sign)) = self.canonicalize(tuple) else {
            if value.is_zero() {
                return Ok(());
            }
            return Err(Error::KilledTuple(tuple.to_vec()));
        };
        let expected = self.output_degree(tuple);
        if !self.target.is_of_degree(&value, expected) {
            return Err(Error::DegreeMismatch(format!(
                "value on {:?} must have degree {expected}",
                tuple
            )));
        }
        let value = if sign.is_minus() { -value } else { value };
        if value.is_zero() {
            self.values.remove(&canonical);
        } else {
            self.values.insert(canonical, value);
        }
        Ok(())
    }

    /// Stores a value for a tuple already known to be canonical, skipping
    /// validation. Used by constructors that enumerate canonical tuples.
    pub(crate) fn insert_canonical(&mut self, tuple: Vec<usize>, value: Vector) {
        if !value.is_zero() {
            self.values.insert(tuple, value);
        }
    }

    pub fn get_canonical(&self, tuple: &[usize]) -> Option<&Vector> {
        self.values.get(tuple)
    }

    /// Value on a basis tuple in any order.
    pub fn eval_basis(&self, tuple: &[usize]) -> Vector {
        let mut out = self.target.zero_vector();
        self.accumulate_basis(&mut out, tuple, &crate::scalar::one());
        out
    }

    /// `acc += coeff * f(tuple)`.
    pub fn accumulate_basis(&self, acc: &mut Vector, tuple: &[usize], coeff: &Scalar) {
        if let Some((canonical, sign)) = self.canonicalize(tuple) {
            if let Some(v) = self.values.get(&canonical) {
                if sign.is_minus() {
                    acc.add_scaled(v, &-coeff);
                } else {
                    acc.add_scaled(v, coeff);
                }
            }
        }
    }

    /// `acc += coeff * f(first, e_rest...)`, linear in the vector `first`.
    pub fn accumulate_first(&self, acc: &mut Vector, first: &Vector, rest: &[usize], coeff: &Scalar) {
        let mut tuple = Vec::with_capacity(rest.len() + 1);
        for (j, c) in first.support() {
            tuple.clear();
            tuple.push(j);
            tuple.extend_from_slice(rest);
            self.accumulate_basis(acc, &tuple, &(coeff * c));
        }
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn evaluate(&self, args: &[Vector]) -> Result<Vector> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: args.len() });
        }
        if args.iter().any(|a| a.len() != self.source.dim()) {
            return Err(Error::SpaceMismatch);
        }
        let mut out = self.target.zero_vector();
        let mut tuple = Vec::with_capacity(self.arity);
        self.expand(args, &mut tuple, &crate::scalar::one(), &mut out);
        Ok(out)
    }

    fn expand(&self, args: &[Vector], tuple: &mut Vec<usize>, coeff: &Scalar, out: &mut Vector) {
        if tuple.len() == args.len() {
            self.accumulate_basis(out, tuple, coeff);
            return;
        }
        for (i, c) in args[tuple.len()].support() {
            tuple.push(i);
            self.expand(args, tuple, &(coeff * c), out);
            tuple.pop();
        }
    }

    /// Applies `f` to every stored value (e.g. post-composition with a
    /// linear map), keeping the canonical keys.
    pub fn map_values(&self, target: &GradedSpace, degree: i32, f: impl Fn(&Vector) -> Vector) -> MultiMap {
        let mut out = MultiMap::new(self.arity, &self.source, target, degree, self.convention);
        for (k, v) in &self.values {
            out.insert_canonical(k.clone(), f(v));
        }
        out
    }
}

/// A multilinear map without symmetry: values are stored on every basis
/// tuple (the domain is `⊗^n A`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorMap {
    arity: usize,
    space: GradedSpace,
    degree: i32,
    values: BTreeMap<Vec<usize>, Vector>,
}

impl TensorMap {
    pub fn new(arity: usize, space: &GradedSpace, degree: i32) -> Self {
        Self { arity, space: space.clone(), degree, values: BTreeMap::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn values(&self) -> &BTreeMap<Vec<usize>, Vector> {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn set(&mut self, tuple: &[usize], value: Vector) -> Result<()> {
        if tuple.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: tuple.len() });
        }
        tuple.iter().try_for_each(|&i| self.space.check_index(i))?;
        let expected = tuple.iter().map(|&i| self.space.degree(i)).sum::<i32>() + self.degree;
        if !self.space.is_of_degree(&value, expected) {
            return Err(Error::DegreeMismatch(format!("value on {tuple:?} must have degree {expected}")));
        }
        if value.is_zero() {
            self.values.remove(tuple);
        } else {
            self.values.insert(tuple.to_vec(), value);
        }
        Ok(())
    }

    pub fn get(&self, tuple: &[usize]) -> Option<&Vector> {
        self.values.get(tuple)
    }

    pub fn eval_basis(&self, tuple: &[usize]) -> Vector {
        self.values.get(tuple).cloned().unwrap_or_else(|| self.space.zero_vector())
    }

    /// `acc += coeff * f(e_before..., v, e_after...)`, linear in `v`.
    pub fn accumulate_with_vector(
        &self,
        acc: &mut Vector,
        before: &[usize],
        v: &Vector,
        after: &[usize],
        coeff: &Scalar,
    ) {
        let mut tuple = Vec::with_capacity(self.arity);
        for (j, c) in v.support() {
            tuple.clear();
            tuple.extend_from_slice(before);
            tuple.push(j);
            tuple.extend_from_slice(after);
            if let Some(val) = self.values.get(&tuple) {
                acc.add_scaled(val, &(coeff * c));
            }
        }
    }

    pub fn evaluate(&self, args: &[Vector]) -> Result<Vector> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: args.len() });
        }
        let mut out = self.space.zero_vector();
        let mut tuple = Vec::new();
        fn rec(m: &TensorMap, args: &[Vector], tuple: &mut Vec<usize>, coeff: &Scalar, out: &mut Vector) {
            if tuple.len() == args.len() {
                if let Some(v) = m.values.get(tuple.as_slice()) {
                    out.add_scaled(v, coeff);
                }
                return;
            }
            for (i, c) in args[tuple.len()].support() {
                tuple.push(i);
                rec(m, args, tuple, &(coeff * c), out);
                tuple.pop();
            }
        }
        rec(self, args, &mut tuple, &crate::scalar::one(), &mut out);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::perm::{koszul_sign, Permutation};
    use crate::scalar::int;
    use proptest::prelude::*;

    fn space() -> GradedSpace {
        GradedSpace::new([("a", 0), ("x", 1), ("y", 1), ("z", 2)]).unwrap()
    }

    #[test]
    fn canonical_tuple_is_stored_verbatim() {
        let g = space();
        let mut m = MultiMap::exterior(2, &g, 0);
        m.set(&[1, 2], g.basis_vector(3)).unwrap();
        assert_eq!(m.eval_basis(&[1, 2]), g.basis_vector(3));
        assert_eq!(m.get_canonical(&[1, 2]), Some(&g.basis_vector(3)));
    }

    #[test]
    fn swapped_pair_picks_up_koszul_sign() {
        let g = space();
        let mut m = MultiMap::exterior(2, &g, 0);
        m.set(&[0, 1], g.basis_vector(1)).unwrap();
        // [x, a] = -(-1)^{1*0} [a, x]
        assert_eq!(m.eval_basis(&[1, 0]), -g.basis_vector(1));
        m.set(&[1, 2], g.basis_vector(3)).unwrap();
        // odd-odd: [y, x] = -(-1)^{1} [x, y] = [x, y]
        assert_eq!(m.eval_basis(&[2, 1]), g.basis_vector(3));
    }

    #[test]
    fn repeated_even_argument_is_killed() {
        let g = space();
        let mut m = MultiMap::exterior(2, &g, 0);
        assert!(m.eval_basis(&[0, 0]).is_zero());
        assert_eq!(m.set(&[0, 0], g.basis_vector(0)).unwrap_err(), Error::KilledTuple(vec![0, 0]));
        // odd repeated argument survives
        m.set(&[1, 1], g.basis_vector(3)).unwrap();
        assert_eq!(m.eval_basis(&[1, 1]), g.basis_vector(3));
        assert!(canonicalize(&[3, 1, 3], g.degrees(), Convention::Exterior).is_none());
    }

    #[test]
    fn degree_and_arity_are_checked() {
        let g = space();
        let mut m = MultiMap::exterior(2, &g, 0);
        assert!(matches!(m.set(&[1, 2], g.basis_vector(1)), Err(Error::DegreeMismatch(_))));
        assert!(matches!(m.set(&[1], g.basis_vector(1)), Err(Error::ArityMismatch { .. })));
        assert!(matches!(m.evaluate(&[g.basis_vector(0)]), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn canonical_tuples_respect_parity() {
        let g = space();
        let pairs = canonical_tuples(&g, 2);
        assert!(pairs.contains(&vec![1, 1]));
        assert!(!pairs.contains(&vec![0, 0]));
        assert!(!pairs.contains(&vec![3, 3]));
        assert_eq!(pairs.len(), 4 * 3 / 2 + 2);
    }

    fn random_map(g: &GradedSpace, arity: usize, seed: u64) -> MultiMap {
        let mut m = MultiMap::exterior(arity, g, 0);
        let mut state = seed;
        for t in canonical_tuples(g, arity) {
            let deg = m.output_degree(&t);
            let mut v = g.zero_vector();
            for i in g.indices_in_degree(deg) {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                v.set(i, int(((state >> 33) % 7) as i64 - 3));
            }
            m.set(&t, v).unwrap();
        }
        m
    }

    proptest! {
        #[test]
        fn permuted_reads_follow_the_exterior_sign(seed in any::<u64>(), p in 0usize..6, tuple in proptest::collection::vec(0usize..4, 3)) {
            let g = space();
            let m = random_map(&g, 3, seed);
            let perm = &Permutation::all(3)[p];
            let permuted = perm.apply(&tuple);
            let degrees: Vec<i32> = tuple.iter().map(|&i| g.degree(i)).collect();
            let sign = perm.parity() * koszul_sign(perm, &degrees).unwrap();
            prop_assert_eq!(m.eval_basis(&permuted), m.eval_basis(&tuple).scaled(&sign.to_scalar()));
        }

        #[test]
        fn evaluation_is_multilinear(seed in any::<u64>(), c in -5i64..5, a in proptest::collection::vec(-3i64..4, 4), b in proptest::collection::vec(-3i64..4, 4), w in proptest::collection::vec(-3i64..4, 4)) {
            let g = space();
            let m = random_map(&g, 2, seed);
            let va = Vector::from_coeffs(a.into_iter().map(int).collect());
            let vb = Vector::from_coeffs(b.into_iter().map(int).collect());
            let vw = Vector::from_coeffs(w.into_iter().map(int).collect());
            let mut comb = va.clone();
            comb.add_scaled(&vb, &int(c));
            let lhs = m.evaluate(&[comb, vw.clone()]).unwrap();
            let mut rhs = m.evaluate(&[va, vw.clone()]).unwrap();
            rhs.add_scaled(&m.evaluate(&[vb, vw]).unwrap(), &int(c));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
