use crate::error::{Error, Result};
use crate::graded::{canonical_tuples, GradedSpace, MultiMap, Permutation, Sign, TensorMap, Vector};

use super::linf::{Generator, LInfinityStructure};
use super::ops::{collect_defects, DefectReport};

/// Operations `m_n: ⊗^n A → A` of degree `2 - n` without symmetry, for
/// `1 ≤ n ≤ arity_cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfinityStructure {
    space: GradedSpace,
    ops: Vec<TensorMap>,
}

impl AInfinityStructure {
    pub fn new(space: &GradedSpace, ops: Vec<TensorMap>) -> Result<Self> {
        for (i, op) in ops.iter().enumerate() {
            let n = i + 1;
            if op.arity() != n {
                return Err(Error::ArityMismatch { expected: n, found: op.arity() });
            }
            if op.space() != space {
                return Err(Error::SpaceMismatch);
            }
            if op.degree() != 2 - n as i32 {
                return Err(Error::DegreeMismatch(format!("operation of arity {n} must have degree {}", 2 - n as i32)));
            }
        }
        Ok(Self { space: space.clone(), ops })
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn arity_cap(&self) -> usize {
        self.ops.len()
    }

    pub fn op(&self, n: usize) -> Result<&TensorMap> {
        if n == 0 || n > self.ops.len() {
            return Err(Error::MissingArity(n));
        }
        Ok(&self.ops[n - 1])
    }

    pub fn ops(&self) -> &[TensorMap] {
        &self.ops
    }

    /// `Σ_{k+l=n+1} Σ_{j=0}^{k-1} (-1)^r m_k(a_1,...,a_j, m_l(a_{j+1},...,a_{j+l}), ...)`
    /// with `r = l̃(ã_1+...+ã_j) + j̃(l̃-1) + (k̃-1)l̃`.
    pub fn associativity_defect(&self, tuple: &[usize]) -> Result<Vector> {
        let n = tuple.len();
        if n > self.ops.len() {
            return Err(Error::MissingArity(n));
        }
        for &i in tuple {
            self.space.check_index(i)?;
        }
        Ok(self.defect_unchecked(tuple))
    }

    fn defect_unchecked(&self, tuple: &[usize]) -> Vector {
        let n = tuple.len();
        let parity = |x: usize| (x % 2) as i64;
        let mut acc = self.space.zero_vector();
        for k in 1..=n {
            let l = n + 1 - k;
            let (outer, inner) = (&self.ops[k - 1], &self.ops[l - 1]);
            if outer.is_zero() || inner.is_zero() {
                continue;
            }
            let (kt, lt) = (parity(k), parity(l));
            let mut prefix_degree = 0i64;
            for j in 0..k {
                let jt = parity(j);
                let r = lt * prefix_degree.rem_euclid(2) + jt * (lt - 1) + (kt - 1) * lt;
                let value = inner.eval_basis(&tuple[j..j + l]);
                if !value.is_zero() {
                    let sign = Sign::power(r);
                    outer.accumulate_with_vector(&mut acc, &tuple[..j], &value, &tuple[j + l..], &sign.to_scalar());
                }
                prefix_degree += self.space.degree(tuple[j]) as i64;
            }
        }
        acc
    }

    /// Evaluates the higher associativity defect on every basis tuple for
    /// `1 ≤ n ≤ max_arity`.
    pub fn check(&self, max_arity: usize) -> Result<DefectReport<Vector>> {
        if max_arity > self.ops.len() {
            return Err(Error::MissingArity(max_arity));
        }
        let dim = self.space.dim();
        let per_arity = (1..=max_arity)
            .map(|n| collect_defects(n, all_tuples(dim, n), |t| self.defect_unchecked(t), Vector::is_zero))
            .collect();
        Ok(DefectReport { per_arity })
    }

    /// `Φ(m_n)(v_1,...,v_n) = Σ_{σ ∈ S_n} (-1)^σ e(σ) m_n(v_{σ(1)},...,v_{σ(n)})`.
    pub fn symmetrize(&self) -> LInfinityStructure {
        let g = &self.space;
        let mut ops = Vec::with_capacity(self.ops.len());
        for (i, m) in self.ops.iter().enumerate() {
            let n = i + 1;
            let perms: Vec<(Vec<usize>, Sign)> = Permutation::all(n)
                .into_iter()
                .map(|p| {
                    let parity = p.parity();
                    (p.images().to_vec(), parity)
                })
                .collect();
            let tuples = canonical_tuples(g, n);
            let values = crate::par::map(&tuples, |t| {
                let degrees: Vec<i32> = t.iter().map(|&j| g.degree(j)).collect();
                let mut acc = g.zero_vector();
                let mut permuted = vec![0; n];
                for (images, parity) in &perms {
                    for (slot, &p) in permuted.iter_mut().zip(images) {
                        *slot = t[p];
                    }
                    if let Some(v) = m.get(&permuted) {
                        let sign = *parity * crate::graded::perm::koszul_unchecked(images, &degrees);
                        acc.add_scaled(v, &sign.to_scalar());
                    }
                }
                acc
            });
            let mut op = MultiMap::exterior(n, g, 2 - n as i32);
            for (t, v) in tuples.into_iter().zip(values) {
                op.insert_canonical(t, v);
            }
            ops.push(op);
        }
        let cap = ops.len();
        LInfinityStructure::new(g, ops, cap, Generator::Stored).expect("degrees preserved")
    }
}

/// All `dim^n` tuples in lexicographic order.
pub(crate) fn all_tuples(dim: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..dim).map(move |i| {
                    let mut u = t.clone();
                    u.push(i);
                    u
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::HomogeneousMap;
    use crate::scalar::int;
    use crate::structures::dgla::Dga;

    fn upper_triangular_2x2() -> Dga {
        // e11, e12, e22 in degree 0
        let g = GradedSpace::new(vec![("e11", 0), ("e12", 0), ("e22", 0)]).unwrap();
        let mut p = TensorMap::new(2, &g, 0);
        p.set(&[0, 0], g.basis_vector(0)).unwrap();
        p.set(&[0, 1], g.basis_vector(1)).unwrap();
        p.set(&[1, 2], g.basis_vector(1)).unwrap();
        p.set(&[2, 2], g.basis_vector(2)).unwrap();
        Dga::new(&g, HomogeneousMap::zero(&g, &g, 1), p).unwrap()
    }

    #[test]
    fn dga_passes_the_associativity_check() {
        let a = upper_triangular_2x2();
        assert!(a.as_ainfinity(4).check(4).unwrap().is_valid());
    }

    #[test]
    fn broken_product_fails_at_arity_three() {
        let g = GradedSpace::from_degrees(&[0, 0]);
        let mut p = TensorMap::new(2, &g, 0);
        p.set(&[0, 0], g.basis_vector(1)).unwrap();
        p.set(&[0, 1], g.basis_vector(0)).unwrap();
        let a = Dga::new(&g, HomogeneousMap::zero(&g, &g, 1), p).unwrap();
        let r = a.as_ainfinity(3).check(3).unwrap();
        assert_eq!(r.first_failing_arity(), Some(3));
    }

    #[test]
    fn symmetrized_product_is_the_commutator() {
        let a = upper_triangular_2x2();
        let l = a.as_ainfinity(3).symmetrize();
        let c = a.commutator_dgla();
        assert_eq!(l.op(2).unwrap(), c.bracket());
        assert!(l.op(3).unwrap().is_zero());
        assert!(l.check(3).unwrap().is_valid());
        let g = a.space();
        assert_eq!(l.op(2).unwrap().eval_basis(&[0, 1]), g.basis_vector(1));
        assert_eq!(l.op(2).unwrap().eval_basis(&[1, 0]), g.basis_vector(1).scaled(&int(-1)));
    }

    #[test]
    fn tuple_enumeration() {
        assert_eq!(all_tuples(3, 2).len(), 9);
        assert_eq!(all_tuples(2, 3)[5], vec![1, 0, 1]);
    }
}
