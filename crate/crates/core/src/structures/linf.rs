use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graded::{canonical_tuples, Convention, GradedSpace, HomogeneousMap, MultiMap, Sign, ShuffleTable, Vector};

use super::ops::{collect_defects, shuffle_composite, DefectReport, OpFamily};

/// How operations beyond the explicitly supplied ones are obtained.
#[derive(Clone, Debug)]
pub enum Generator {
    /// No rule: asking for an unsupplied arity is an error.
    Stored,
    /// Unsupplied operations vanish.
    Zero,
    /// The recursion
    /// `μ_n = (-1)^n Σ_{σ ∈ Sh(n-1,n)} (-1)^σ e(σ) η[μ_{n-1}(v_{σ(1)},...,v_{σ(n-1)}), v_{σ(n)}]`
    /// from a bracket and a degree −1 map `η`.
    Induced { bracket: MultiMap, eta: HomogeneousMap },
}

/// Operations `μ_n: Λ^n g → g` of degree `2 - n` for `1 ≤ n ≤ arity_cap`.
/// Operations are produced on first use and then kept.
#[derive(Clone, Debug)]
pub struct LInfinityStructure {
    space: GradedSpace,
    ops: Vec<OnceLock<MultiMap>>,
    generator: Generator,
}

impl LInfinityStructure {
    pub fn new(space: &GradedSpace, stored: Vec<MultiMap>, arity_cap: usize, generator: Generator) -> Result<Self> {
        for (i, op) in stored.iter().enumerate() {
            let n = i + 1;
            if op.arity() != n {
                return Err(Error::ArityMismatch { expected: n, found: op.arity() });
            }
            if op.source() != space || op.target() != space {
                return Err(Error::SpaceMismatch);
            }
            if op.degree() != 2 - n as i32 || op.convention() != Convention::Exterior {
                return Err(Error::DegreeMismatch(format!("operation of arity {n} must have degree {}", 2 - n as i32)));
            }
        }
        if let Generator::Induced { bracket, eta } = &generator {
            if eta.degree() != -1 || eta.source() != space || bracket.source() != space {
                return Err(Error::DegreeMismatch("induced structure needs a degree -1 map on the same space".into()));
            }
        }
        let cap = arity_cap.max(stored.len());
        let mut ops: Vec<OnceLock<MultiMap>> = (0..cap).map(|_| OnceLock::new()).collect();
        for (i, op) in stored.into_iter().enumerate() {
            ops[i] = OnceLock::from(op);
        }
        Ok(Self { space: space.clone(), ops, generator })
    }

    /// Only `μ_1`, a differential.
    pub fn abelian(space: &GradedSpace, d: &HomogeneousMap, arity_cap: usize) -> Result<Self> {
        Self::new(space, vec![MultiMap::from_linear(d)], arity_cap, Generator::Zero)
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn arity_cap(&self) -> usize {
        self.ops.len()
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    /// Same structure with a different arity cap; operations already
    /// computed are kept.
    pub fn with_arity_cap(&self, cap: usize) -> Self {
        let mut ops = self.ops.clone();
        ops.resize_with(cap, OnceLock::new);
        Self { space: self.space.clone(), ops, generator: self.generator.clone() }
    }

    pub fn op(&self, n: usize) -> Result<&MultiMap> {
        if n == 0 || n > self.ops.len() {
            return Err(Error::MissingArity(n));
        }
        if let Some(op) = self.ops[n - 1].get() {
            return Ok(op);
        }
        let value = match &self.generator {
            Generator::Stored => return Err(Error::MissingArity(n)),
            Generator::Zero => MultiMap::exterior(n, &self.space, 2 - n as i32),
            Generator::Induced { bracket, eta } => {
                if n < 2 {
                    return Err(Error::MissingArity(n));
                }
                let prev = self.op(n - 1)?;
                induced_step(&self.space, prev, bracket, eta)
            }
        };
        Ok(self.ops[n - 1].get_or_init(|| value))
    }

    /// Forces every operation through arity `n`.
    pub fn ensure(&self, n: usize) -> Result<()> {
        for k in 1..=n {
            self.op(k)?;
        }
        Ok(())
    }

    /// Operations that have been supplied or generated so far.
    pub fn materialized(&self) -> Vec<&MultiMap> {
        self.ops.iter().map_while(|o| o.get()).collect()
    }

    /// `Φ_n(e_tuple)`, the left-hand side of the higher Jacobi identity.
    pub fn jacobi_defect(&self, tuple: &[usize]) -> Result<Vector> {
        self.ensure(tuple.len())?;
        for &i in tuple {
            self.space.check_index(i)?;
        }
        Ok(shuffle_composite(self, self, tuple, self.space.degrees()))
    }

    /// Evaluates `Φ_n` on every canonical tuple for `1 ≤ n ≤ max_arity`.
    pub fn check(&self, max_arity: usize) -> Result<DefectReport<Vector>> {
        self.ensure(max_arity)?;
        let degrees = self.space.degrees();
        let per_arity = (1..=max_arity)
            .map(|n| {
                collect_defects(
                    n,
                    canonical_tuples(&self.space, n),
                    |t| shuffle_composite(self, self, t, degrees),
                    Vector::is_zero,
                )
            })
            .collect();
        Ok(DefectReport { per_arity })
    }

    /// Whether every materialized operation agrees with `other` through
    /// arity `n`.
    pub fn agrees_with(&self, other: &LInfinityStructure, n: usize) -> Result<bool> {
        for k in 1..=n {
            if self.op(k)? != other.op(k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn induced_step(space: &GradedSpace, prev: &MultiMap, bracket: &MultiMap, eta: &HomogeneousMap) -> MultiMap {
    let n = prev.arity() + 1;
    let degrees = space.degrees();
    let tuples = canonical_tuples(space, n);
    let outer = Sign::power(n as i64);
    let values = crate::par::map(&tuples, |t| {
        let tuple_degrees: Vec<i32> = t.iter().map(|&i| degrees[i]).collect();
        let mut acc = space.zero_vector();
        let mut first = Vec::with_capacity(n);
        for sh in ShuffleTable::get(n - 1, n) {
            first.clear();
            first.extend(sh.images[..n - 1].iter().map(|&p| t[p]));
            let inner = prev.eval_basis(&first);
            if inner.is_zero() {
                continue;
            }
            let sign = outer * sh.parity * crate::graded::perm::koszul_unchecked(&sh.images, &tuple_degrees);
            bracket.accumulate_first(&mut acc, &inner, &[t[sh.images[n - 1]]], &sign.to_scalar());
        }
        eta.apply(&acc)
    });
    let mut out = MultiMap::exterior(n, space, 2 - n as i32);
    for (t, v) in tuples.into_iter().zip(values) {
        out.insert_canonical(t, v);
    }
    out
}

impl OpFamily for LInfinityStructure {
    type Value = Vector;

    fn zero(&self) -> Vector {
        self.space.zero_vector()
    }

    fn is_zero(value: &Vector) -> bool {
        value.is_zero()
    }

    fn accumulate_basis(&self, n: usize, acc: &mut Vector, tuple: &[usize], sign: Sign) {
        self.op(n).expect("arity ensured").accumulate_basis(acc, tuple, &sign.to_scalar());
    }

    fn accumulate_first(&self, n: usize, acc: &mut Vector, first: &Vector, rest: &[usize], sign: Sign) {
        self.op(n).expect("arity ensured").accumulate_first(acc, first, rest, &sign.to_scalar());
    }

    fn vanishes(&self, n: usize) -> bool {
        self.op(n).map_or(true, MultiMap::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, one};
    use crate::structures::dgla::Dgla;

    fn space() -> GradedSpace {
        GradedSpace::new(vec![("a", 0), ("b", 1), ("c", 1), ("e", 2)]).unwrap()
    }

    #[test]
    fn arity_one_defect_is_d_squared() {
        let g = GradedSpace::from_degrees(&[0, 1, 2]);
        let mut d = HomogeneousMap::zero(&g, &g, 1);
        d.set_entry(1, 0, one()).unwrap();
        d.set_entry(2, 1, int(3)).unwrap();
        let l = LInfinityStructure::abelian(&g, &d, 3).unwrap();
        assert_eq!(l.jacobi_defect(&[0]).unwrap(), g.basis_vector(2).scaled(&int(3)));
        assert!(l.jacobi_defect(&[1]).unwrap().is_zero());
    }

    #[test]
    fn arity_two_defect_is_the_leibniz_rule() {
        // Φ_2(v1,v2) = d[v1,v2] - [dv1,v2] - (-1)^{v1}[v1,dv2]
        let g = space();
        let mut d = HomogeneousMap::zero(&g, &g, 1);
        d.set_entry(1, 0, one()).unwrap();
        let mut br = MultiMap::exterior(2, &g, 0);
        br.set(&[1, 2], g.basis_vector(3)).unwrap();
        br.set(&[0, 2], g.basis_vector(2)).unwrap();
        let dgla = Dgla::new(&g, d.clone(), br.clone()).unwrap();
        let l = dgla.as_linfinity(3);
        for t in canonical_tuples(&g, 2) {
            let (x, y) = (g.basis_vector(t[0]), g.basis_vector(t[1]));
            let mut expected = d.apply(&dgla.br(&x, &y));
            expected.sub_assign(&dgla.br(&d.apply(&x), &y));
            expected.add_scaled(&dgla.br(&x, &d.apply(&y)), &-Sign::power(g.degree(t[0]) as i64).to_scalar());
            assert_eq!(l.jacobi_defect(&t).unwrap(), expected, "tuple {t:?}");
        }
        assert!(!l.check(2).unwrap().is_valid());
    }

    #[test]
    fn arity_three_defect_of_a_dgla_is_its_jacobiator() {
        let g = GradedSpace::from_degrees(&[0, 0, 0]);
        let mut br = MultiMap::exterior(2, &g, 0);
        br.set(&[0, 1], g.basis_vector(0)).unwrap();
        br.set(&[1, 2], g.basis_vector(1)).unwrap();
        br.set(&[0, 2], g.basis_vector(2)).unwrap();
        let dgla = Dgla::new(&g, HomogeneousMap::zero(&g, &g, 1), br).unwrap();
        let report = dgla.as_linfinity(3).check(3).unwrap();
        assert_eq!(report.first_failing_arity(), Some(3));
        let jac = &dgla.check().jacobi[0].1;
        let phi = &report.defects_at(3)[0].1;
        // the two sums differ by an overall sign at most
        assert!(phi == jac || *phi == jac.scaled(&int(-1)));
    }

    #[test]
    fn dgla_view_passes_through_arity_five() {
        let dgla = crate::fixtures::heis();
        assert!(dgla.as_linfinity(5).check(5).unwrap().is_valid());
    }

    #[test]
    fn missing_arity_is_reported() {
        let g = space();
        let l = LInfinityStructure::new(&g, vec![MultiMap::exterior(1, &g, 1)], 1, Generator::Stored).unwrap();
        assert!(matches!(l.jacobi_defect(&[0, 1]), Err(Error::MissingArity(2))));
        assert!(matches!(l.check(2), Err(Error::MissingArity(2))));
    }

    #[test]
    fn wrong_degree_is_rejected() {
        let g = space();
        let r = LInfinityStructure::new(&g, vec![MultiMap::exterior(1, &g, 0)], 1, Generator::Zero);
        assert!(matches!(r, Err(Error::DegreeMismatch(_))));
    }
}
