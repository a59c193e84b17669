use crate::error::{Error, Result};
use crate::graded::{canonical_tuples, Convention, GradedSpace, HomogeneousMap, MultiMap, Sign, Vector};

use super::linf::LInfinityStructure;
use super::ops::{collect_defects, shuffle_composite, DefectReport, OpFamily};

/// Components `F_n: Λ^n g → g'` of degree `1 - n` of an L∞-morphism into an
/// abelian target `(g', d')`. Components beyond those stored vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LMorphismToAbelian {
    source: GradedSpace,
    target: GradedSpace,
    components: Vec<MultiMap>,
    target_d: HomogeneousMap,
}

impl LMorphismToAbelian {
    pub fn new(source: &GradedSpace, components: Vec<MultiMap>, target_d: HomogeneousMap) -> Result<Self> {
        let target = target_d.source().clone();
        if target_d.target() != &target || target_d.degree() != 1 {
            return Err(Error::DegreeMismatch("target differential must be a degree 1 endomorphism".into()));
        }
        for (i, f) in components.iter().enumerate() {
            let n = i + 1;
            if f.arity() != n {
                return Err(Error::ArityMismatch { expected: n, found: f.arity() });
            }
            if f.source() != source || f.target() != &target || f.convention() != Convention::Exterior {
                return Err(Error::SpaceMismatch);
            }
            if f.degree() != 1 - n as i32 {
                return Err(Error::DegreeMismatch(format!("component {n} must have degree {}", 1 - n as i32)));
            }
        }
        Ok(Self { source: source.clone(), target, components, target_d })
    }

    pub fn source(&self) -> &GradedSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedSpace {
        &self.target
    }

    pub fn components(&self) -> &[MultiMap] {
        &self.components
    }

    pub fn target_d(&self) -> &HomogeneousMap {
        &self.target_d
    }

    /// Same morphism with one component replaced.
    pub fn with_component(&self, n: usize, f: MultiMap) -> Result<Self> {
        let mut components = self.components.clone();
        if n == 0 {
            return Err(Error::MissingArity(0));
        }
        while components.len() < n {
            let k = components.len() + 1;
            components.push(MultiMap::new(k, &self.source, &self.target, 1 - k as i32, Convention::Exterior));
        }
        components[n - 1] = f;
        Self::new(&self.source, components, self.target_d.clone())
    }

    /// `d'F_n(e) - Σ_{k+l=n+1} Σ_{σ ∈ Sh(k,n)} (-1)^{σ̃+k(l-1)} e(σ) F_l(μ_k(...), ...)`.
    pub fn defect(&self, source: &LInfinityStructure, tuple: &[usize]) -> Result<Vector> {
        if source.space() != &self.source {
            return Err(Error::SpaceMismatch);
        }
        source.ensure(tuple.len())?;
        Ok(self.defect_unchecked(source, tuple))
    }

    fn defect_unchecked(&self, source: &LInfinityStructure, tuple: &[usize]) -> Vector {
        let n = tuple.len();
        let mut lhs = self.target.zero_vector();
        if let Some(f) = self.components.get(n - 1) {
            lhs = self.target_d.apply(&f.eval_basis(tuple));
        }
        let rhs = shuffle_composite(source, self, tuple, self.source.degrees());
        lhs.sub_assign(&rhs);
        lhs
    }

    pub fn check(&self, source: &LInfinityStructure, max_arity: usize) -> Result<DefectReport<Vector>> {
        if source.space() != &self.source {
            return Err(Error::SpaceMismatch);
        }
        source.ensure(max_arity)?;
        let per_arity = (1..=max_arity)
            .map(|n| collect_defects(n, canonical_tuples(&self.source, n), |t| self.defect_unchecked(source, t), Vector::is_zero))
            .collect();
        Ok(DefectReport { per_arity })
    }
}

impl OpFamily for LMorphismToAbelian {
    type Value = Vector;

    fn zero(&self) -> Vector {
        self.target.zero_vector()
    }

    fn is_zero(value: &Vector) -> bool {
        value.is_zero()
    }

    fn accumulate_basis(&self, n: usize, acc: &mut Vector, tuple: &[usize], sign: Sign) {
        if let Some(f) = self.components.get(n - 1) {
            f.accumulate_basis(acc, tuple, &sign.to_scalar());
        }
    }

    fn accumulate_first(&self, n: usize, acc: &mut Vector, first: &Vector, rest: &[usize], sign: Sign) {
        if let Some(f) = self.components.get(n - 1) {
            f.accumulate_first(acc, first, rest, &sign.to_scalar());
        }
    }

    fn vanishes(&self, n: usize) -> bool {
        self.components.get(n - 1).map_or(true, MultiMap::is_zero)
    }
}
