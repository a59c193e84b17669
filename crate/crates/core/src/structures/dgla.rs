use crate::error::{Error, Result};
use crate::graded::{canonical_tuples, Convention, GradedSpace, HomogeneousMap, MultiMap, Sign, TensorMap, Vector};

use super::ainf::AInfinityStructure;
use super::linf::{Generator, LInfinityStructure};

/// Differential graded Lie algebra `(g, d, [ , ])`.
#[derive(Clone, Debug)]
pub struct Dgla {
    space: GradedSpace,
    d: HomogeneousMap,
    bracket: MultiMap,
}

/// Basis tuples on which a DGLA identity fails, with the defect vector.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DglaReport {
    pub d_squared: Vec<(usize, Vector)>,
    pub leibniz: Vec<(Vec<usize>, Vector)>,
    pub jacobi: Vec<(Vec<usize>, Vector)>,
}

impl DglaReport {
    pub fn is_valid(&self) -> bool {
        self.d_squared.is_empty() && self.leibniz.is_empty() && self.jacobi.is_empty()
    }
}

fn check_shapes(space: &GradedSpace, d: &HomogeneousMap) -> Result<()> {
    if d.source() != space || d.target() != space {
        return Err(Error::SpaceMismatch);
    }
    if d.degree() != 1 {
        return Err(Error::DegreeMismatch(format!("differential has degree {}, expected 1", d.degree())));
    }
    Ok(())
}

fn d_squared_defects(space: &GradedSpace, d: &HomogeneousMap) -> Vec<(usize, Vector)> {
    (0..space.dim())
        .map(|i| (i, d.apply(&d.column(i))))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

impl Dgla {
    /// Validates shapes and degrees only; use [`Dgla::check`] for the
    /// identities.
    pub fn new(space: &GradedSpace, d: HomogeneousMap, bracket: MultiMap) -> Result<Self> {
        check_shapes(space, &d)?;
        if bracket.source() != space || bracket.target() != space {
            return Err(Error::SpaceMismatch);
        }
        if bracket.arity() != 2 {
            return Err(Error::ArityMismatch { expected: 2, found: bracket.arity() });
        }
        if bracket.degree() != 0 || bracket.convention() != Convention::Exterior {
            return Err(Error::DegreeMismatch("bracket must be a degree 0 map on the exterior square".into()));
        }
        Ok(Self { space: space.clone(), d, bracket })
    }

    pub fn abelian(space: &GradedSpace, d: HomogeneousMap) -> Result<Self> {
        Self::new(space, d, MultiMap::exterior(2, space, 0))
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn d(&self) -> &HomogeneousMap {
        &self.d
    }

    pub fn bracket(&self) -> &MultiMap {
        &self.bracket
    }

    pub fn br(&self, a: &Vector, b: &Vector) -> Vector {
        self.bracket.evaluate(&[a.clone(), b.clone()]).expect("vectors live in the algebra")
    }

    /// `d²`, the Leibniz rule and the graded Jacobi identity, on all basis
    /// tuples.
    pub fn check(&self) -> DglaReport {
        let g = &self.space;
        let e = |i: usize| g.basis_vector(i);
        let deg = |i: usize| g.degree(i);
        let mut report = DglaReport { d_squared: d_squared_defects(g, &self.d), ..Default::default() };
        for t in canonical_tuples(g, 2) {
            let (a, b) = (e(t[0]), e(t[1]));
            let mut v = self.d.apply(&self.br(&a, &b));
            v.sub_assign(&self.br(&self.d.apply(&a), &b));
            v.add_scaled(&self.br(&a, &self.d.apply(&b)), &-Sign::power(deg(t[0]) as i64).to_scalar());
            if !v.is_zero() {
                report.leibniz.push((t, v));
            }
        }
        for t in canonical_tuples(g, 3) {
            let (a, b, c) = (e(t[0]), e(t[1]), e(t[2]));
            let (p, q, r) = (deg(t[0]), deg(t[1]), deg(t[2]));
            let mut v = self.br(&a, &self.br(&b, &c)).scaled(&Sign::koszul(p, r).to_scalar());
            v.add_scaled(&self.br(&b, &self.br(&c, &a)), &Sign::koszul(q, p).to_scalar());
            v.add_scaled(&self.br(&c, &self.br(&a, &b)), &Sign::koszul(r, q).to_scalar());
            if !v.is_zero() {
                report.jacobi.push((t, v));
            }
        }
        report
    }

    /// The L∞ view `μ_1 = d`, `μ_2 = [ , ]`, `μ_{≥3} = 0`.
    pub fn as_linfinity(&self, arity_cap: usize) -> LInfinityStructure {
        let mu1 = MultiMap::from_linear(&self.d);
        LInfinityStructure::new(&self.space, vec![mu1, self.bracket.clone()], arity_cap, Generator::Zero)
            .expect("shapes validated on construction")
    }
}

/// Differential graded associative algebra `(A, d, ·)`.
#[derive(Clone, Debug)]
pub struct Dga {
    space: GradedSpace,
    d: HomogeneousMap,
    product: TensorMap,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DgaReport {
    pub d_squared: Vec<(usize, Vector)>,
    pub leibniz: Vec<(Vec<usize>, Vector)>,
    pub associativity: Vec<(Vec<usize>, Vector)>,
}

impl DgaReport {
    pub fn is_valid(&self) -> bool {
        self.d_squared.is_empty() && self.leibniz.is_empty() && self.associativity.is_empty()
    }
}

impl Dga {
    pub fn new(space: &GradedSpace, d: HomogeneousMap, product: TensorMap) -> Result<Self> {
        check_shapes(space, &d)?;
        if product.space() != space {
            return Err(Error::SpaceMismatch);
        }
        if product.arity() != 2 {
            return Err(Error::ArityMismatch { expected: 2, found: product.arity() });
        }
        if product.degree() != 0 {
            return Err(Error::DegreeMismatch("product must have degree 0".into()));
        }
        Ok(Self { space: space.clone(), d, product })
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn d(&self) -> &HomogeneousMap {
        &self.d
    }

    pub fn product(&self) -> &TensorMap {
        &self.product
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        self.product.evaluate(&[a.clone(), b.clone()]).expect("vectors live in the algebra")
    }

    pub fn check(&self) -> DgaReport {
        let g = &self.space;
        let n = g.dim();
        let e = |i: usize| g.basis_vector(i);
        let mut report = DgaReport { d_squared: d_squared_defects(g, &self.d), ..Default::default() };
        for a in 0..n {
            for b in 0..n {
                let mut v = self.d.apply(&self.mul(&e(a), &e(b)));
                v.sub_assign(&self.mul(&self.d.column(a), &e(b)));
                v.add_scaled(&self.mul(&e(a), &self.d.column(b)), &-Sign::power(g.degree(a) as i64).to_scalar());
                if !v.is_zero() {
                    report.leibniz.push((vec![a, b], v));
                }
                for c in 0..n {
                    let mut v = self.mul(&self.mul(&e(a), &e(b)), &e(c));
                    v.sub_assign(&self.mul(&e(a), &self.mul(&e(b), &e(c))));
                    if !v.is_zero() {
                        report.associativity.push((vec![a, b, c], v));
                    }
                }
            }
        }
        report
    }

    /// `m_1 = d`, `m_2 = ·`, `m_{≥3} = 0`, stored through `arity_cap`.
    pub fn as_ainfinity(&self, arity_cap: usize) -> AInfinityStructure {
        let mut m1 = TensorMap::new(1, &self.space, 1);
        for i in 0..self.space.dim() {
            let col = self.d.column(i);
            if !col.is_zero() {
                m1.set(&[i], col).expect("degree checked");
            }
        }
        let mut ops = vec![m1, self.product.clone()];
        for n in 3..=arity_cap {
            ops.push(TensorMap::new(n, &self.space, 2 - n as i32));
        }
        ops.truncate(arity_cap.max(1));
        AInfinityStructure::new(&self.space, ops).expect("shapes validated on construction")
    }

    /// Graded commutator `[a,b] = ab - (-1)^{|a||b|} ba` with the same `d`.
    pub fn commutator_dgla(&self) -> Dgla {
        let g = &self.space;
        let mut bracket = MultiMap::exterior(2, g, 0);
        for t in canonical_tuples(g, 2) {
            let (a, b) = (g.basis_vector(t[0]), g.basis_vector(t[1]));
            let mut v = self.mul(&a, &b);
            v.add_scaled(&self.mul(&b, &a), &-Sign::koszul(g.degree(t[0]), g.degree(t[1])).to_scalar());
            if !v.is_zero() {
                bracket.set(&t, v).expect("degree checked");
            }
        }
        Dgla::new(g, self.d.clone(), bracket).expect("shapes checked")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, one};

    #[test]
    fn heis_is_valid_and_symmetric() {
        let a = crate::fixtures::heis();
        assert!(a.check().is_valid());
        let (x, y) = (a.space().basis_vector(0), a.space().basis_vector(1));
        assert_eq!(a.br(&x, &y), a.br(&y, &x));
    }

    #[test]
    fn abelian_is_valid() {
        let g = GradedSpace::from_degrees(&[0, 1, 1, 2]);
        assert!(Dgla::abelian(&g, HomogeneousMap::zero(&g, &g, 1)).unwrap().check().is_valid());
    }

    #[test]
    fn broken_d_squared_is_listed() {
        let g = GradedSpace::from_degrees(&[0, 1, 2]);
        let mut d = HomogeneousMap::zero(&g, &g, 1);
        d.set_entry(1, 0, one()).unwrap();
        d.set_entry(2, 1, one()).unwrap();
        let r = Dgla::abelian(&g, d).unwrap().check();
        assert_eq!(r.d_squared.len(), 1);
        assert_eq!(r.d_squared[0].0, 0);
    }

    #[test]
    fn jacobi_failure_is_detected() {
        // degree 0 Lie bracket with [a,b]=a, [b,c]=b, [a,c]=c is not Lie:
        let g = GradedSpace::from_degrees(&[0, 0, 0]);
        let mut br = MultiMap::exterior(2, &g, 0);
        br.set(&[0, 1], g.basis_vector(0)).unwrap();
        br.set(&[1, 2], g.basis_vector(1)).unwrap();
        br.set(&[0, 2], g.basis_vector(2)).unwrap();
        let r = Dgla::new(&g, HomogeneousMap::zero(&g, &g, 1), br).unwrap().check();
        assert!(!r.jacobi.is_empty());
    }

    #[test]
    fn commutator_of_matrix_units() {
        let g = GradedSpace::from_degrees(&[0, 0, 0]); // e11, e12, e22
        let mut p = TensorMap::new(2, &g, 0);
        p.set(&[0, 0], g.basis_vector(0)).unwrap();
        p.set(&[0, 1], g.basis_vector(1)).unwrap();
        p.set(&[1, 2], g.basis_vector(1)).unwrap();
        p.set(&[2, 2], g.basis_vector(2)).unwrap();
        let a = Dga::new(&g, HomogeneousMap::zero(&g, &g, 1), p).unwrap();
        assert!(a.check().is_valid());
        let c = a.commutator_dgla();
        assert!(c.check().is_valid());
        assert_eq!(c.br(&g.basis_vector(0), &g.basis_vector(1)), g.basis_vector(1));
        assert_eq!(c.br(&g.basis_vector(1), &g.basis_vector(2)), g.basis_vector(1));
        assert_eq!(c.br(&g.basis_vector(0), &g.basis_vector(2)).scaled(&int(1)), g.zero_vector());
    }
}
