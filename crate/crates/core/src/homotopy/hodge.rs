use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded::{GradedSpace, HomogeneousMap, Vector};
use crate::linalg::{self, Matrix};
use crate::scalar::{one, Scalar};

/// A contraction of `(g, d)` onto harmonic representatives:
/// `Id = P_H + dη + ηd`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeData {
    space: GradedSpace,
    d: HomogeneousMap,
    p_h: HomogeneousMap,
    eta: HomogeneousMap,
    harmonic: Vec<Vector>,
}

/// Which contraction identities hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeReport {
    pub decomposition: bool,
    pub idempotent: bool,
    pub d_after_p: bool,
    pub p_after_d: bool,
    pub eta_squared: bool,
    pub eta_after_p: bool,
    pub p_after_eta: bool,
}

impl HodgeReport {
    pub fn is_valid(&self) -> bool {
        self.decomposition
            && self.idempotent
            && self.d_after_p
            && self.p_after_d
            && self.eta_squared
            && self.eta_after_p
            && self.p_after_eta
    }
}

fn restrict(v: &Vector, idx: &[usize]) -> Vec<Scalar> {
    idx.iter().map(|&i| v.get(i).clone()).collect()
}

fn embed(dim: usize, idx: &[usize], coords: &[Scalar]) -> Vector {
    let mut v = Vector::zeros(dim);
    for (&i, c) in idx.iter().zip(coords) {
        v.set(i, c.clone());
    }
    v
}

impl HodgeData {
    /// Per degree `k`: a complement `H` of `im d` in `ker d` taken from the
    /// row-reduced kernel basis, a complement `C` of `ker d` spanned by
    /// standard basis vectors, `η(dc) = c` on `d(C)` and `η = 0` on `H ⊕ C`.
    pub fn build(space: &GradedSpace, d: &HomogeneousMap) -> Result<Self> {
        if d.source() != space || d.target() != space || d.degree() != 1 {
            return Err(Error::DegreeMismatch("differential must be a degree 1 endomorphism".into()));
        }
        if !d.compose(d)?.is_zero() {
            return Err(Error::NotAComplex);
        }
        let dim = space.dim();
        let by_degree: BTreeMap<i32, Vec<usize>> =
            space.dims_by_degree().keys().map(|&k| (k, space.indices_in_degree(k))).collect();
        let empty = Vec::new();
        // per degree: harmonic vectors and complement vectors (full coordinates)
        let mut harmonic_of: BTreeMap<i32, Vec<Vector>> = BTreeMap::new();
        let mut complement_of: BTreeMap<i32, Vec<Vector>> = BTreeMap::new();
        for (&k, idx) in &by_degree {
            let next = by_degree.get(&(k + 1)).unwrap_or(&empty);
            let prev = by_degree.get(&(k - 1)).unwrap_or(&empty);
            // d restricted to g^k → g^{k+1}
            let dk: Matrix = next.iter().map(|&r| idx.iter().map(|&c| d.entry(r, c).clone()).collect()).collect();
            let ker = if next.is_empty() {
                (0..idx.len()).map(|i| (0..idx.len()).map(|j| if i == j { one() } else { Scalar::zero() }).collect()).collect()
            } else {
                linalg::kernel(&dk, idx.len())
            };
            let im: Vec<Vec<Scalar>> = prev.iter().map(|&c| restrict(&d.column(c), idx)).collect();
            let h = linalg::extend_independent(&im, &ker);
            harmonic_of.insert(k, h.iter().map(|&i| embed(dim, idx, &ker[i])).collect());
            let standard: Vec<Vec<Scalar>> = (0..idx.len())
                .map(|i| (0..idx.len()).map(|j| if i == j { one() } else { Scalar::zero() }).collect())
                .collect();
            let c = linalg::extend_independent(&ker, &standard);
            complement_of.insert(k, c.iter().map(|&i| space.basis_vector(idx[i])).collect());
        }
        let mut eta_cols = vec![Vector::zeros(dim); dim];
        let mut p_cols = vec![Vector::zeros(dim); dim];
        for (&k, idx) in &by_degree {
            let prev_c = complement_of.get(&(k - 1)).unwrap_or(&Vec::new()).clone();
            let h = &harmonic_of[&k];
            let c = &complement_of[&k];
            // adapted basis of g^k: d(C_{k-1}), H_k, C_k
            let mut adapted: Vec<Vec<Scalar>> = prev_c.iter().map(|v| restrict(&d.apply(v), idx)).collect();
            adapted.extend(h.iter().map(|v| restrict(v, idx)));
            adapted.extend(c.iter().map(|v| restrict(v, idx)));
            let basis = linalg::columns_to_matrix(&adapted, idx.len());
            let inv = linalg::inverse(&basis).ok_or(Error::HodgeMismatch)?;
            // images of the adapted basis vectors
            let mut eta_images: Vec<Vector> = prev_c.clone();
            eta_images.extend(std::iter::repeat(Vector::zeros(dim)).take(h.len() + c.len()));
            let mut p_images: Vec<Vector> = vec![Vector::zeros(dim); prev_c.len()];
            p_images.extend(h.iter().cloned());
            p_images.extend(std::iter::repeat(Vector::zeros(dim)).take(c.len()));
            // column for standard basis vector idx[j]: Σ_a inv[a][j] * image_a
            for (j, &col) in idx.iter().enumerate() {
                for a in 0..adapted.len() {
                    let coeff = &inv[a][j];
                    if !coeff.is_zero() {
                        eta_cols[col].add_scaled(&eta_images[a], coeff);
                        p_cols[col].add_scaled(&p_images[a], coeff);
                    }
                }
            }
        }
        let eta = HomogeneousMap::from_columns(space, space, -1, &eta_cols)?;
        let p_h = HomogeneousMap::from_columns(space, space, 0, &p_cols)?;
        let harmonic = harmonic_of.into_values().flatten().collect();
        Ok(Self { space: space.clone(), d: d.clone(), p_h, eta, harmonic })
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn d(&self) -> &HomogeneousMap {
        &self.d
    }

    pub fn p_h(&self) -> &HomogeneousMap {
        &self.p_h
    }

    pub fn eta(&self) -> &HomogeneousMap {
        &self.eta
    }

    /// Representatives `γ_α`, ordered by degree.
    pub fn harmonic_basis(&self) -> &[Vector] {
        &self.harmonic
    }

    pub fn harmonic_degree(&self, alpha: usize) -> i32 {
        self.space.homogeneous_degree(&self.harmonic[alpha]).expect("harmonic vectors are homogeneous")
    }

    /// `dim H^k` for every degree occurring in the space.
    pub fn cohomology_dims(&self) -> BTreeMap<i32, usize> {
        let mut dims: BTreeMap<i32, usize> = self.space.dims_by_degree().keys().map(|&k| (k, 0)).collect();
        for a in 0..self.harmonic.len() {
            *dims.get_mut(&self.harmonic_degree(a)).expect("degree present") += 1;
        }
        dims
    }

    /// Coordinates of `P_H v` in the harmonic basis.
    pub fn harmonic_coordinates(&self, v: &Vector) -> Vec<Scalar> {
        let p = self.p_h.apply(v);
        let cols: Vec<Vec<Scalar>> = self.harmonic.iter().map(|h| h.coeffs().to_vec()).collect();
        if cols.is_empty() {
            return Vec::new();
        }
        let a = linalg::columns_to_matrix(&cols, self.space.dim());
        linalg::solve(&a, p.coeffs()).expect("P_H lands in the harmonic span")
    }

    pub fn verify(&self) -> HodgeReport {
        let id = HomogeneousMap::identity(&self.space);
        let (d, p, eta) = (&self.d, &self.p_h, &self.eta);
        let c = |a: &HomogeneousMap, b: &HomogeneousMap| a.compose(b).expect("same space");
        let sum = p.add(&c(d, eta)).and_then(|s| s.add(&c(eta, d))).expect("same degree");
        HodgeReport {
            decomposition: sum == id,
            idempotent: c(p, p) == *p,
            d_after_p: c(d, p).is_zero(),
            p_after_d: c(p, d).is_zero(),
            eta_squared: c(eta, eta).is_zero(),
            eta_after_p: c(eta, p).is_zero(),
            p_after_eta: c(p, eta).is_zero(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn zero_differential() {
        let g = GradedSpace::from_degrees(&[0, 1, 1, 2]);
        let h = HodgeData::build(&g, &HomogeneousMap::zero(&g, &g, 1)).unwrap();
        assert_eq!(h.p_h(), &HomogeneousMap::identity(&g));
        assert!(h.eta().is_zero());
        assert_eq!(h.harmonic_basis().len(), 4);
        assert!(h.verify().is_valid());
    }

    #[test]
    fn acyclic_two_term_complex() {
        let g = GradedSpace::from_degrees(&[0, 0, 1, 1]);
        let mut d = HomogeneousMap::zero(&g, &g, 1);
        d.set_entry(2, 0, int(2)).unwrap();
        d.set_entry(3, 0, one()).unwrap();
        d.set_entry(3, 1, one()).unwrap();
        let h = HodgeData::build(&g, &d).unwrap();
        assert!(h.p_h().is_zero());
        assert!(h.harmonic_basis().is_empty());
        assert!(h.verify().is_valid());
        // η = d⁻¹ on g¹
        let de = d.compose(h.eta()).unwrap();
        for i in [2, 3] {
            assert_eq!(de.column(i), g.basis_vector(i));
        }
    }

    #[test]
    fn three_term_complex_with_one_class() {
        // g⁰ = ⟨a⟩, g¹ = ⟨b, c⟩, g² = ⟨e⟩; first da = b, dc = e (acyclic)
        let g = GradedSpace::from_degrees(&[0, 1, 1, 2]);
        let mut d = HomogeneousMap::zero(&g, &g, 1);
        d.set_entry(1, 0, one()).unwrap();
        d.set_entry(3, 2, one()).unwrap();
        let h = HodgeData::build(&g, &d).unwrap();
        let r = h.verify();
        assert!(r.is_valid(), "{r:?}");
        assert_eq!(h.cohomology_dims().values().sum::<usize>(), 0);
        // then only da = b: one class in degree 1 and one in degree 2
        let mut d2 = HomogeneousMap::zero(&g, &g, 1);
        d2.set_entry(1, 0, one()).unwrap();
        let h2 = HodgeData::build(&g, &d2).unwrap();
        assert!(h2.verify().is_valid());
        assert_eq!(h2.cohomology_dims(), BTreeMap::from([(0, 0), (1, 1), (2, 1)]));
    }

    #[test]
    fn non_complex_is_rejected() {
        let g = GradedSpace::from_degrees(&[0, 1, 2]);
        let mut d = HomogeneousMap::zero(&g, &g, 1);
        d.set_entry(1, 0, one()).unwrap();
        d.set_entry(2, 1, one()).unwrap();
        assert!(matches!(HodgeData::build(&g, &d), Err(Error::NotAComplex)));
    }
}
