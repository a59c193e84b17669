use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub degree: i32,
}

/// A finite-dimensional Z-graded vector space over the rationals with an
/// ordered, labeled basis of homogeneous vectors.
///
/// Cloning is cheap; equality compares the basis.
#[derive(Clone)]
pub struct GradedSpace {
    inner: Arc<SpaceInner>,
}

struct SpaceInner {
    basis: Vec<BasisElement>,
    degrees: Vec<i32>,
}

impl GradedSpace {
    pub fn new<S: Into<String>>(basis: impl IntoIterator<Item = (S, i32)>) -> Result<Self> {
        let basis: Vec<BasisElement> = basis
            .into_iter()
            .map(|(label, degree)| BasisElement { label: label.into(), degree })
            .collect();
        for (i, b) in basis.iter().enumerate() {
            if basis[..i].iter().any(|c| c.label == b.label) {
                return Err(Error::DuplicateLabel(b.label.clone()));
            }
        }
        let degrees = basis.iter().map(|b| b.degree).collect();
        Ok(Self { inner: Arc::new(SpaceInner { basis, degrees }) })
    }

    /// Basis labels `e0, e1, ...` with the given degrees.
    pub fn from_degrees(degrees: &[i32]) -> Self {
        Self::new(degrees.iter().enumerate().map(|(i, &d)| (format!("e{i}"), d)))
            .expect("generated labels are unique")
    }

    pub fn dim(&self) -> usize {
        self.inner.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.inner.basis
    }

    pub fn degrees(&self) -> &[i32] {
        &self.inner.degrees
    }

    pub fn degree(&self, index: usize) -> i32 {
        self.inner.degrees[index]
    }

    pub fn label(&self, index: usize) -> &str {
        &self.inner.basis[index].label
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.inner.basis.iter().position(|b| b.label == label)
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.dim() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, dim: self.dim() })
        }
    }

    pub fn indices_in_degree(&self, degree: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == degree).collect()
    }

    /// Dimension of each nonzero graded piece.
    pub fn dims_by_degree(&self) -> BTreeMap<i32, usize> {
        let mut dims = BTreeMap::new();
        for &d in self.degrees() {
            *dims.entry(d).or_insert(0) += 1;
        }
        dims
    }

    /// The shifted space `g[n]` as a view: `v[n]` has degree `deg v - n`.
    pub fn shifted(&self, n: i32) -> Shifted<'_> {
        Shifted { space: self, offset: n }
    }

    /// Degree of a nonzero homogeneous vector; `None` for zero or
    /// inhomogeneous vectors.
    pub fn homogeneous_degree(&self, v: &Vector) -> Option<i32> {
        let mut found = None;
        for (i, _) in v.support() {
            let d = self.degree(i);
            match found {
                None => found = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        found
    }

    /// True when `v` is zero or homogeneous of the given degree.
    pub fn is_of_degree(&self, v: &Vector, degree: i32) -> bool {
        v.support().all(|(i, _)| self.degree(i) == degree)
    }

    pub fn zero_vector(&self) -> Vector {
        Vector::zeros(self.dim())
    }

    pub fn basis_vector(&self, index: usize) -> Vector {
        Vector::basis(self.dim(), index)
    }

    /// Human readable linear combination, e.g. `2*x - 1/3*z`.
    pub fn format_vector(&self, v: &Vector) -> String {
        let mut out = String::new();
        for (i, c) in v.support() {
            let label = self.label(i);
            let negative = c < &Scalar::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if magnitude == crate::scalar::one() {
                out.push_str(label);
            } else {
                out.push_str(&format!("{magnitude}*{label}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl PartialEq for GradedSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.basis == other.inner.basis
    }
}

impl Eq for GradedSpace {}

impl fmt::Debug for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.basis().iter().map(|b| format!("{}:{}", b.label, b.degree)))
            .finish()
    }
}

/// Degree-offset view of a graded space.
#[derive(Clone, Copy, Debug)]
pub struct Shifted<'a> {
    space: &'a GradedSpace,
    offset: i32,
}

impl Shifted<'_> {
    pub fn degree(&self, index: usize) -> i32 {
        self.space.degree(index) - self.offset
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.space.degrees().iter().map(|d| d - self.offset).collect()
    }

    pub fn offset(&self) -> i32 {
        self.offset
    }
}

/// Dense coordinate vector with exact coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        Self(vec![Scalar::zero(); dim])
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[index] = crate::scalar::one();
        v
    }

    pub fn from_coeffs(coeffs: Vec<Scalar>) -> Self {
        Self(coeffs)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.0[i]
    }

    pub fn set(&mut self, i: usize, value: Scalar) {
        self.0[i] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Vector, c: &Scalar) {
        debug_assert_eq!(self.len(), other.len());
        if c.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
    }

    pub fn add_assign(&mut self, other: &Vector) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    pub fn sub_assign(&mut self, other: &Vector) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }

    pub fn add_coeff(&mut self, i: usize, c: &Scalar) {
        self.0[i] += c;
    }

    pub fn scaled(&self, c: &Scalar) -> Vector {
        Self(self.0.iter().map(|a| a * c).collect())
    }

    pub fn negate(&mut self) {
        for a in &mut self.0 {
            *a = -std::mem::take(a);
        }
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter().map(|c| c.to_string())).finish()
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        out.sub_assign(rhs);
        out
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(mut self) -> Vector {
        self.negate();
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn labels_are_unique() {
        assert_eq!(
            GradedSpace::new([("x", 1), ("x", 2)]).unwrap_err(),
            Error::DuplicateLabel("x".into())
        );
    }

    #[test]
    fn shift_is_a_degree_offset() {
        let g = GradedSpace::new([("x", 1), ("z", 2)]).unwrap();
        let g1 = g.shifted(1);
        assert_eq!(g1.degrees(), vec![0, 1]);
        assert_eq!(g.dims_by_degree().get(&1), Some(&1));
    }

    #[test]
    fn homogeneity() {
        let g = GradedSpace::new([("x", 1), ("y", 1), ("z", 2)]).unwrap();
        let mut v = g.basis_vector(0);
        v.add_scaled(&g.basis_vector(1), &int(3));
        assert_eq!(g.homogeneous_degree(&v), Some(1));
        assert_eq!(g.format_vector(&v), "x + 3*y");
        v.add_scaled(&g.basis_vector(2), &int(-1));
        assert_eq!(g.homogeneous_degree(&v), None);
        assert_eq!(g.format_vector(&v), "x + 3*y - z");
    }
}
