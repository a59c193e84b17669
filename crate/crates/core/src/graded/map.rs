use num_traits::Zero;

use super::space::{GradedSpace, Vector};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A linear map of a fixed degree between graded spaces, stored as a dense
/// matrix (`rows = target`, `columns = source`). Entries that would violate
/// the degree are rejected at construction, so they are structurally absent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomogeneousMap {
    source: GradedSpace,
    target: GradedSpace,
    degree: i32,
    matrix: Vec<Vec<Scalar>>,
}

impl HomogeneousMap {
    pub fn zero(source: &GradedSpace, target: &GradedSpace, degree: i32) -> Self {
        Self {
            source: source.clone(),
            target: target.clone(),
            degree,
            matrix: vec![vec![Scalar::zero(); source.dim()]; target.dim()],
        }
    }

    pub fn identity(space: &GradedSpace) -> Self {
        let mut map = Self::zero(space, space, 0);
        for i in 0..space.dim() {
            map.matrix[i][i] = crate::scalar::one();
        }
        map
    }

    pub fn from_matrix(
        source: &GradedSpace,
        target: &GradedSpace,
        degree: i32,
        matrix: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        if matrix.len() != target.dim() {
            return Err(Error::LengthMismatch { expected: target.dim(), found: matrix.len() });
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != source.dim() {
                return Err(Error::LengthMismatch { expected: source.dim(), found: row.len() });
            }
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() && target.degree(i) != source.degree(j) + degree {
                    return Err(Error::DegreeMismatch(format!(
                        "entry {} <- {} violates degree {degree}",
                        target.label(i),
                        source.label(j)
                    )));
                }
            }
        }
        Ok(Self { source: source.clone(), target: target.clone(), degree, matrix })
    }

    /// Builds the map from the images of the source basis vectors.
    pub fn from_columns(
        source: &GradedSpace,
        target: &GradedSpace,
        degree: i32,
        columns: &[Vector],
    ) -> Result<Self> {
        if columns.len() != source.dim() {
            return Err(Error::LengthMismatch { expected: source.dim(), found: columns.len() });
        }
        let matrix = (0..target.dim())
            .map(|i| columns.iter().map(|c| c.get(i).clone()).collect())
            .collect();
        Self::from_matrix(source, target, degree, matrix)
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

    pub fn entry(&self, row: usize, col: usize) -> &Scalar {
        &self.matrix[row][col]
    }

    pub fn matrix(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    /// Sets one entry, enforcing the degree block structure.
    pub fn set_entry(&mut self, row: usize, col: usize, value: Scalar) -> Result<()> {
        self.target.check_index(row)?;
        self.source.check_index(col)?;
        if !value.is_zero() && self.target.degree(row) != self.source.degree(col) + self.degree {
            return Err(Error::DegreeMismatch(format!(
                "entry {} <- {} violates degree {}",
                self.target.label(row),
                self.source.label(col),
                self.degree
            )));
        }
        self.matrix[row][col] = value;
        Ok(())
    }

    pub fn column(&self, col: usize) -> Vector {
        Vector::from_coeffs(self.matrix.iter().map(|row| row[col].clone()).collect())
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        debug_assert_eq!(v.len(), self.source.dim());
        let mut out = Vector::zeros(self.target.dim());
        for (j, c) in v.support() {
            for (i, row) in self.matrix.iter().enumerate() {
                if !row[j].is_zero() {
                    out.add_coeff(i, &(&row[j] * c));
                }
            }
        }
        out
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &HomogeneousMap) -> Result<HomogeneousMap> {
        if inner.target != self.source {
            return Err(Error::SpaceMismatch);
        }
        let columns: Vec<Vector> =
            (0..inner.source.dim()).map(|j| self.apply(&inner.column(j))).collect();
        HomogeneousMap::from_columns(&inner.source, &self.target, self.degree + inner.degree, &columns)
    }

    pub fn add(&self, other: &HomogeneousMap) -> Result<HomogeneousMap> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &HomogeneousMap) -> Result<HomogeneousMap> {
        self.combine(other, |a, b| a - b)
    }

    fn combine(
        &self,
        other: &HomogeneousMap,
        f: impl Fn(&Scalar, &Scalar) -> Scalar,
    ) -> Result<HomogeneousMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::SpaceMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!(
                "cannot add maps of degree {} and {}",
                self.degree, other.degree
            )));
        }
        let matrix = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect())
            .collect();
        Ok(HomogeneousMap { matrix, ..self.clone() })
    }

    pub fn scaled(&self, c: &Scalar) -> HomogeneousMap {
        let matrix = self.matrix.iter().map(|r| r.iter().map(|a| a * c).collect()).collect();
        HomogeneousMap { matrix, ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Zero::is_zero)
    }

    /// Source basis indices whose image is nonzero.
    pub fn nonzero_columns(&self) -> Vec<usize> {
        (0..self.source.dim()).filter(|&j| self.matrix.iter().any(|r| !r[j].is_zero())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn two_term() -> (GradedSpace, HomogeneousMap) {
        let g = GradedSpace::new([("a", 0), ("b", 1)]).unwrap();
        let mut d = HomogeneousMap::zero(&g, &g, 1);
        d.set_entry(1, 0, int(2)).unwrap();
        (g, d)
    }

    #[test]
    fn degree_blocks_are_enforced() {
        let (g, mut d) = two_term();
        assert!(d.set_entry(0, 1, int(1)).is_err());
        assert!(HomogeneousMap::from_matrix(&g, &g, 1, vec![vec![int(0), int(1)], vec![int(0), int(0)]]).is_err());
    }

    #[test]
    fn d_squared_vanishes_and_degrees_add() {
        let (g, d) = two_term();
        let dd = d.compose(&d).unwrap();
        assert!(dd.is_zero());
        assert_eq!(dd.degree(), 2);
        let mut eta = HomogeneousMap::zero(&g, &g, -1);
        eta.set_entry(0, 1, crate::scalar::ratio(1, 2)).unwrap();
        let eta_d = eta.compose(&d).unwrap();
        assert_eq!(eta_d.degree(), 0);
        assert_eq!(eta_d, HomogeneousMap::from_matrix(&g, &g, 0, vec![vec![int(1), int(0)], vec![int(0), int(0)]]).unwrap());
    }

    #[test]
    fn identity_is_neutral() {
        let (g, d) = two_term();
        let id = HomogeneousMap::identity(&g);
        assert_eq!(d.compose(&id).unwrap(), d);
        assert_eq!(id.compose(&d).unwrap(), d);
    }

    #[test]
    fn mismatched_spaces_fail() {
        let (_, d) = two_term();
        let h = GradedSpace::new([("c", 0)]).unwrap();
        let f = HomogeneousMap::identity(&h);
        assert_eq!(f.compose(&d).unwrap_err(), Error::SpaceMismatch);
    }
}
