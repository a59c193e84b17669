//! Exact row reduction over the rationals.
//!
//! Matrices are row-major `Vec<Vec<Scalar>>`. Pivots are always chosen as
//! the leftmost nonzero column and the topmost available row, so results
//! depend only on the stored basis order.

use num_traits::{One, Zero};

use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    if !m[r][j].is_zero() {
                        let t = &f * &m[r][j];
                        m[i][j] -= t;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Basis of `{x : m x = 0}`, one vector per free column, in column order.
pub fn kernel(m: &Matrix, cols: usize) -> Vec<Vec<Scalar>> {
    let mut work = m.clone();
    let pivots = rref(&mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -work[row][f].clone();
            }
            v
        })
        .collect()
}

/// Transpose of a list of column vectors (`vectors[j]` becomes column `j`).
pub fn columns_to_matrix(vectors: &[Vec<Scalar>], rows: usize) -> Matrix {
    (0..rows).map(|i| vectors.iter().map(|v| v[i].clone()).collect()).collect()
}

/// Greedily keeps the candidates that increase the rank of `base`, in order.
pub fn extend_independent(base: &[Vec<Scalar>], candidates: &[Vec<Scalar>]) -> Vec<usize> {
    let mut current: Vec<Vec<Scalar>> = base.to_vec();
    let mut r = rank(&current);
    let mut chosen = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        current.push(c.clone());
        let nr = rank(&current);
        if nr > r {
            r = nr;
            chosen.push(i);
        } else {
            current.pop();
        }
    }
    chosen
}

/// Solves `a x = b`; `None` when inconsistent. Free variables are set to 0.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = aug[row][cols].clone();
    }
    Some(x)
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return if n == 0 { Some(Vec::new()) } else { None };
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// True when `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let r = rank(&basis.to_vec());
    let mut with = basis.to_vec();
    with.push(v.to_vec());
    rank(&with) == r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn kernel_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&a), 1);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &a {
                let s: Scalar = row.iter().zip(v).map(|(x, y)| x * y).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, m(&[&[1, -1], &[-1, 2]]));
        assert_eq!(solve(&a, &[int(3), int(2)]).unwrap(), vec![int(1), int(1)]);
        assert!(inverse(&m(&[&[1, 1], &[1, 1]])).is_none());
        assert!(solve(&m(&[&[1, 1], &[1, 1]]), &[int(1), int(2)]).is_none());
    }

    #[test]
    fn greedy_extension() {
        let base = vec![vec![int(1), int(0), int(0)]];
        let cands = vec![vec![int(2), int(0), int(0)], vec![int(0), int(1), int(0)], vec![int(1), int(1), int(0)]];
        assert_eq!(extend_independent(&base, &cands), vec![1]);
        assert!(in_span(&cands, &[int(3), int(3), int(0)]));
        assert!(!in_span(&cands, &[int(0), int(0), int(1)]));
    }
}
