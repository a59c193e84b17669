//! Seeded test algebras: graded endomorphism algebras `End(W)` and their
//! upper-triangular subalgebras with `d = [δ, ·]`, plus two small
//! hand-written DGLAs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graded::{GradedSpace, HomogeneousMap, MultiMap, TensorMap, Vector};
use crate::scalar::{int, one, Scalar};
use crate::structures::{Dga, Dgla};

/// `g¹ = ⟨x, y⟩`, `g² = ⟨z⟩`, `d = 0`, `[x,y] = [y,x] = z`.
pub fn heis() -> Dgla {
    let g = GradedSpace::new(vec![("x", 1), ("y", 1), ("z", 2)]).expect("distinct labels");
    let mut br = MultiMap::exterior(2, &g, 0);
    br.set(&[0, 1], g.basis_vector(2)).expect("degree 2");
    Dgla::new(&g, HomogeneousMap::zero(&g, &g, 1), br).expect("shapes")
}

/// `heis` with an extra `u ∈ g¹` and `du = z`, which kills `H²`.
pub fn heis_exact() -> Dgla {
    let g = GradedSpace::new(vec![("x", 1), ("y", 1), ("u", 1), ("z", 2)]).expect("distinct labels");
    let mut d = HomogeneousMap::zero(&g, &g, 1);
    d.set_entry(3, 2, one()).expect("degree 1");
    let mut br = MultiMap::exterior(2, &g, 0);
    br.set(&[0, 1], g.basis_vector(3)).expect("degree 2");
    Dgla::new(&g, d, br).expect("shapes")
}

/// An endomorphism algebra with its differential, as both a DGA
/// (composition) and a DGLA (graded commutator).
#[derive(Clone, Debug)]
pub struct EndomorphismFixture {
    pub name: String,
    pub seed: u64,
    /// Degrees of the basis `w_1, ..., w_m` of `W`.
    pub w_degrees: Vec<i32>,
    /// Whether only upper-triangular matrix units `E_ij`, `i ≤ j`, are kept.
    pub upper_triangular: bool,
    /// `δ` as (row, column, coefficient) on `W`.
    pub delta: Vec<(usize, usize, Scalar)>,
    pub dga: Dga,
    pub dgla: Dgla,
}

/// Builds `End(W)` (or its upper-triangular part) for the given degrees of
/// `W` and an operator `δ` of degree +1 with `δ² = 0`, which must lie in the
/// algebra.
pub fn endomorphism_algebra(
    w_degrees: &[i32],
    upper_triangular: bool,
    delta: &[(usize, usize, Scalar)],
) -> crate::Result<(Dga, Dgla)> {
    let m = w_degrees.len();
    let units: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .filter(|(i, j)| !upper_triangular || i <= j)
        .collect();
    let g = GradedSpace::new(
        units.iter().map(|&(i, j)| (format!("E{}{}", i + 1, j + 1), w_degrees[i] - w_degrees[j])),
    )?;
    let index = |i: usize, j: usize| units.iter().position(|&u| u == (i, j));
    let mut product = TensorMap::new(2, &g, 0);
    for (a, &(i, j)) in units.iter().enumerate() {
        for (b, &(k, l)) in units.iter().enumerate() {
            if j == k {
                let c = index(i, l).expect("closed under composition");
                product.set(&[a, b], g.basis_vector(c))?;
            }
        }
    }
    let mut delta_vec = g.zero_vector();
    for (i, j, c) in delta {
        let a = index(*i, *j).ok_or(crate::Error::InvalidAlgebra("δ must lie in the algebra".into()))?;
        if w_degrees[*i] - w_degrees[*j] != 1 {
            return Err(crate::Error::DegreeMismatch("δ must have degree 1".into()));
        }
        delta_vec.add_coeff(a, c);
    }
    let apply = |a: &Vector, b: &Vector| product.evaluate(&[a.clone(), b.clone()]).expect("dimensions agree");
    if !apply(&delta_vec, &delta_vec).is_zero() {
        return Err(crate::Error::NotAComplex);
    }
    // d a = δa - (-1)^{|a|} aδ
    let columns: Vec<Vector> = (0..g.dim())
        .map(|a| {
            let e = g.basis_vector(a);
            let mut v = apply(&delta_vec, &e);
            let s = if g.degree(a).rem_euclid(2) == 0 { -one() } else { one() };
            v.add_scaled(&apply(&e, &delta_vec), &s);
            v
        })
        .collect();
    let d = HomogeneousMap::from_columns(&g, &g, 1, &columns)?;
    let dga = Dga::new(&g, d, product)?;
    let dgla = dga.commutator_dgla();
    Ok((dga, dgla))
}

/// One member of the seeded family: `W` of dimension 2 (full `End(W)`) or
/// 3 (upper triangular), so the algebra has dimension at most 6.
pub fn endomorphism_fixture(seed: u64) -> EndomorphismFixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let upper_triangular = rng.gen_bool(0.7);
        let m = if upper_triangular { 3 } else { 2 };
        let w_degrees: Vec<i32> = (0..m).map(|_| rng.gen_range(-1..=2)).collect();
        let slots: Vec<(usize, usize)> = (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .filter(|&(i, j)| (!upper_triangular || i <= j) && w_degrees[i] - w_degrees[j] == 1)
            .collect();
        let mut delta = Vec::new();
        for &(i, j) in &slots {
            if rng.gen_bool(0.75) {
                let c: i64 = *[-2, -1, 1, 2].get(rng.gen_range(0..4)).expect("in range");
                delta.push((i, j, int(c)));
            }
        }
        if delta.is_empty() {
            continue;
        }
        if let Ok((dga, dgla)) = endomorphism_algebra(&w_degrees, upper_triangular, &delta) {
            return EndomorphismFixture {
                name: format!("end-{seed}"),
                seed,
                w_degrees,
                upper_triangular,
                delta,
                dga,
                dgla,
            };
        }
    }
}

/// Fixtures for seeds `base, base + 1, ...`.
pub fn fixture_family(base: u64, count: usize) -> Vec<EndomorphismFixture> {
    (0..count as u64).map(|i| endomorphism_fixture(base + i)).collect()
}

/// A two-step nilpotent DGLA concentrated in degrees 1 and 2: random
/// brackets `g¹ × g¹ → g²` and a random differential `g¹ → g²`. Jacobi and
/// Leibniz hold because `g²` is central and `g³ = 0`.
#[derive(Clone, Debug)]
pub struct NilpotentFixture {
    pub name: String,
    pub seed: u64,
    pub dgla: Dgla,
}

pub fn nilpotent_fixture(seed: u64) -> NilpotentFixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x2_57e9);
    let p = rng.gen_range(2..=4usize);
    let q = rng.gen_range(1..=(6 - p).min(2));
    let mut basis: Vec<(String, i32)> = (1..=p).map(|i| (format!("x{i}"), 1)).collect();
    basis.extend((1..=q).map(|i| (format!("z{i}"), 2)));
    let g = GradedSpace::new(basis).expect("distinct labels");
    let small = |rng: &mut ChaCha8Rng| -> Scalar { int(rng.gen_range(-2..=2)) };
    let mut br = MultiMap::exterior(2, &g, 0);
    for i in 0..p {
        for j in i..p {
            let mut v = g.zero_vector();
            for k in 0..q {
                if rng.gen_bool(0.5) {
                    v.set(p + k, small(&mut rng));
                }
            }
            br.set(&[i, j], v).expect("degree 2 values");
        }
    }
    let mut d = HomogeneousMap::zero(&g, &g, 1);
    // at most one column of d per target keeps some of H¹ alive
    for k in 0..q {
        if rng.gen_bool(0.6) {
            let col = rng.gen_range(0..p);
            d.set_entry(p + k, col, int(rng.gen_range(1..=2))).expect("degree 1 entry");
        }
    }
    let dgla = Dgla::new(&g, d, br).expect("shapes");
    NilpotentFixture { name: format!("nil-{seed}"), seed, dgla }
}

pub fn nilpotent_family(base: u64, count: usize) -> Vec<NilpotentFixture> {
    (0..count as u64).map(|i| nilpotent_fixture(base + i)).collect()
}

/// A degree −1 endomorphism with small random integer entries.
pub fn random_eta(space: &GradedSpace, seed: u64) -> HomogeneousMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_e7a0);
    let mut eta = HomogeneousMap::zero(space, space, -1);
    for col in 0..space.dim() {
        for row in 0..space.dim() {
            if space.degree(row) == space.degree(col) - 1 {
                let c: i64 = rng.gen_range(-2..=2);
                eta.set_entry(row, col, int(c)).expect("degree -1 entry");
            }
        }
    }
    eta
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_written_algebras_are_valid() {
        assert!(heis().check().is_valid());
        assert!(heis_exact().check().is_valid());
    }

    #[test]
    fn family_is_valid_and_small() {
        for f in fixture_family(0, 30) {
            assert!(f.dga.check().is_valid(), "{}", f.name);
            assert!(f.dgla.check().is_valid(), "{}", f.name);
            assert!(f.dgla.space().dim() <= 6);
        }
    }

    #[test]
    fn nilpotent_family_is_valid() {
        for f in nilpotent_family(0, 20) {
            assert!(f.dgla.check().is_valid(), "{}", f.name);
            assert!(f.dgla.space().dim() <= 6);
        }
    }

    #[test]
    fn family_is_deterministic() {
        let a = endomorphism_fixture(7);
        let b = endomorphism_fixture(7);
        assert_eq!(a.w_degrees, b.w_degrees);
        assert_eq!(a.delta, b.delta);
        assert_eq!(a.dgla.bracket(), b.dgla.bracket());
    }

    #[test]
    fn random_eta_has_degree_minus_one() {
        let f = endomorphism_fixture(3);
        assert_eq!(random_eta(f.dgla.space(), 1).degree(), -1);
    }
}
