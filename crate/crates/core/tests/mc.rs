use std::sync::Arc;

use linfty::fixtures::{fixture_family, heis, heis_exact, nilpotent_family, random_eta};
use linfty::graded::Vector;
use linfty::homotopy::{induce_linfinity, HodgeData};
use linfty::mc::{
    degeneration_check, gauge_direction, gauge_tangency, kuranishi_bijection_check, kuranishi_inverse, kuranishi_locus, kuranishi_map,
    mc_residual, nilpotent_residual, residual_derivative, tensor_vector_to_series, tensor_with_artin, versal_solution,
    ArtinAlgebra, FormalSeries, FrameMode, ParameterFrame, SharedRing,
};
use linfty::structures::deformed_differential;

fn test_rings() -> Vec<(&'static str, SharedRing)> {
    vec![
        ("dual", Arc::new(ArtinAlgebra::dual_numbers())),
        ("t3", Arc::new(ArtinAlgebra::truncated_line(3))),
        ("t4", Arc::new(ArtinAlgebra::truncated_line(4))),
        ("theta", Arc::new(ArtinAlgebra::exterior_line(1))),
    ]
}

#[test]
fn heis_versal_solution_and_locus() {
    let a = heis();
    let h = HodgeData::build(a.space(), a.d()).unwrap();
    let frame = ParameterFrame::new(&h, FrameMode::Degree1, 5);
    assert_eq!(frame.len(), 2);
    let gamma = versal_solution(&a, &h, &frame).unwrap();
    assert_eq!(kuranishi_map(&a, h.eta(), frame.ring(), &gamma), frame.linear_term());
    let locus = kuranishi_locus(&a, &h, &frame, &gamma).unwrap();
    let polys: Vec<String> = locus.generators.iter().map(|g| g.polynomial.format(frame.ring())).collect();
    assert_eq!(polys, vec!["2*t1*t2"]);
    let l = induce_linfinity(&a, h.eta(), 6).unwrap();
    assert!(degeneration_check(&a, &l, &frame, &gamma, &locus, 6).unwrap().passes());
}

#[test]
fn heis_exact_locus_vanishes() {
    let a = heis_exact();
    let h = HodgeData::build(a.space(), a.d()).unwrap();
    assert_eq!(h.cohomology_dims().get(&2).copied().unwrap_or(0), 0);
    for mode in [FrameMode::Degree1, FrameMode::Full] {
        let frame = ParameterFrame::new(&h, mode, 5);
        let gamma = versal_solution(&a, &h, &frame).unwrap();
        assert!(kuranishi_locus(&a, &h, &frame, &gamma).unwrap().is_zero());
        let l = induce_linfinity(&a, h.eta(), 6).unwrap();
        assert!(mc_residual(&l, frame.ring(), &gamma).unwrap().is_zero());
        assert_eq!(gamma.format(a.space(), frame.ring()), "(t1)*x + (t2)*y + (-t1*t2)*u");
    }
}

#[test]
fn versal_solutions_of_nilpotent_fixtures() {
    for f in nilpotent_family(0, 10) {
        let a = &f.dgla;
        let h = HodgeData::build(a.space(), a.d()).unwrap();
        let l = induce_linfinity(a, h.eta(), 5).unwrap();
        for mode in [FrameMode::Degree1, FrameMode::Full] {
            let frame = ParameterFrame::new(&h, mode, 4);
            let gamma = versal_solution(a, &h, &frame).unwrap();
            assert_eq!(kuranishi_map(a, h.eta(), frame.ring(), &gamma), frame.linear_term(), "{}", f.name);
            let locus = kuranishi_locus(a, &h, &frame, &gamma).unwrap();
            let report = degeneration_check(a, &l, &frame, &gamma, &locus, 5).unwrap();
            assert!(report.passes(), "{} {:?}: {report:?}", f.name, mode);
            assert!(mc_residual(&l, frame.ring(), &gamma).unwrap().is_zero(), "{}", f.name);
        }
    }
}

#[test]
fn kuranishi_correspondence_over_test_algebras() {
    let nil = nilpotent_family(50, 4).into_iter().map(|f| (f.name, f.dgla));
    let end = fixture_family(60, 4).into_iter().map(|f| (f.name, f.dgla));
    for (name, a) in nil.chain(end) {
        let h = HodgeData::build(a.space(), a.d()).unwrap();
        for eta in [h.eta().clone(), random_eta(a.space(), 7)] {
            for (ring_name, b) in test_rings() {
                let report = kuranishi_bijection_check(&a, &eta, b).unwrap();
                assert!(report.passes(), "{name} over {ring_name}: {report:?}");
                assert_eq!(report.intertwining_sign, Some(1));
            }
        }
    }
}

#[test]
fn structure_on_tensor_with_maximal_ideal() {
    for f in nilpotent_family(70, 3) {
        let a = &f.dgla;
        let h = HodgeData::build(a.space(), a.d()).unwrap();
        let l = induce_linfinity(a, h.eta(), 5).unwrap();
        for (ring_name, b) in [
            ("dual", ArtinAlgebra::dual_numbers()),
            ("t3", ArtinAlgebra::truncated_line(3)),
            ("theta", ArtinAlgebra::exterior_line(1)),
        ] {
            let t = tensor_with_artin(&l, &b).unwrap();
            assert!(t.check(t.arity_cap()).unwrap().is_valid(), "{} {ring_name}", f.name);
            if ring_name == "dual" {
                assert!((2..=t.arity_cap()).all(|n| t.op(n).unwrap().is_zero()));
            }
            // residual computed on g ⊗ m agrees with the series residual
            let space = t.space();
            let ones = space.indices_in_degree(1);
            let mut x = space.zero_vector();
            for (k, &i) in ones.iter().enumerate() {
                x.add_coeff(i, &linfty::scalar::int(k as i64 % 3 - 1));
            }
            let direct = nilpotent_residual(&t, &x).unwrap();
            let series = mc_residual(&l, &b, &tensor_vector_to_series(a.space(), &b, &x)).unwrap();
            assert_eq!(tensor_vector_to_series(a.space(), &b, &direct), series, "{} {ring_name}", f.name);
        }
    }
}

#[test]
fn gauge_directions_are_tangent() {
    let b: SharedRing = Arc::new(ArtinAlgebra::truncated_line(3));
    // basis index of t in k[t]/t³
    let t = 1;
    let mut checked = 0;
    for f in fixture_family(80, 6) {
        let a = &f.dgla;
        let g = a.space();
        let degree0 = g.indices_in_degree(0);
        if degree0.is_empty() {
            continue;
        }
        let eta = random_eta(g, f.seed);
        let l = induce_linfinity(a, &eta, 6).unwrap();
        // a closed element d(w) + harmonic part, pulled back to a solution
        let mut z = Vector::zeros(g.dim());
        for (k, &i) in degree0.iter().enumerate() {
            z.add_scaled(&a.d().apply(&g.basis_vector(i)), &linfty::scalar::int(k as i64 + 1));
        }
        let h = HodgeData::build(g, a.d()).unwrap();
        for (k, v) in h.harmonic_basis().iter().enumerate() {
            if h.harmonic_degree(k) == 1 {
                z.add_assign(v);
            }
        }
        if z.is_zero() {
            continue;
        }
        let gamma = kuranishi_inverse(a, &eta, &*b, &FormalSeries::monomial(&z, t));
        assert!(mc_residual(&l, &*b, &gamma).unwrap().is_zero(), "{}", f.name);
        checked += 1;
        for &i in &degree0 {
            let alpha = g.basis_vector(i);
            let x = gauge_direction(&l, &gamma, b.clone(), &alpha).unwrap();
            let oracle = deformed_differential(&l, &gamma, &*b, &FormalSeries::constant(&alpha)).unwrap();
            assert_eq!(x, oracle, "{}", f.name);
            assert!(residual_derivative(&l, &gamma, b.clone(), &x).unwrap().is_zero(), "{}", f.name);
        }
    }
    assert!(checked >= 3, "only {checked} fixtures exercised");
}

#[test]
fn gauge_directions_at_versal_solutions() {
    let mut checked = 0;
    for f in fixture_family(90, 8) {
        let a = &f.dgla;
        let g = a.space();
        let h = HodgeData::build(g, a.d()).unwrap();
        let frame = ParameterFrame::new(&h, FrameMode::Full, 3);
        if frame.is_empty() || g.indices_in_degree(0).is_empty() {
            continue;
        }
        let l = induce_linfinity(a, h.eta(), 5).unwrap();
        let gamma = versal_solution(a, &h, &frame).unwrap();
        for i in g.indices_in_degree(0) {
            assert!(gauge_tangency(&l, &gamma, frame.shared_ring(), &g.basis_vector(i)).unwrap(), "{}", f.name);
        }
        checked += 1;
    }
    assert!(checked >= 3, "only {checked} fixtures exercised");
}
