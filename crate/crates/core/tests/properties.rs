use proptest::prelude::*;

use linfty::cli::{fixture_document, run_pipeline, AlgebraDocument, Command, FixtureFamily, RunOptions};
use linfty::fixtures::{endomorphism_fixture, nilpotent_fixture, random_eta};
use linfty::graded::{canonical_tuples, GradedSpace, Sign};
use linfty::homotopy::{explicit_mu3, induce_linfinity, HodgeData};
use linfty::mc::{
    kuranishi_map, mc_residual, versal_solution, CoefficientRing, FrameMode, ParameterFrame, PolynomialRing, RingElement,
};
use linfty::scalar::{format, int, parse, ratio};
use linfty::structures::{Generator, LInfinityStructure, PolyVectorField};

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn rationals_print_in_lowest_terms(p in -500i64..500, q in 1i64..60) {
        let x = ratio(p, q);
        let text = format(&x);
        prop_assert_eq!(parse(&text).unwrap(), x.clone());
        prop_assert_eq!(&format(&ratio(p * 7, q * 7)), &text);
        if let Some((_, den)) = text.split_once('/') {
            prop_assert!(!den.starts_with('-'));
        }
    }

    #[test]
    fn dgla_view_is_a_valid_linfinity_structure(seed in any::<u64>()) {
        let f = endomorphism_fixture(seed);
        prop_assert!(f.dgla.check().is_valid());
        prop_assert!(f.dga.check().is_valid());
        prop_assert!(f.dgla.as_linfinity(5).check(5).unwrap().is_valid());
    }

    #[test]
    fn hodge_identities_hold(seed in any::<u64>()) {
        let f = endomorphism_fixture(seed);
        let h = HodgeData::build(f.dgla.space(), f.dgla.d()).unwrap();
        prop_assert!(h.verify().is_valid());
    }

    #[test]
    fn vector_field_round_trips_and_agrees_on_validity(seed in any::<u64>(), entry in 0usize..40, scale in -3i64..4) {
        let f = endomorphism_fixture(seed);
        let g = f.dgla.space();
        let l = induce_linfinity(&f.dgla, &random_eta(g, seed), 4).unwrap();
        prop_assert_eq!(l.op(3).unwrap(), &explicit_mu3(&f.dgla, &random_eta(g, seed)).unwrap());
        let q = PolyVectorField::from_linfinity(&l, 4).unwrap();
        prop_assert!(q.to_linfinity().unwrap().agrees_with(&l, 4).unwrap());

        // perturb one entry of μ_2 and compare both verdicts
        let mut ops: Vec<_> = (1..=4).map(|n| l.op(n).unwrap().clone()).collect();
        let tuples = canonical_tuples(g, 2);
        let t = &tuples[entry % tuples.len()];
        if let Some(&k) = g.indices_in_degree(ops[1].output_degree(t)).first() {
            let mut v = ops[1].eval_basis(t);
            v.add_coeff(k, &int(scale));
            ops[1].set(t, v).unwrap();
        }
        let perturbed = LInfinityStructure::new(g, ops, 4, Generator::Stored).unwrap();
        let jacobi = perturbed.check(4).unwrap().is_valid();
        let square = PolyVectorField::from_linfinity(&perturbed, 4).unwrap().square().is_zero();
        prop_assert_eq!(jacobi, square);
    }

    #[test]
    fn versal_solutions_of_random_nilpotent_algebras(seed in any::<u64>(), full in any::<bool>()) {
        let a = nilpotent_fixture(seed).dgla;
        let h = HodgeData::build(a.space(), a.d()).unwrap();
        let mode = if full { FrameMode::Full } else { FrameMode::Degree1 };
        let frame = ParameterFrame::new(&h, mode, 4);
        let gamma = versal_solution(&a, &h, &frame).unwrap();
        prop_assert_eq!(kuranishi_map(&a, h.eta(), frame.ring(), &gamma), frame.linear_term());
        let l = induce_linfinity(&a, h.eta(), 5).unwrap();
        prop_assert!(mc_residual(&l, frame.ring(), &gamma).unwrap().is_zero());
    }

    #[test]
    fn parameter_rings_are_graded_commutative(degrees in proptest::collection::vec(-2i32..3, 1..4), order in 2usize..5) {
        let params: Vec<(String, i32)> = degrees.iter().enumerate().map(|(i, &d)| (format!("t{}", i + 1), d)).collect();
        let ring = PolynomialRing::new(params, order);
        let n = ring.len();
        let basis = |i: usize| RingElement::basis(i);
        for a in 1..n.min(12) {
            for b in 1..n.min(12) {
                let ab = basis(a).mul(&basis(b), &ring);
                let mut ba = RingElement::zero();
                ba.add_scaled(&basis(b).mul(&basis(a), &ring), &Sign::koszul(ring.degree(a), ring.degree(b)).to_scalar());
                prop_assert_eq!(&ab, &ba);
                for c in 1..n.min(8) {
                    prop_assert_eq!(ab.mul(&basis(c), &ring), basis(a).mul(&basis(b).mul(&basis(c), &ring), &ring));
                }
            }
        }
        for i in 0..ring.num_params() {
            let t = ring.param_index(i).unwrap();
            if ring.param_degree(i) % 2 != 0 {
                prop_assert!(basis(t).mul(&basis(t), &ring).is_zero());
            }
        }
    }

    #[test]
    fn documents_round_trip_and_reports_are_deterministic(seed in 0u64..10_000, nil in any::<bool>()) {
        let family = if nil { FixtureFamily::Nilpotent } else { FixtureFamily::Endomorphism };
        let doc = fixture_document(family, seed);
        let text = doc.serialize();
        let parsed = AlgebraDocument::parse(&text).unwrap();
        prop_assert_eq!(&parsed, &doc);
        prop_assert_eq!(parsed.serialize(), text);
        let options = RunOptions { order: 3, max_arity: 4, ..RunOptions::default() };
        let first = run_pipeline(&parsed, Command::Report, options.clone()).unwrap();
        let second = run_pipeline(&parsed, Command::Report, options).unwrap();
        prop_assert!(first.passed());
        prop_assert_eq!(first.to_machine(), second.to_machine());
    }
}

#[test]
fn spaces_report_dimensions_by_degree() {
    let g = GradedSpace::from_degrees(&[0, 1, 1, -2, 1]);
    let dims = g.dims_by_degree();
    assert_eq!(dims[&1], 3);
    assert_eq!(dims[&-2], 1);
}
