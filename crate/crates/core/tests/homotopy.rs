use linfty::fixtures::{fixture_family, heis, random_eta};
use linfty::graded::HomogeneousMap;
use linfty::homotopy::{
    complementary_structure, explicit_mu3, induce_ainfinity, induce_linfinity, kuranishi_morphism, obstruction_map, HodgeData,
};
use linfty::structures::PolyVectorField;

#[test]
fn hodge_data_of_fixtures_satisfies_all_identities() {
    for f in fixture_family(100, 12) {
        let h = HodgeData::build(f.dgla.space(), f.dgla.d()).unwrap();
        assert!(h.verify().is_valid(), "{}", f.name);
    }
}

#[test]
fn induced_structures_are_valid() {
    for f in fixture_family(200, 6) {
        let h = HodgeData::build(f.dgla.space(), f.dgla.d()).unwrap();
        for eta in [h.eta().clone(), random_eta(f.dgla.space(), f.seed)] {
            let l = induce_linfinity(&f.dgla, &eta, 5).unwrap();
            let report = l.check(5).unwrap();
            assert!(report.is_valid(), "{}: first failure at {:?}", f.name, report.first_failing_arity());
            assert_eq!(l.op(3).unwrap(), &explicit_mu3(&f.dgla, &eta).unwrap(), "{}", f.name);
            let k = kuranishi_morphism(&f.dgla, &eta).unwrap();
            assert!(k.check(&l, 5).unwrap().is_valid(), "{}", f.name);
            let q = PolyVectorField::from_linfinity(&l, 5).unwrap();
            assert!(q.square().is_zero(), "{}", f.name);
        }
    }
}

#[test]
fn induced_ainfinity_structures_are_valid() {
    for f in fixture_family(300, 5) {
        let eta = random_eta(f.dga.space(), f.seed);
        let a = induce_ainfinity(&f.dga, &eta, 4).unwrap();
        let report = a.check(4).unwrap();
        assert!(report.is_valid(), "{}: first failure at {:?}", f.name, report.first_failing_arity());
        assert!(a.symmetrize().check(4).unwrap().is_valid(), "{}", f.name);
    }
}

#[test]
fn zero_eta_gives_abelian_structure() {
    let a = heis();
    let g = a.space();
    let l = induce_linfinity(&a, &HomogeneousMap::zero(g, g, -1), 4).unwrap();
    for n in 2..=4 {
        assert!(l.op(n).unwrap().is_zero());
    }
}

#[test]
fn heis_obstruction_pairs_x_and_y_to_z() {
    let a = heis();
    let h = HodgeData::build(a.space(), a.d()).unwrap();
    let form = obstruction_map(&a, &h).unwrap();
    assert!(!form.is_zero());
    assert_eq!(form.entry(0, 1), form.entry(1, 0));
}

#[test]
fn complementary_structure_report() {
    for f in fixture_family(400, 4) {
        let eta = random_eta(f.dgla.space(), f.seed);
        let (l, _) = complementary_structure(&f.dgla, &eta, 4).unwrap();
        let r = l.check(4).unwrap();
        eprintln!("{}: complementary structure valid through 4: {} (first failure {:?})", f.name, r.is_valid(), r.first_failing_arity());
    }
}
