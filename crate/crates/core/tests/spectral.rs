use nalgebra::DMatrix;
use normexp_core::build::{build_alternating, build_psl2, build_psl3, build_symmetric};
use normexp_core::group::DEFAULT_ORDER_CAP;
use normexp_core::spectral::{
    check_vertex_expansion, eigenvalues_normal, lambda_direct, lambda_normal, lambda_power, mixing_discrepancy,
    neighborhood, normality_residual, spectral_report, DEFAULT_DENSE_CAP,
};
use normexp_core::{CayleySpec, CharacterTable, ClassTable, Error, FiniteGroup, NormalSubset, Status, Subset};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn setup(g: &FiniteGroup) -> (ClassTable, CharacterTable) {
    let ct = ClassTable::compute(g);
    let tab = CharacterTable::compute(g, &ct, 3).unwrap();
    (ct, tab)
}

/// Independent oracle: largest singular value of `M − J/n`.
fn lambda_svd(spec: &CayleySpec<'_>) -> f64 {
    let m = spec.walk_matrix();
    let n = m.nrows();
    let centered = m - DMatrix::from_element(n, n, 1.0 / n as f64);
    centered.singular_values().max()
}

#[test]
fn trivial_connection_sets() {
    let g = build_alternating(5, DEFAULT_ORDER_CAP).unwrap();
    let (ct, tab) = setup(&g);
    let all = NormalSubset::all(&ct);
    let eig = eigenvalues_normal(&tab, &all).unwrap();
    assert!((eig[0] - 1.0).norm() < 1e-10);
    assert!(eig[1..].iter().all(|l| l.norm() < 1e-10));
    let id = NormalSubset::from_classes(&ct, &[0]).unwrap();
    assert!(eigenvalues_normal(&tab, &id).unwrap().iter().all(|l| (l - 1.0).norm() < 1e-10));
    assert!((lambda_normal(&tab, &id).unwrap() - 1.0).abs() < 1e-10);
    let full = CayleySpec::new(&g, Subset::full(60)).unwrap();
    assert!(lambda_direct(&full, DEFAULT_DENSE_CAP).unwrap() < 1e-7);
    let one = CayleySpec::new(&g, Subset::identity(60)).unwrap();
    assert!((lambda_direct(&one, DEFAULT_DENSE_CAP).unwrap() - 1.0).abs() < 1e-9);
    assert!(matches!(CayleySpec::new(&g, Subset::empty(60)), Err(Error::EmptySubset)));
}

#[test]
fn a5_nonidentity_lambda_is_one_over_59() {
    let g = build_alternating(5, DEFAULT_ORDER_CAP).unwrap();
    let (ct, tab) = setup(&g);
    let s = NormalSubset::all_nonidentity(&ct);
    assert!((lambda_normal(&tab, &s).unwrap() - 1.0 / 59.0).abs() < 1e-10);
    let spec = CayleySpec::new(&g, s.set().clone()).unwrap();
    assert!((lambda_direct(&spec, DEFAULT_DENSE_CAP).unwrap() - 1.0 / 59.0).abs() < 1e-8);
}

#[test]
fn single_class_equality_matches_oracle() {
    for g in [
        build_alternating(5, DEFAULT_ORDER_CAP).unwrap(),
        build_symmetric(5, DEFAULT_ORDER_CAP).unwrap(),
        build_psl2(7, DEFAULT_ORDER_CAP).unwrap(),
    ] {
        let (ct, tab) = setup(&g);
        for c in 1..ct.len() {
            let s = NormalSubset::from_classes(&ct, &[c]).unwrap();
            let spec = CayleySpec::new(&g, s.set().clone()).unwrap();
            assert!(spec.is_normal());
            let ln = lambda_normal(&tab, &s).unwrap();
            let ld = lambda_direct(&spec, DEFAULT_DENSE_CAP).unwrap();
            let r = tab.character_ratio(c).unwrap();
            assert!((ln - r).abs() < 1e-10, "{} class {c}", g.label());
            assert!((ld - ln).abs() < 1e-6, "{} class {c}: {ld} vs {ln}", g.label());
            assert!((lambda_svd(&spec) - ld).abs() < 1e-8);
            assert!(normality_residual(&spec) < 1e-10);
        }
    }
}

#[test]
fn power_iteration_agrees_with_dense() {
    let g = build_psl2(7, DEFAULT_ORDER_CAP).unwrap();
    let (ct, _) = setup(&g);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for c in 1..ct.len() {
        let spec = CayleySpec::new(&g, NormalSubset::from_classes(&ct, &[c]).unwrap().set().clone()).unwrap();
        let dense = lambda_direct(&spec, DEFAULT_DENSE_CAP).unwrap();
        let power = lambda_power(&spec).unwrap();
        assert!((dense - power).abs() < 1e-6, "class {c}: {dense} vs {power}");
    }
    // non-normal connection sets too
    for _ in 0..5 {
        let spec = CayleySpec::new(&g, Subset::random_of_size(168, 9, &mut rng)).unwrap();
        let dense = lambda_direct(&spec, DEFAULT_DENSE_CAP).unwrap();
        let power = lambda_direct(&spec, 10).unwrap();
        assert!((dense - power).abs() < 1e-6, "{dense} vs {power}");
    }
}

#[test]
fn power_path_on_psl3_3_matches_characters() {
    let g = build_psl3(3, DEFAULT_ORDER_CAP).unwrap();
    let (ct, tab) = setup(&g);
    let c = ct.len() - 1;
    let s = NormalSubset::from_classes(&ct, &[c]).unwrap();
    let spec = CayleySpec::new(&g, s.set().clone()).unwrap();
    let ld = lambda_direct(&spec, DEFAULT_DENSE_CAP).unwrap();
    assert!((ld - lambda_normal(&tab, &s).unwrap()).abs() < 1e-6);
}

#[test]
fn union_of_classes_bounded_by_max_ratio() {
    let g = build_psl2(7, DEFAULT_ORDER_CAP).unwrap();
    let (ct, tab) = setup(&g);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..30 {
        let s = NormalSubset::random(&ct, &mut rng);
        let spec = CayleySpec::new(&g, s.set().clone()).unwrap();
        let ld = lambda_direct(&spec, DEFAULT_DENSE_CAP).unwrap();
        let (_, rmax) = tab.r_extremes(&s).unwrap();
        assert!(ld <= rmax + 1e-6);
        assert!((0.0..=1.0 + 1e-9).contains(&ld));
    }
}

#[test]
fn neighborhoods() {
    let g = build_alternating(5, DEFAULT_ORDER_CAP).unwrap();
    let (ct, _) = setup(&g);
    let s = NormalSubset::from_classes(&ct, &[2]).unwrap();
    let spec = CayleySpec::new(&g, s.set().clone()).unwrap();
    assert_eq!(neighborhood(&spec, &Subset::full(60)).len(), 60);
    assert_eq!(&neighborhood(&spec, &Subset::identity(60)), s.set());
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let b = Subset::random_nonempty(60, &mut rng);
        let nb = neighborhood(&spec, &b);
        assert!(nb.len() >= b.len());
        // arc-by-arc oracle
        for y in 0..60 {
            assert_eq!(nb.contains(y), b.iter().any(|x| spec.has_arc(x, y)));
        }
    }
}

#[test]
fn vertex_expansion_and_mixing() {
    let g = build_psl2(7, DEFAULT_ORDER_CAP).unwrap();
    let (ct, tab) = setup(&g);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for c in 1..ct.len() {
        let spec = CayleySpec::new(&g, NormalSubset::from_classes(&ct, &[c]).unwrap().set().clone()).unwrap();
        let rec = check_vertex_expansion(&spec, &ct, &tab, &Subset::identity(168)).unwrap();
        assert_eq!(rec.status, Status::Pass);
        let rec = check_vertex_expansion(&spec, &ct, &tab, &Subset::full(168)).unwrap();
        assert_eq!(rec.status, Status::Pass);
        assert!((rec.rhs - 168.0).abs() < 1e-9);
        for _ in 0..40 {
            let a = Subset::random_nonempty(168, &mut rng);
            let b = Subset::random_nonempty(168, &mut rng);
            assert_eq!(check_vertex_expansion(&spec, &ct, &tab, &b).unwrap().status, Status::Pass);
            assert_eq!(mixing_discrepancy(&spec, &ct, &tab, &a, &b).unwrap().status, Status::Pass);
        }
        let rec = mixing_discrepancy(&spec, &ct, &tab, &Subset::full(168), &Subset::random_nonempty(168, &mut rng))
            .unwrap();
        assert!(rec.lhs.abs() < 1e-12);
        let rec = mixing_discrepancy(&spec, &ct, &tab, &Subset::full(168), &Subset::empty(168)).unwrap();
        assert_eq!((rec.lhs, rec.rhs), (0.0, 0.0));
    }
}

#[test]
fn non_normal_rejected_by_character_route() {
    let g = build_alternating(5, DEFAULT_ORDER_CAP).unwrap();
    let (ct, tab) = setup(&g);
    let spec = CayleySpec::new(&g, Subset::from_elements(60, [1, 2])).unwrap();
    assert!(!spec.is_normal());
    assert!(matches!(
        check_vertex_expansion(&spec, &ct, &tab, &Subset::identity(60)),
        Err(Error::NotNormal)
    ));
    let rep = spectral_report(&spec, &ct, &tab, DEFAULT_DENSE_CAP).unwrap();
    assert!(rep.lambda_char.is_none());
    assert!(rep.lambda_direct <= 1.0 + 1e-9);
}
