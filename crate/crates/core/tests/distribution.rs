use normexp_core::build::{build_alternating, build_psl2};
use normexp_core::distribution::{
    check_bnp_star, check_bnp_two_step, check_weighted_lambda, convolve, l2_dist_uniform, weighted_cayley_lambda,
    weighted_cayley_lambda_capped,
};
use normexp_core::group::DEFAULT_ORDER_CAP;
use normexp_core::growth::pab_exact;
use normexp_core::spectral::{lambda_direct, DEFAULT_DENSE_CAP};
use normexp_core::{CayleySpec, CharacterTable, ClassTable, Distribution, Error, NormalSubset, Status, Subset};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn close(a: &Distribution, b: &Distribution, tol: f64) -> bool {
    a.weights().iter().zip(b.weights()).all(|(x, y)| (x - y).abs() <= tol)
}

#[test]
fn convolution_with_uniform_is_uniform() {
    let g = build_alternating(5, DEFAULT_ORDER_CAP).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let u = Distribution::uniform(60);
    for _ in 0..10 {
        let y = Distribution::random_dense(60, &mut rng);
        assert!(close(&convolve(&g, &u, &y).unwrap(), &u, 1e-15));
        assert!(close(&convolve(&g, &y, &u).unwrap(), &u, 1e-15));
    }
    assert!(close(&Distribution::from_subset(&Subset::full(60)).unwrap(), &u, 0.0));
    assert!(matches!(convolve(&g, &Distribution::uniform(5), &u), Err(Error::DegreeMismatch { .. })));
}

#[test]
fn convolution_is_associative_distribution() {
    let g = build_psl2(7, DEFAULT_ORDER_CAP).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10 {
        let x = Distribution::random_dense(168, &mut rng);
        let y = Distribution::random_sparse(168, &mut rng);
        let z = Distribution::random_dense(168, &mut rng);
        let left = convolve(&g, &convolve(&g, &x, &y).unwrap(), &z).unwrap();
        let right = convolve(&g, &x, &convolve(&g, &y, &z).unwrap()).unwrap();
        assert!(close(&left, &right, 1e-10));
        assert!((left.total() - 1.0).abs() < 1e-12);
        assert!(left.weights().iter().all(|&w| w >= 0.0));
    }
}

#[test]
fn convolution_of_indicators_is_pab() {
    let g = build_alternating(5, DEFAULT_ORDER_CAP).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let a = Subset::random_nonempty(60, &mut rng);
        let b = Subset::random_nonempty(60, &mut rng);
        let c = convolve(&g, &Distribution::from_subset(&a).unwrap(), &Distribution::from_subset(&b).unwrap())
            .unwrap();
        for h in 0..60 {
            let p = pab_exact(&g, &a, &b, h).unwrap().probability();
            assert!((c.weight(h) - p).abs() <= 1e-12);
        }
        let d = Distribution::from_subset(&b).unwrap();
        assert!((l2_dist_uniform(&d) - (1.0 / b.len() as f64 - 1.0 / 60.0).sqrt()).abs() < 1e-12);
    }
}

#[test]
fn bnp_star_examples() {
    let g = build_alternating(5, DEFAULT_ORDER_CAP).unwrap();
    let ct = ClassTable::compute(&g);
    let m = CharacterTable::compute(&g, &ct, 0).unwrap().min_nontrivial_degree().unwrap();
    assert_eq!(m, 3);
    let u = Distribution::uniform(60);
    let y = Distribution::point(60, 4);
    let rec = check_bnp_star(&g, m, &u, &y).unwrap();
    assert_eq!(rec.status, Status::Pass);
    assert!(rec.lhs < 1e-15 && rec.rhs < 1e-15);
    let rec = check_bnp_star(&g, m, &Distribution::point(60, 7), &y).unwrap();
    assert!((rec.lhs - (1.0f64 - 1.0 / 60.0).sqrt()).abs() < 1e-12);
    assert!((rec.rhs - 20f64.sqrt() * (1.0 - 1.0 / 60.0)).abs() < 1e-12);
    assert_eq!(rec.status, Status::Pass);
}

#[test]
fn bnp_star_random_psl27() {
    let g = build_psl2(7, DEFAULT_ORDER_CAP).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..100 {
        let (x, y) = if i % 2 == 0 {
            (Distribution::random_dense(168, &mut rng), Distribution::random_dense(168, &mut rng))
        } else {
            (Distribution::random_sparse(168, &mut rng), Distribution::random_sparse(168, &mut rng))
        };
        assert_eq!(check_bnp_star(&g, 3, &x, &y).unwrap().status, Status::Pass);
    }
}

#[test]
fn weighted_lambda_dominates_random_contractions() {
    let g = build_alternating(5, DEFAULT_ORDER_CAP).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let y = Distribution::random_sparse(60, &mut rng);
        let lambda = weighted_cayley_lambda(&g, &y).unwrap();
        assert_eq!(check_weighted_lambda(&g, 3, &y).unwrap().status, Status::Pass);
        for _ in 0..200 {
            let x = Distribution::random_dense(60, &mut rng);
            let ratio = l2_dist_uniform(&convolve(&g, &x, &y).unwrap()) / l2_dist_uniform(&x);
            assert!(ratio <= lambda + 1e-6);
        }
    }
    assert!(matches!(
        weighted_cayley_lambda_capped(&g, &Distribution::uniform(60), 10),
        Err(Error::CapExceeded { .. })
    ));
}

#[test]
fn class_indicator_matches_cayley_lambda() {
    let g = build_psl2(7, DEFAULT_ORDER_CAP).unwrap();
    let ct = ClassTable::compute(&g);
    for c in 1..ct.len() {
        let s = NormalSubset::from_classes(&ct, &[c]).unwrap();
        let wl = weighted_cayley_lambda(&g, &Distribution::from_subset(s.set()).unwrap()).unwrap();
        let ld = lambda_direct(&CayleySpec::new(&g, s.set().clone()).unwrap(), DEFAULT_DENSE_CAP).unwrap();
        assert!((wl - ld).abs() <= 1e-8);
    }
}

#[test]
fn bnp_two_step() {
    let g = build_alternating(5, DEFAULT_ORDER_CAP).unwrap();
    let full = Subset::full(60);
    let rec = check_bnp_two_step(&g, 3, &full, &full).unwrap();
    assert_eq!(rec.status, Status::Pass);
    assert!((rec.rhs - 45.0).abs() < 1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let a = Subset::random_nonempty(60, &mut rng);
        let b = Subset::random_nonempty(60, &mut rng);
        assert_eq!(check_bnp_two_step(&g, 3, &a, &b).unwrap().status, Status::Pass);
    }
    assert!(matches!(check_bnp_two_step(&g, 3, &Subset::empty(60), &full), Err(Error::EmptySubset)));
}

#[test]
fn uniform_weight_has_zero_lambda() {
    let g = build_alternating(5, DEFAULT_ORDER_CAP).unwrap();
    let u = Distribution::from_subset(&Subset::full(60)).unwrap();
    assert!(weighted_cayley_lambda(&g, &u).unwrap() < 1e-13);
    assert_eq!(check_weighted_lambda(&g, 3, &u).unwrap().status, Status::Pass);
    let point = Distribution::point(60, 0);
    assert!((weighted_cayley_lambda(&g, &point).unwrap() - 1.0).abs() < 1e-12);
}
