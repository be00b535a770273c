use std::sync::OnceLock;

use normexp_core::build::build_psl2;
use normexp_core::distribution::{check_bnp_star, convolve};
use normexp_core::growth::{check_2step, check_asymp};
use normexp_core::words::Word;
use normexp_core::{CharacterTable, ClassTable, Distribution, FiniteGroup, NormalSubset, Permutation, Status, Subset};
use proptest::prelude::*;

struct Fixture {
    g: FiniteGroup,
    ct: ClassTable,
    tab: CharacterTable,
}

fn psl27() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let g = build_psl2(7, 1000).unwrap();
        let ct = ClassTable::compute(&g);
        let tab = CharacterTable::compute(&g, &ct, 0).unwrap();
        Fixture { g, ct, tab }
    })
}

fn permutation(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn subset_of(n: usize) -> impl Strategy<Value = Subset> {
    proptest::collection::vec(0..n as u32, 1..n).prop_map(move |v| Subset::from_elements(n, v))
}

proptest! {
    #[test]
    fn permutations_compose_associatively(a in permutation(9), b in permutation(9), c in permutation(9)) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        prop_assert!(a.then(&a.inverse()).is_identity());
        let text = a.to_string();
        prop_assert_eq!(Permutation::parse_cycles(&text, 9).unwrap(), a);
    }

    #[test]
    fn words_reduce_and_print_stably(s in "[xyXY]{1,12}") {
        if let Ok(w) = s.parse::<Word>() {
            let again: Word = w.to_string().parse().unwrap();
            prop_assert_eq!(again.to_string(), w.to_string());
            let t = w.to_string();
            prop_assert!(!t.contains("xX") && !t.contains("Xx") && !t.contains("yY") && !t.contains("Yy"));
        }
    }

    #[test]
    fn two_step_holds_for_class_and_random_b(mask in 1u64..64, b in subset_of(168)) {
        let f = psl27();
        let a = NormalSubset::from_mask(&f.ct, mask);
        prop_assert_eq!(check_2step(&f.g, &f.tab, &a, &b).unwrap().status, Status::Pass);
    }

    #[test]
    fn asymp_holds_for_random_unions(ma in 1u64..64, mb in 1u64..64) {
        let f = psl27();
        let a = NormalSubset::from_mask(&f.ct, ma);
        let b = NormalSubset::from_mask(&f.ct, mb);
        for rec in check_asymp(&f.g, &f.ct, &f.tab, &a, &b).unwrap() {
            prop_assert_eq!(rec.status, Status::Pass);
        }
    }

    #[test]
    fn convolution_inequality(x in proptest::collection::vec(0.0f64..1.0, 168), y in subset_of(168)) {
        let f = psl27();
        prop_assume!(x.iter().sum::<f64>() > 0.0);
        let x = Distribution::from_weights(x).unwrap();
        let y = Distribution::from_subset(&y).unwrap();
        let xy = convolve(&f.g, &x, &y).unwrap();
        prop_assert!((xy.total() - 1.0).abs() < 1e-12);
        prop_assert_eq!(check_bnp_star(&f.g, 3, &x, &y).unwrap().status, Status::Pass);
    }
}
