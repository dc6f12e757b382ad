use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use unramified::spectral::{synthetic, FilteredComplex, SyntheticConfig};

fn complex(seed: u64, m: u64, hypothesis: bool, max_level: usize) -> FilteredComplex {
    let mut config = SyntheticConfig::new(m);
    config.vanish_above_diagonal = hypothesis;
    config.max_level = max_level;
    synthetic(&mut ChaCha8Rng::seed_from_u64(seed), config).unwrap()
}

fn moduli() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 4, 5, 6, 8, 9, 12])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn pages_are_homology_of_previous_pages(seed in any::<u64>(), m in moduli()) {
        let f = complex(seed, m, false, 3);
        for r in 1..=3 {
            prop_assert!(f.page_recursion_holds(r).unwrap(), "r = {}", r);
        }
    }

    #[test]
    fn pages_stabilize(seed in any::<u64>(), m in moduli()) {
        let f = complex(seed, m, false, 3);
        let inf = f.infinity_page();
        prop_assert_eq!(f.page(inf).unwrap().summary(), f.page(inf + 1).unwrap().summary());
    }

    #[test]
    fn infinity_page_counts_cohomology(seed in any::<u64>(), m in moduli(), hypothesis in any::<bool>()) {
        prop_assert!(complex(seed, m, hypothesis, 3).convergence_holds().unwrap());
    }

    #[test]
    fn four_term_sequence_is_exact(seed in any::<u64>(), m in moduli()) {
        let f = complex(seed, m, true, 3);
        prop_assert!(f.vanishing_profile(3).unwrap());
        prop_assert!(f.four_term_sequence().unwrap().is_exact());
    }

    #[test]
    fn edge_image_is_infinity_entry(seed in any::<u64>(), m in moduli()) {
        let f = complex(seed, m, false, 3);
        let e_inf = f.page(f.infinity_page()).unwrap();
        for n in 0..=f.length() as i64 {
            let edge = f.edge_map(n).unwrap();
            prop_assert_eq!(edge.image_order(), e_inf.entries[&(0, n)].module.order());
        }
    }

    #[test]
    fn two_columns_degenerate_at_two(seed in any::<u64>(), m in moduli()) {
        let f = complex(seed, m, false, 1);
        prop_assert_eq!(f.page(2).unwrap().summary(), f.page(f.infinity_page()).unwrap().summary());
        for n in 0..=f.length() as i64 {
            prop_assert!(f.edge_map(n).unwrap().is_surjective());
        }
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), m in moduli()) {
        let f = complex(seed, m, false, 3);
        prop_assert_eq!(FilteredComplex::from_json(&f.to_json()).unwrap(), f);
    }
}
