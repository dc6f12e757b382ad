use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use unramified::field::FqField;
use unramified::function_field::PlaceTable;
use unramified::kato::{KatoComplex, SupportPolicy, unramified_with};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn differential_squares_to_zero(q in prop::sample::select(vec![3u64, 4, 5, 7, 9]), window in 0i64..=1, seed in any::<u64>()) {
        let field = FqField::of_order(q).unwrap();
        let table = PlaceTable::new(&field, 3);
        let full = KatoComplex::build_with(&field, &table, window, window, 3).unwrap();
        for m in (1..q).filter(|m| (q - 1) % m == 0) {
            let c = full.with_modulus(m).unwrap();
            let report = c.check_square_zero(seed, 20).unwrap();
            prop_assert_eq!(report.passed, 20, "q={} m={} failures {:?}", q, m, report.failures);
        }
    }

    #[test]
    fn coordinates_are_linear(q in prop::sample::select(vec![5u64, 7, 9]), seed in any::<u64>()) {
        let field = FqField::of_order(q).unwrap();
        let table = PlaceTable::new(&field, 3);
        let m = q - 1;
        for window in [0, 1] {
            let c = KatoComplex::build_with(&field, &table, window, window, 3).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = c.random_element(&mut rng);
            let y = c.random_element(&mut rng);
            let sum = c.coordinates(&x.add(&y).unwrap()).unwrap();
            let parts: Vec<u64> = c.coordinates(&x).unwrap().iter().zip(c.coordinates(&y).unwrap())
                .map(|(a, b)| (a + b) % m).collect();
            prop_assert_eq!(sum, parts);
        }
    }

    #[test]
    fn truncation_agrees_with_direct_build(q in prop::sample::select(vec![3u64, 5, 7]), d in 1usize..=3, window in 0i64..=1) {
        let field = FqField::of_order(q).unwrap();
        let table = PlaceTable::new(&field, 3);
        let full = KatoComplex::build_with(&field, &table, window, window, 3).unwrap();
        let direct = KatoComplex::build_with(&field, &table, window, window, d).unwrap();
        let cut = full.truncated(d);
        prop_assert_eq!(cut.differential().to_dense_rows(), direct.differential().to_dense_rows());
        prop_assert_eq!(cut.homology(1).unwrap().factors_u64(), direct.homology(1).unwrap().factors_u64());
    }
}

#[test]
fn h1_order_is_gcd_for_small_fields() {
    for q in [3u64, 4, 5, 7, 8, 9, 11] {
        let field = FqField::of_order(q).unwrap();
        let mut table = PlaceTable::new(&field, 0);
        for m in (1..q).filter(|m| (q - 1) % m == 0) {
            let g = unramified_with(&field, &mut table, m, 1, SupportPolicy::new(4)).unwrap();
            assert_eq!(g.order(), m, "q={q} m={m}");
            let h2 = unramified_with(&field, &mut table, m, 2, SupportPolicy::new(4)).unwrap();
            assert_eq!(h2.order(), 1, "q={q} m={m}");
        }
    }
}
