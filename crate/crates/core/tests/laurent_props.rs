use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use unramified::field::FqField;
use unramified::laurent::{LaurentTower, TruncatedSeries};
use unramified::Error;

fn setup() -> impl Strategy<Value = (u64, usize, u64, u64)> {
    (prop::sample::select(vec![4u64, 5, 7, 9]), 1usize..=2, 1u64..=6, any::<u64>())
}

fn normalized(tower: &LaurentTower, x: &TruncatedSeries) -> TruncatedSeries {
    let f = tower.base();
    let lead = f.inv(x.coeffs[0]).unwrap();
    TruncatedSeries {
        valuation: vec![0; x.valuation.len()],
        coeffs: x.coeffs.iter().map(|&c| f.mul(lead, c)).collect(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn class_is_a_homomorphism((q, r, m, seed) in setup()) {
        let field = FqField::of_order(q).unwrap();
        prop_assume!(m % field.characteristic() != 0);
        let tower = LaurentTower::new(field.clone(), r, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (tower.random_element(&mut rng), tower.random_element(&mut rng));
        let (cx, cy) = (tower.class(&x, m).unwrap(), tower.class(&y, m).unwrap());
        let cxy = tower.class(&tower.mul(&x, &y), m).unwrap();
        let g = unramified::algebra::zmod::gcd(m, q - 1);
        prop_assert_eq!(cxy.leading, (cx.leading + cy.leading) % g);
        for k in 0..r {
            prop_assert_eq!(cxy.valuation[k], (cx.valuation[k] + cy.valuation[k]) % m);
        }
        let inv = tower.class(&tower.inv(&x), m).unwrap();
        prop_assert_eq!(inv.leading, (g - cx.leading) % g);
    }

    #[test]
    fn one_units_have_mth_roots((q, r, m, seed) in setup()) {
        let field = FqField::of_order(q).unwrap();
        prop_assume!(m % field.characteristic() != 0);
        let tower = LaurentTower::new(field, r, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = normalized(&tower, &tower.random_element(&mut rng));
        prop_assert!(tower.is_one_unit(&u));
        let v = tower.hensel_mth_root(&u, m).unwrap();
        prop_assert_eq!(tower.pow(&v, m as i64), u);
    }

    #[test]
    fn inverse_is_inverse((q, r, _m, seed) in setup()) {
        let tower = LaurentTower::new(FqField::of_order(q).unwrap(), r, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = tower.random_element(&mut rng);
        prop_assert_eq!(tower.mul(&x, &tower.inv(&x)), tower.one());
    }

    #[test]
    fn characteristic_moduli_are_rejected(q in prop::sample::select(vec![4u64, 5, 7, 9]), k in 1u64..4) {
        let field = FqField::of_order(q).unwrap();
        let p = field.characteristic();
        let tower = LaurentTower::new(field, 1, 8).unwrap();
        prop_assert_eq!(tower.units_mod_m(p * k).unwrap_err(), Error::CharDividesModulus { p, m: p * k });
        let one = tower.one();
        prop_assert!(tower.hensel_mth_root(&one, p * k).is_err());
    }
}
