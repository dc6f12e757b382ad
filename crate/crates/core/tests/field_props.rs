use proptest::prelude::*;

use unramified::field::{units_mod_m, FqElement, FqField};

const ORDERS: [u64; 9] = [2, 3, 4, 5, 7, 8, 9, 16, 27];

fn element(q: u64) -> impl Strategy<Value = FqElement> {
    (0..q as usize).prop_map(FqElement::from_index)
}

fn field_and_elements() -> impl Strategy<Value = (u64, FqElement, FqElement, FqElement)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(|q| (Just(q), element(q), element(q), element(q)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn field_axioms((q, a, b, c) in field_and_elements()) {
        let f = FqField::of_order(q).unwrap();
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FqElement::ONE);
        }
    }

    #[test]
    fn logarithms_are_homomorphic((q, a, b, _c) in field_and_elements()) {
        let f = FqField::of_order(q).unwrap();
        prop_assume!(!a.is_zero() && !b.is_zero());
        let lhs = f.dlog(f.mul(a, b)).unwrap();
        let rhs = (f.dlog(a).unwrap() + f.dlog(b).unwrap()) % f.units();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(f.pow(a, f.units() as i64).unwrap(), FqElement::ONE);
    }

    #[test]
    fn frobenius_is_additive((q, a, b, _c) in field_and_elements()) {
        let f = FqField::of_order(q).unwrap();
        let p = f.characteristic() as i64;
        let frob = |x: FqElement| if x.is_zero() { x } else { f.pow(x, p).unwrap() };
        prop_assert_eq!(frob(f.add(a, b)), f.add(frob(a), frob(b)));
    }

    #[test]
    fn codes_round_trip((q, a, _b, _c) in field_and_elements()) {
        let f = FqField::of_order(q).unwrap();
        prop_assert_eq!(f.from_code(f.code(a)).unwrap(), a);
    }

    #[test]
    fn units_mod_m_counts_mth_power_classes(q in prop::sample::select(ORDERS.to_vec()), m in 1u64..10) {
        let f = FqField::of_order(q).unwrap();
        let powers: std::collections::BTreeSet<FqElement> =
            f.nonzero_elements().map(|x| f.pow(x, m as i64).unwrap()).collect();
        let classes = f.units() / powers.len() as u64;
        let order = units_mod_m(&f, m).unwrap().order().unwrap();
        prop_assert_eq!(order, num_bigint::BigUint::from(classes));
    }
}
