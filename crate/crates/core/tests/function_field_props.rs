use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use unramified::field::FqField;
use unramified::function_field::random::{random_function, random_steinberg_pair, random_symbol};
use unramified::function_field::{
    is_unramified, parse_function, reciprocity_defect, residue, MilnorClass, Place, RationalFunction,
};

/// `(q, m)` with `m | q - 1`.
const POINTS: [(u64, u64); 8] = [(5, 4), (5, 2), (7, 6), (7, 3), (9, 8), (9, 4), (13, 12), (4, 3)];

fn point_and_seed() -> impl Strategy<Value = ((u64, u64), u64)> {
    (prop::sample::select(POINTS.to_vec()), any::<u64>())
}

fn places_of(fs: &[&RationalFunction]) -> Vec<Place> {
    let mut places: Vec<Place> = fs.iter().flat_map(|f| f.support()).collect();
    places.push(Place::Infinity);
    places.sort();
    places.dedup();
    places
}

fn residue_value(field: &FqField, x: &MilnorClass, v: &Place) -> u64 {
    residue(field, x, v).unwrap().value(field)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn residue_is_bilinear(((q, m), seed) in point_and_seed()) {
        let field = FqField::of_order(q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, g, h) = (random_function(&field, &mut rng), random_function(&field, &mut rng), random_function(&field, &mut rng));
        let fg = f.mul(&field, &g);
        for v in places_of(&[&f, &g, &h]) {
            let lhs = residue_value(&field, &MilnorClass::symbol(m, vec![fg.clone(), h.clone()]), &v);
            let a = residue_value(&field, &MilnorClass::symbol(m, vec![f.clone(), h.clone()]), &v);
            let b = residue_value(&field, &MilnorClass::symbol(m, vec![g.clone(), h.clone()]), &v);
            prop_assert_eq!(lhs, (a + b) % m);
        }
    }

    #[test]
    fn residue_is_antisymmetric(((q, m), seed) in point_and_seed()) {
        let field = FqField::of_order(q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, g) = (random_function(&field, &mut rng), random_function(&field, &mut rng));
        for v in places_of(&[&f, &g]) {
            let a = residue_value(&field, &MilnorClass::symbol(m, vec![f.clone(), g.clone()]), &v);
            let b = residue_value(&field, &MilnorClass::symbol(m, vec![g.clone(), f.clone()]), &v);
            prop_assert_eq!((a + b) % m, 0);
        }
    }

    #[test]
    fn reciprocity_in_degrees_one_and_two(((q, m), seed) in point_and_seed(), n in 1usize..=2) {
        let field = FqField::of_order(q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_symbol(&field, &mut rng, n, m);
        let mut places: Vec<Place> = x.support().into_iter().collect();
        places.push(Place::Infinity);
        places.dedup();
        prop_assert_eq!(reciprocity_defect(&field, &x, &places).unwrap().value, 0);
    }

    #[test]
    fn steinberg_symbols_are_unramified(((q, m), seed) in point_and_seed()) {
        let field = FqField::of_order(q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, g) = random_steinberg_pair(&field, &mut rng, 3);
        prop_assert!(is_unramified(&field, &MilnorClass::symbol(m, vec![f, g])).unwrap());
    }

    #[test]
    fn unit_symbols_are_unramified_at_unit_places(((q, m), seed) in point_and_seed()) {
        let field = FqField::of_order(q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, g) = (random_function(&field, &mut rng), random_function(&field, &mut rng));
        let x = MilnorClass::symbol(m, vec![f.clone(), g.clone()]);
        let support = places_of(&[&f, &g]);
        // The first finite place of degree 4 lies outside every random support.
        let outside = unramified::function_field::PlaceTable::new(&field, 4).of_degree(4)[0].clone();
        let v = Place::Finite(outside);
        prop_assert!(!support.contains(&v));
        prop_assert_eq!(residue_value(&field, &x, &v), 0);
    }

    #[test]
    fn functions_print_and_parse(((q, _m), seed) in point_and_seed()) {
        let field = FqField::of_order(q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_function(&field, &mut rng);
        let text = f.display(&field).to_string();
        prop_assert_eq!(parse_function(&field, &text).unwrap(), f);
    }

    #[test]
    fn symbols_round_trip_through_json(((q, m), seed) in point_and_seed()) {
        let field = FqField::of_order(q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_symbol(&field, &mut rng, 2, m).add(&random_symbol(&field, &mut rng, 2, m)).unwrap();
        let back = MilnorClass::from_json(&field, &x.to_json(&field)).unwrap();
        prop_assert_eq!(back, x);
    }
}
