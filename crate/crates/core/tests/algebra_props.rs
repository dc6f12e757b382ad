use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use unramified::algebra::{smith_normal_form, IntMatrix, ModMatrix, Presentation, Submodule, ZmHom, ZmModule};

fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-15i64..=15, c), r))
}

fn to_int(rows: &[Vec<i64>]) -> IntMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntMatrix::from_i64(&refs)
}

fn mod_vectors(n: usize, m: u64, max: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
    prop::collection::vec(prop::collection::vec(0..m, n), 0..max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_diagonal_and_divisible(rows in int_matrix()) {
        let a = to_int(&rows);
        let snf = smith_normal_form(&a);
        let d = snf.left.mul(&a).unwrap().mul(&snf.right).unwrap();
        for r in 0..a.rows() {
            for c in 0..a.cols() {
                let expected = if r == c && r < snf.factors.len() { snf.factors[r].clone() } else { BigInt::zero() };
                prop_assert_eq!(&d.row(r)[c], &expected);
            }
        }
        prop_assert!(snf.factors.iter().all(|f| f.is_positive()));
        prop_assert!(snf.factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        prop_assert!(snf.left.determinant().unwrap().abs().is_one());
        prop_assert!(snf.right.determinant().unwrap().abs().is_one());
    }

    #[test]
    fn square_smith_product_is_determinant(n in 1usize..5, seed in prop::collection::vec(-9i64..=9, 16)) {
        let rows: Vec<Vec<i64>> = (0..n).map(|i| seed[i * 4..i * 4 + n].to_vec()).collect();
        let a = to_int(&rows);
        let det = a.determinant().unwrap().abs();
        let snf = smith_normal_form(&a);
        let product: BigInt = if snf.factors.len() == n { snf.factors.iter().product() } else { BigInt::zero() };
        prop_assert_eq!(product, det);
    }

    #[test]
    fn submodule_cardinalities(m in 2u64..=12, a in mod_vectors(3, 12, 4), b in mod_vectors(3, 12, 4)) {
        let a = Submodule::from_generators(3, m, a);
        let b = Submodule::from_generators(3, m, b);
        let inter = a.intersect(&b);
        let sum = a.sum(&b);
        prop_assert_eq!(inter.cardinality() * sum.cardinality(), a.cardinality() * b.cardinality());
        prop_assert!(inter.is_subset_of(&a) && inter.is_subset_of(&b));
        prop_assert!(a.is_subset_of(&sum) && b.is_subset_of(&sum));
        let q = sum.quotient(&a).unwrap();
        prop_assert_eq!(q.order(), sum.quotient_order(&a));
    }

    #[test]
    fn reduce_and_coordinates(m in 2u64..=12, gens in mod_vectors(4, 12, 5), v in prop::collection::vec(0u64..12, 4)) {
        let s = Submodule::from_generators(4, m, gens);
        let v: Vec<u64> = v.into_iter().map(|x| x % m).collect();
        let (rem, _) = s.reduce(&v);
        let diff: Vec<u64> = v.iter().zip(&rem).map(|(a, b)| (a + m - b) % m).collect();
        prop_assert!(s.contains(&diff));
        prop_assert_eq!(s.contains(&v), rem.iter().all(|&x| x == 0));
        if let Some(c) = s.coordinates(&diff) {
            let mut back = vec![0i128; 4];
            for (row, &k) in s.basis().iter().zip(&c) {
                for (b, &x) in back.iter_mut().zip(row) {
                    *b += k * x as i128;
                }
            }
            let back: Vec<u64> = back.into_iter().map(|x| x.rem_euclid(m as i128) as u64).collect();
            prop_assert_eq!(back, diff);
        } else {
            prop_assert!(false, "difference must have coordinates");
        }
    }

    #[test]
    fn homomorphism_orders(m in 2u64..=12, entries in prop::collection::vec(0u64..12, 9)) {
        let rows: Vec<Vec<u64>> = entries.chunks(3).map(|c| c.iter().map(|x| x % m).collect()).collect();
        let matrix = ModMatrix::from_rows(3, m, &rows).unwrap();
        let f = ZmHom::new(ZmModule::free(3, m), ZmModule::free(3, m), matrix).unwrap();
        prop_assert_eq!(f.kernel_order() * f.image_order(), BigUint::from(m).pow(3));
        let square = f.compose(&f).unwrap();
        prop_assert!(square.image().is_subset_of(&f.image()));
    }

    #[test]
    fn diagonal_presentations_match_module_orders(m in 2u64..=30, k in 0usize..4) {
        let divisors: Vec<u64> = (1..=m).filter(|d| m % d == 0).collect();
        let factors: Vec<u64> = divisors.iter().rev().take(k).copied().collect();
        let p = Presentation::diagonal(m, &factors);
        let order: u64 = factors.iter().product();
        prop_assert_eq!(p.order(), Some(BigUint::from(order)));
        let k = factors.len();
        let module = ZmModule::new(k, m, (0..k).map(|i| {
            let mut r = vec![0u64; k];
            r[i] = factors[i] % m;
            r
        }).collect());
        prop_assert!(Presentation::from_module(&module).isomorphic(&p));
    }
}
