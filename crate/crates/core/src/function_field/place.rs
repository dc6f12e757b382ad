//! Enumeration of the places of the projective line up to a degree bound.

use super::poly::{Poly, PolyRing};
use super::rational::Place;
use crate::field::FqField;

/// Monic irreducibles of each degree `1..=max_degree`, in polynomial order.
#[derive(Debug, Clone)]
pub struct PlaceTable {
    max_degree: usize,
    by_degree: Vec<Vec<Poly>>,
}

impl PlaceTable {
    pub fn new(field: &FqField, max_degree: usize) -> PlaceTable {
        let mut table = PlaceTable {
            max_degree: 0,
            by_degree: vec![Vec::new()],
        };
        table.extend_to(field, max_degree);
        table
    }

    /// Sieve: a monic polynomial of degree `k` is composite exactly when it is
    /// an irreducible of degree `j <= k/2` times a monic polynomial of degree `k - j`.
    pub fn extend_to(&mut self, field: &FqField, max_degree: usize) {
        let q = field.order();
        let ring = PolyRing::new(field);
        for k in self.max_degree + 1..=max_degree {
            let count = q.pow(k as u32) as usize;
            let mut composite = vec![false; count];
            for j in 1..=k / 2 {
                let cofactors = q.pow((k - j) as u32);
                for p in &self.by_degree[j] {
                    for idx in 0..cofactors {
                        let g = Poly::from_monic_index(idx, k - j, q);
                        composite[ring.mul(p, &g).monic_index(q) as usize] = true;
                    }
                }
            }
            let irreducible = composite
                .iter()
                .enumerate()
                .filter(|(_, &c)| !c)
                .map(|(i, _)| Poly::from_monic_index(i as u64, k, q))
                .collect();
            self.by_degree.push(irreducible);
            self.max_degree = k;
        }
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Monic irreducibles of degree exactly `d` (empty beyond the bound).
    pub fn of_degree(&self, d: usize) -> &[Poly] {
        self.by_degree.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn count_up_to(&self, d: usize) -> usize {
        (1..=d.min(self.max_degree)).map(|k| self.by_degree[k].len()).sum()
    }

    /// Infinity followed by every finite place of degree `<= d`, sorted.
    pub fn support(&self, d: usize) -> Vec<Place> {
        assert!(d <= self.max_degree, "degree bound exceeds the table");
        let mut out = Vec::with_capacity(1 + self.count_up_to(d));
        out.push(Place::Infinity);
        for k in 1..=d {
            out.extend(self.by_degree[k].iter().cloned().map(Place::Finite));
        }
        out
    }
}

/// Number of monic irreducibles of degree `n` over `F_q`, by Möbius inversion.
pub fn irreducible_count(q: u64, n: u32) -> u64 {
    let mut total: i128 = 0;
    for d in 1..=n {
        if n % d == 0 {
            total += mobius(n / d) as i128 * (q as i128).pow(d);
        }
    }
    (total / n as i128) as u64
}

fn mobius(mut n: u32) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_necklace_formula() {
        for (p, d, max) in [(7u64, 1u32, 3usize), (2, 1, 6), (3, 2, 3), (5, 1, 4)] {
            let f = FqField::new(p, d).unwrap();
            let table = PlaceTable::new(&f, max);
            for k in 1..=max {
                assert_eq!(table.of_degree(k).len() as u64, irreducible_count(f.order(), k as u32));
            }
        }
    }

    #[test]
    fn f7_up_to_two() {
        let f = FqField::new(7, 1).unwrap();
        let table = PlaceTable::new(&f, 2);
        assert_eq!(table.count_up_to(2), 7 + 21);
        let ring = PolyRing::new(&f);
        for p in table.of_degree(2) {
            assert!(ring.is_irreducible(p));
        }
        let s = table.support(2);
        assert_eq!(s[0], Place::Infinity);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
    }
}
