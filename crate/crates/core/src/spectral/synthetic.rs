//! Seeded random filtered complexes.
//!
//! A complex is assembled from elementary cells: a single basis vector with
//! zero differential, or a pair `e -> s·e'` with `level(e') >= level(e)`.
//! Each term is then changed by a random filtration-preserving automorphism,
//! so the differentials are dense but the spectral sequence is unchanged.

use rand::Rng;

use super::FilteredComplex;
use crate::algebra::zmod::{is_unit, mod_inverse, mod_mul};
use crate::algebra::ModMatrix;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SyntheticConfig {
    pub m: u64,
    /// Top degree `N`.
    pub length: usize,
    /// Upper bound for every rank.
    pub max_dim: usize,
    /// Upper bound for every level.
    pub max_level: usize,
    /// Cells at positions with `p > q` only come in same-level pairs with a
    /// unit coefficient, so `E_1` (hence `E_2`) vanishes there.
    pub vanish_above_diagonal: bool,
}

impl SyntheticConfig {
    pub fn new(m: u64) -> Self {
        SyntheticConfig {
            m,
            length: 5,
            max_dim: 6,
            max_level: 3,
            vanish_above_diagonal: false,
        }
    }
}

fn offending(level: usize, degree: usize) -> bool {
    level > degree - level.min(degree)
}

fn random_unit<R: Rng>(rng: &mut R, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    loop {
        let u = rng.gen_range(1..m);
        if is_unit(u, m) {
            return u;
        }
    }
}

pub fn synthetic<R: Rng>(rng: &mut R, config: SyntheticConfig) -> Result<FilteredComplex> {
    let SyntheticConfig {
        m,
        length,
        max_dim,
        max_level,
        vanish_above_diagonal,
    } = config;
    let mut levels: Vec<Vec<usize>> = vec![Vec::new(); length + 1];
    // (source, target, scalar) per degree.
    let mut pairs: Vec<Vec<(usize, usize, u64)>> = vec![Vec::new(); length + 1];
    for n in 0..=length {
        let top = n.min(max_level);
        let wanted = rng.gen_range(0..=max_dim).max(levels[n].len());
        let mut attempts = 0;
        while levels[n].len() < wanted && attempts < 8 * max_dim + 8 {
            attempts += 1;
            let p1 = rng.gen_range(0..=top);
            let pair = n < length && levels[n + 1].len() < max_dim && rng.gen_bool(0.6);
            if !pair {
                if vanish_above_diagonal && offending(p1, n) {
                    continue;
                }
                levels[n].push(p1);
                continue;
            }
            let p2 = rng.gen_range(p1..=(n + 1).min(max_level));
            let mut s = rng.gen_range(1..m.max(2)) % m;
            if vanish_above_diagonal && (offending(p1, n) || offending(p2, n + 1)) {
                if p2 != p1 {
                    continue;
                }
                s = random_unit(rng, m);
            }
            if s == 0 {
                continue;
            }
            levels[n].push(p1);
            levels[n + 1].push(p2);
            pairs[n].push((levels[n].len() - 1, levels[n + 1].len() - 1, s));
        }
    }
    let autos: Vec<(ModMatrix, ModMatrix)> = levels
        .iter()
        .map(|lv| {
            let a = random_filtered_automorphism(rng, lv, m);
            let inv = invert_filtered(&a, lv, m);
            (a, inv)
        })
        .collect();
    let mut differentials = Vec::with_capacity(length);
    for n in 0..length {
        let mut j = ModMatrix::zeros(levels[n + 1].len(), levels[n].len(), m);
        for &(src, tgt, s) in &pairs[n] {
            j.set(tgt, src, s);
        }
        differentials.push(autos[n + 1].0.mul(&j)?.mul(&autos[n].1)?);
    }
    FilteredComplex::new(m, differentials, levels)
}

/// Unit diagonal, arbitrary entries from lower to strictly higher levels.
fn random_filtered_automorphism<R: Rng>(rng: &mut R, levels: &[usize], m: u64) -> ModMatrix {
    let n = levels.len();
    let mut a = ModMatrix::zeros(n, n, m);
    for r in 0..n {
        for c in 0..n {
            if r == c {
                a.set(r, c, random_unit(rng, m));
            } else if levels[r] > levels[c] {
                a.set(r, c, rng.gen_range(0..m));
            }
        }
    }
    a
}

/// Inverse of a matrix shaped like [`random_filtered_automorphism`].
fn invert_filtered(a: &ModMatrix, levels: &[usize], m: u64) -> ModMatrix {
    let n = levels.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| levels[i]);
    let mut inv = ModMatrix::zeros(n, n, m);
    for col in 0..n {
        let mut x = vec![0u64; n];
        for &r in &order {
            let mut acc = u64::from(r == col) % m.max(1);
            for c in 0..n {
                if c != r && levels[c] < levels[r] {
                    acc = (acc + m - mod_mul(a.get(r, c), x[c], m)) % m;
                }
            }
            let d = mod_inverse(a.get(r, r), m).unwrap_or(0);
            x[r] = mod_mul(d, acc, m);
        }
        for (r, v) in x.into_iter().enumerate() {
            inv.set(r, col, v);
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn automorphism_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let levels = [2, 0, 1, 1, 0, 3];
        let a = random_filtered_automorphism(&mut rng, &levels, 12);
        let inv = invert_filtered(&a, &levels, 12);
        assert_eq!(a.mul(&inv).unwrap(), ModMatrix::identity(6, 12));
    }

    #[test]
    fn generated_complexes_are_valid_and_deterministic() {
        for seed in 0..20 {
            let mut config = SyntheticConfig::new(12);
            config.vanish_above_diagonal = seed % 2 == 0;
            let a = synthetic(&mut ChaCha8Rng::seed_from_u64(seed), config).unwrap();
            let b = synthetic(&mut ChaCha8Rng::seed_from_u64(seed), config).unwrap();
            assert_eq!(a, b);
            assert!(a.dims().iter().all(|&d| d <= 6));
            if config.vanish_above_diagonal {
                let seq = a.four_term_sequence().unwrap();
                assert!(seq.is_exact(), "seed {seed}");
            }
            assert!(a.convergence_holds().unwrap(), "seed {seed}");
        }
    }
}
