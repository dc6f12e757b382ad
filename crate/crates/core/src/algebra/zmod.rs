//! Word-sized arithmetic in Z/m and diagonalization over the ring Z/m.

/// Greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn mod_reduce(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

pub fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = ext_gcd(a as i128, m as i128);
    (g == 1).then(|| mod_reduce(x, m))
}

pub fn is_unit(a: u64, m: u64) -> bool {
    gcd(a % m, m) == 1
}

/// A unit `u` of Z/m with `u * a ≡ gcd(a, m) (mod m)`.
pub fn normalizing_unit(a: u64, m: u64) -> u64 {
    let g = gcd(a, m);
    if g == 0 || g == m {
        return 1 % m.max(1);
    }
    let step = m / g;
    let base = mod_inverse((a / g) % step, step).expect("coprime after dividing out gcd");
    let mut u = base;
    while gcd(u, m) != 1 {
        u += step;
    }
    u % m
}

/// Invariant factors of `(Z/m)^cols / rowspace(rows)`, in divisibility order,
/// with trivial factors dropped. Factor `m` stands for a free Z/m summand.
pub fn quotient_invariants(rows: &[Vec<u64>], cols: usize, m: u64) -> Vec<u64> {
    if m == 1 {
        return Vec::new();
    }
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "row length mismatch");
            r.iter().map(|x| x % m).collect()
        })
        .filter(|r: &Vec<u64>| r.iter().any(|&x| x != 0))
        .collect();
    let pivots = diagonalize(&mut a, cols, m);
    // Columns without a pivot are free Z/m summands.
    let mut out: Vec<u64> = pivots.iter().copied().filter(|&d| d != 1).collect();
    out.extend(std::iter::repeat_n(m, cols - pivots.len()));
    out.sort_unstable();
    out
}

/// Diagonal entries of a Smith-style form of `rows` over Z/m, each
/// normalized to a divisor of `m` (units become 1, zero diagonal omitted).
pub fn diagonal_pivots(rows: &[Vec<u64>], cols: usize, m: u64) -> Vec<u64> {
    if m == 1 {
        return Vec::new();
    }
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x % m).collect())
        .filter(|r: &Vec<u64>| r.iter().any(|&x| x != 0))
        .collect();
    diagonalize(&mut a, cols, m)
}

/// Smith-style diagonalization over Z/m. Returns the pivots, each a proper
/// divisor of `m` normalized to `gcd(pivot, m)`.
fn diagonalize(a: &mut [Vec<u64>], cols: usize, m: u64) -> Vec<u64> {
    let rows = a.len();
    let mut pivots = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // Pivot: smallest gcd with m, ties row-major.
            let mut best: Option<(u64, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &v) in row.iter().enumerate().skip(t) {
                    if v == 0 {
                        continue;
                    }
                    let g = gcd(v, m);
                    if best.is_none_or(|(b, _, _)| g < b) {
                        best = Some((g, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                return pivots;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let u = normalizing_unit(a[t][t], m);
            for x in a[t].iter_mut() {
                *x = mod_mul(*x, u, m);
            }
            let g = a[t][t];

            let mut clean = true;
            for i in t + 1..rows {
                let v = a[i][t];
                if v == 0 {
                    continue;
                }
                if v % g == 0 {
                    let q = v / g;
                    for j in t..cols {
                        a[i][j] = mod_reduce(a[i][j] as i128 - (q as i128) * (a[t][j] as i128), m);
                    }
                } else {
                    bezout_rows(a, t, i, m);
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let v = a[t][j];
                if v == 0 {
                    continue;
                }
                if v % a[t][t] == 0 {
                    let q = v / a[t][t];
                    for row in a.iter_mut() {
                        row[j] = mod_reduce(row[j] as i128 - (q as i128) * (row[t] as i128), m);
                    }
                } else {
                    bezout_cols(a, t, j, m);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let g = a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % g != 0));
            match bad {
                Some(i) => {
                    for j in 0..cols {
                        a[t][j] = (a[t][j] + a[i][j]) % m;
                    }
                }
                None => {
                    pivots.push(g);
                    break;
                }
            }
        }
    }
    pivots
}

/// Replaces rows `t`, `i` by a unimodular combination putting
/// `gcd(a[t][t], a[i][t])` at `(t, t)` and zero at `(i, t)`.
fn bezout_rows(a: &mut [Vec<u64>], t: usize, i: usize, m: u64) {
    let (x0, y0) = (a[t][t] as i128, a[i][t] as i128);
    let (g, s, r) = ext_gcd(x0, y0);
    let (p, q) = (x0 / g, y0 / g);
    for j in 0..a[t].len() {
        let (u, v) = (a[t][j] as i128, a[i][j] as i128);
        a[t][j] = mod_reduce(s * u + r * v, m);
        a[i][j] = mod_reduce(-q * u + p * v, m);
    }
}

fn bezout_cols(a: &mut [Vec<u64>], t: usize, j: usize, m: u64) {
    let (x0, y0) = (a[t][t] as i128, a[t][j] as i128);
    let (g, s, r) = ext_gcd(x0, y0);
    let (p, q) = (x0 / g, y0 / g);
    for row in a.iter_mut() {
        let (u, v) = (row[t] as i128, row[j] as i128);
        row[t] = mod_reduce(s * u + r * v, m);
        row[j] = mod_reduce(-q * u + p * v, m);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizing_unit_hits_gcd() {
        for m in 2..40u64 {
            for a in 0..m {
                let u = normalizing_unit(a, m);
                assert!(is_unit(u, m), "u={u} m={m}");
                assert_eq!(mod_mul(u, a, m), gcd(a, m) % m);
            }
        }
    }

    #[test]
    fn quotient_examples() {
        assert!(quotient_invariants(&[vec![2], vec![3]], 1, 6).is_empty());
        assert_eq!(quotient_invariants(&[vec![2]], 1, 6), vec![2]);
        assert_eq!(quotient_invariants(&[], 2, 4), vec![4, 4]);
        // Z/2 + Z/3 = Z/6 inside (Z/12)^2.
        assert_eq!(quotient_invariants(&[vec![2, 0], vec![0, 3]], 2, 12), vec![6]);
        assert!(quotient_invariants(&[vec![5, 1]], 2, 1).is_empty());
    }
}
