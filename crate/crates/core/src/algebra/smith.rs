//! Smith normal form over Z.
//!
//! Pivots are chosen deterministically: the entry of smallest absolute value
//! in the active submatrix, ties broken row-major. The same input therefore
//! always produces the same transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `left * input * right = diag(factors, 0, ...)` with `left`, `right` unimodular.
#[derive(Debug, Clone)]
pub struct SmithForm {
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub factors: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    /// Inverse of `right`; kept for kernel/image coordinate changes.
    pub right_inverse: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

pub fn smith_normal_form(input: &IntMatrix) -> SmithForm {
    let (rows, cols) = (input.rows(), input.cols());
    let mut a = input.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let mut right_inv = IntMatrix::identity(cols);
    let mut factors = Vec::new();

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_entry(&a, t) else {
            break;
        };
        move_pivot(&mut a, &mut left, &mut right, &mut right_inv, t, pi, pj);

        loop {
            // Clear column t below the pivot and row t right of it.
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, t)] / &a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                if !a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&a[(t, j)] / &a[(t, t)]);
                col_op(&mut a, &mut right, &mut right_inv, j, t, &q);
                if !a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // Some remainder is now smaller than the pivot, so this strictly
                // decreases the pivot's absolute value.
                let (pi, pj) = smallest_entry(&a, t).expect("nonzero remainder");
                move_pivot(&mut a, &mut left, &mut right, &mut right_inv, t, pi, pj);
                continue;
            }
            // Pivot must divide the rest of the active block.
            let bad = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)]))
            });
            match bad {
                Some(i) => {
                    a.add_row_multiple(t, i, &BigInt::one());
                    left.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }

        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
        factors.push(a[(t, t)].clone());
    }

    SmithForm {
        factors,
        left,
        right,
        right_inverse: right_inv,
    }
}

/// `col[target] += q * col[source]` on the working matrix, mirrored on the
/// right transform and (as the inverse row operation) on its inverse.
fn col_op(
    a: &mut IntMatrix,
    right: &mut IntMatrix,
    right_inv: &mut IntMatrix,
    target: usize,
    source: usize,
    q: &BigInt,
) {
    a.add_col_multiple(target, source, q);
    right.add_col_multiple(target, source, q);
    right_inv.add_row_multiple(source, target, &-q);
}

fn move_pivot(
    a: &mut IntMatrix,
    left: &mut IntMatrix,
    right: &mut IntMatrix,
    right_inv: &mut IntMatrix,
    t: usize,
    pi: usize,
    pj: usize,
) {
    a.swap_rows(t, pi);
    left.swap_rows(t, pi);
    a.swap_cols(t, pj);
    right.swap_cols(t, pj);
    right_inv.swap_rows(t, pj);
}

fn smallest_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            if best.as_ref().is_none_or(|(b, _, _)| abs < *b) {
                best = Some((abs, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(rows: usize, cols: usize, factors: &[BigInt]) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, f) in factors.iter().enumerate() {
            d[(i, i)] = f.clone();
        }
        d
    }

    fn check(m: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        let lmr = s.left.mul(m).unwrap().mul(&s.right).unwrap();
        assert_eq!(lmr, diag(m.rows(), m.cols(), &s.factors));
        assert_eq!(
            s.right.mul(&s.right_inverse).unwrap(),
            IntMatrix::identity(m.cols())
        );
        assert!(s.left.determinant().unwrap().abs().is_one());
        for w in s.factors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_three() {
        assert_eq!(check(&IntMatrix::identity(3)).factors, ints(&[1, 1, 1]));
    }

    #[test]
    fn zero_one_by_one() {
        assert!(check(&IntMatrix::from_i64(&[&[0]])).factors.is_empty());
    }

    #[test]
    fn two_by_two_example() {
        // gcd of entries is 2 and |det| = 8, so the factors are 2 and 4.
        let m = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        assert_eq!(check(&m).factors, ints(&[2, 4]));
    }

    #[test]
    fn empty_shapes() {
        assert!(check(&IntMatrix::zeros(0, 3)).factors.is_empty());
        assert!(check(&IntMatrix::zeros(2, 0)).factors.is_empty());
    }

    #[test]
    fn non_coprime_diagonal_is_rebalanced() {
        let m = IntMatrix::from_i64(&[&[4, 0], &[0, 6]]);
        assert_eq!(check(&m).factors, ints(&[2, 12]));
    }

    #[test]
    fn deterministic() {
        let m = IntMatrix::from_i64(&[&[3, -7, 12], &[5, 1, 0], &[-9, 4, 22]]);
        let a = smith_normal_form(&m);
        let b = smith_normal_form(&m);
        assert_eq!(a.left, b.left);
        assert_eq!(a.right, b.right);
    }
}
