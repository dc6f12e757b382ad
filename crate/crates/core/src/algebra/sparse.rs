//! Sparse matrices over Z/m and kernel/cokernel structure by elimination.
//!
//! Unit pivots are removed first (singleton rows and columns, then a
//! Markowitz-style search); whatever is left has no unit entries and is
//! handed to the dense diagonalization. Unit pivots change neither the kernel
//! nor the cokernel beyond dropping a trivial summand, so the invariant
//! factors of both are recovered exactly.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::One;

use super::zmod::{diagonal_pivots, is_unit, mod_inverse, mod_mul};

/// Column-major sparse matrix over Z/m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseModMatrix {
    rows: usize,
    m: u64,
    columns: Vec<Vec<(usize, u64)>>,
}

impl SparseModMatrix {
    pub fn new(rows: usize, m: u64) -> Self {
        SparseModMatrix {
            rows,
            m,
            columns: Vec::new(),
        }
    }

    /// Appends a column; repeated rows are summed, zeros dropped.
    pub fn push_column(&mut self, entries: impl IntoIterator<Item = (usize, u64)>) {
        let mut merged: BTreeMap<usize, u64> = BTreeMap::new();
        for (r, v) in entries {
            assert!(r < self.rows, "row {r} out of range");
            let e = merged.entry(r).or_insert(0);
            *e = (*e + v % self.m) % self.m;
        }
        self.columns
            .push(merged.into_iter().filter(|&(_, v)| v != 0).collect());
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn column(&self, j: usize) -> &[(usize, u64)] {
        &self.columns[j]
    }

    pub fn nonzeros(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.cols(), "vector length mismatch");
        let mut out = vec![0u64; self.rows];
        for (col, &xj) in self.columns.iter().zip(x) {
            if xj % self.m == 0 {
                continue;
            }
            for &(r, v) in col {
                out[r] = (out[r] + mod_mul(v, xj, self.m)) % self.m;
            }
        }
        out
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![0u64; self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                out[r][j] = v;
            }
        }
        out
    }
}

/// Diagonal shape of a matrix over Z/m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub m: u64,
    pub rows: usize,
    pub cols: usize,
    /// Number of unit pivots.
    pub unit_rank: usize,
    /// Non-unit nonzero pivots, each a proper divisor of `m`.
    pub pivots: Vec<u64>,
}

impl Reduction {
    fn free(&self, dim: usize) -> usize {
        dim - self.unit_rank - self.pivots.len()
    }

    /// Invariant factors of the kernel of the map `(Z/m)^cols -> (Z/m)^rows`.
    pub fn kernel_invariants(&self) -> Vec<u64> {
        self.assemble(self.free(self.cols))
    }

    /// Invariant factors of `(Z/m)^rows / image`.
    pub fn cokernel_invariants(&self) -> Vec<u64> {
        self.assemble(self.free(self.rows))
    }

    fn assemble(&self, free: usize) -> Vec<u64> {
        if self.m == 1 {
            return Vec::new();
        }
        let mut out = self.pivots.clone();
        out.extend(std::iter::repeat_n(self.m, free));
        out.sort_unstable();
        out
    }

    pub fn image_order(&self) -> BigUint {
        let m = BigUint::from(self.m);
        let mut acc = m.pow(self.unit_rank as u32);
        for &d in &self.pivots {
            acc *= BigUint::from(self.m / d);
        }
        acc
    }

    pub fn kernel_order(&self) -> BigUint {
        self.kernel_invariants()
            .iter()
            .fold(BigUint::one(), |acc, &d| acc * BigUint::from(d))
    }
}

pub fn reduce(a: &SparseModMatrix) -> Reduction {
    let m = a.m;
    let (nr, nc) = (a.rows, a.cols());
    if m == 1 {
        return Reduction {
            m,
            rows: nr,
            cols: nc,
            unit_rank: 0,
            pivots: Vec::new(),
        };
    }
    let mut row_lists: Vec<Vec<(usize, u64)>> = vec![Vec::new(); nr];
    for (j, col) in a.columns.iter().enumerate() {
        for &(r, v) in col {
            row_lists[r].push((j, v));
        }
    }
    let mut row_alive = vec![true; nr];
    let mut col_alive = vec![true; nc];
    let mut row_count: Vec<usize> = row_lists.iter().map(Vec::len).collect();
    let mut col_count: Vec<usize> = a.columns.iter().map(Vec::len).collect();
    let mut unit_rank = 0;

    // Singleton phase: no fill-in, so entries never change.
    let mut rows_todo: Vec<usize> = (0..nr).filter(|&r| row_count[r] == 1).collect();
    let mut cols_todo: Vec<usize> = (0..nc).filter(|&c| col_count[c] == 1).collect();
    loop {
        let mut progressed = false;
        while let Some(r) = rows_todo.pop() {
            if !row_alive[r] || row_count[r] != 1 {
                continue;
            }
            let &(c, v) = row_lists[r]
                .iter()
                .find(|&&(c, _)| col_alive[c])
                .expect("one live entry");
            if !is_unit(v, m) {
                continue;
            }
            row_alive[r] = false;
            col_alive[c] = false;
            unit_rank += 1;
            progressed = true;
            for &(r2, _) in &a.columns[c] {
                if row_alive[r2] {
                    row_count[r2] -= 1;
                    if row_count[r2] == 1 {
                        rows_todo.push(r2);
                    }
                }
            }
        }
        while let Some(c) = cols_todo.pop() {
            if !col_alive[c] || col_count[c] != 1 {
                continue;
            }
            let &(r, v) = a.columns[c]
                .iter()
                .find(|&&(r, _)| row_alive[r])
                .expect("one live entry");
            if !is_unit(v, m) {
                continue;
            }
            row_alive[r] = false;
            col_alive[c] = false;
            unit_rank += 1;
            progressed = true;
            for &(c2, _) in &row_lists[r] {
                if col_alive[c2] {
                    col_count[c2] -= 1;
                    if col_count[c2] == 1 {
                        cols_todo.push(c2);
                    }
                }
            }
            for &(r2, _) in &a.columns[c] {
                if row_alive[r2] {
                    row_count[r2] -= 1;
                    if row_count[r2] == 1 {
                        rows_todo.push(r2);
                    }
                }
            }
        }
        if !progressed || (rows_todo.is_empty() && cols_todo.is_empty()) {
            break;
        }
    }

    // Residual with fill-in.
    let live_rows: Vec<usize> = (0..nr).filter(|&r| row_alive[r] && row_count[r] > 0).collect();
    let live_cols: Vec<usize> = (0..nc).filter(|&c| col_alive[c] && col_count[c] > 0).collect();
    let col_index: BTreeMap<usize, usize> =
        live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut rows: Vec<BTreeMap<usize, u64>> = live_rows
        .iter()
        .map(|&r| {
            row_lists[r]
                .iter()
                .filter_map(|&(c, v)| col_index.get(&c).map(|&i| (i, v)))
                .collect()
        })
        .collect();
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); live_cols.len()];
    for (i, row) in rows.iter().enumerate() {
        for &j in row.keys() {
            cols[j].insert(i);
        }
    }
    let mut alive_r = vec![true; rows.len()];
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            if !alive_r[i] {
                continue;
            }
            for (&j, &v) in row {
                if !is_unit(v, m) {
                    continue;
                }
                let cost = (row.len() - 1) * (cols[j].len() - 1);
                if best.is_none_or(|(b, _, _)| cost < b) {
                    best = Some((cost, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        let inv = mod_inverse(rows[pi][&pj], m).expect("unit pivot");
        let pivot_row = rows[pi].clone();
        let targets: Vec<usize> = cols[pj].iter().copied().filter(|&i| i != pi).collect();
        for i in targets {
            let f = mod_mul(rows[i][&pj], inv, m);
            for (&j, &v) in &pivot_row {
                let cur = rows[i].get(&j).copied().unwrap_or(0);
                let new = (cur + m - mod_mul(f, v, m)) % m;
                if new == 0 {
                    rows[i].remove(&j);
                    cols[j].remove(&i);
                } else {
                    rows[i].insert(j, new);
                    cols[j].insert(i);
                }
            }
        }
        for &j in pivot_row.keys() {
            cols[j].remove(&pi);
        }
        alive_r[pi] = false;
        rows[pi].clear();
        cols[pj].clear();
        unit_rank += 1;
    }

    let rest: Vec<usize> = (0..rows.len()).filter(|&i| alive_r[i] && !rows[i].is_empty()).collect();
    let rest_cols: Vec<usize> = (0..cols.len()).filter(|&j| !cols[j].is_empty()).collect();
    let local: BTreeMap<usize, usize> = rest_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let dense: Vec<Vec<u64>> = rest
        .iter()
        .map(|&i| {
            let mut r = vec![0u64; rest_cols.len()];
            for (&j, &v) in &rows[i] {
                r[local[&j]] = v;
            }
            r
        })
        .collect();
    let mut pivots = Vec::new();
    for d in diagonal_pivots(&dense, rest_cols.len(), m) {
        if d == 1 {
            unit_rank += 1;
        } else {
            pivots.push(d);
        }
    }
    pivots.sort_unstable();
    Reduction {
        m,
        rows: nr,
        cols: nc,
        unit_rank,
        pivots,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::zmod::quotient_invariants;

    fn from_dense(rows: &[Vec<u64>], m: u64) -> SparseModMatrix {
        let nc = rows.first().map_or(0, Vec::len);
        let mut a = SparseModMatrix::new(rows.len(), m);
        for j in 0..nc {
            a.push_column((0..rows.len()).map(|i| (i, rows[i][j])));
        }
        a
    }

    #[test]
    fn matches_dense_cokernel() {
        let rows = vec![vec![1, 2, 0, 3], vec![0, 2, 4, 0], vec![5, 0, 0, 6], vec![0, 0, 3, 0]];
        for m in [2u64, 4, 6, 12] {
            let a = from_dense(&rows, m);
            let red = reduce(&a);
            // Cokernel of A is the quotient by its column span: use transposed rows.
            let cols: Vec<Vec<u64>> = (0..4).map(|j| rows.iter().map(|r| r[j] % m).collect()).collect();
            assert_eq!(red.cokernel_invariants(), quotient_invariants(&cols, 4, m), "m={m}");
        }
    }

    #[test]
    fn kernel_of_divisor_like_map() {
        // Columns: constant (zero), then one per place with 1 at its row and -1 at row 0.
        let m = 6;
        let mut a = SparseModMatrix::new(4, m);
        a.push_column(std::iter::empty());
        for r in 1..4 {
            a.push_column([(r, 1), (0, m - 1)]);
        }
        let red = reduce(&a);
        assert_eq!(red.kernel_invariants(), vec![6]);
        assert_eq!(red.cokernel_invariants(), vec![6]);
    }

    #[test]
    fn modulus_one() {
        let a = from_dense(&[vec![0, 0]], 1);
        assert!(reduce(&a).kernel_invariants().is_empty());
    }
}
