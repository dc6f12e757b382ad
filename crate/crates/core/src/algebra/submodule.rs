//! Submodules of free Z/m-modules and finitely presented Z/m-modules.
//!
//! A submodule `S ⊆ (Z/m)^n` is stored as the Hermite basis of its preimage
//! lattice `Λ ⊆ Z^n` (which always contains `mZ^n`). Row `i` has its pivot in
//! column `i`, the pivot `h_i` divides `m` (a pivot equal to `m` is stored as
//! `m`, not 0), and entries right of a pivot column `k` lie in `[0, h_k)`.
//! The basis is canonical, so equality of submodules is equality of bases.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::zmod::{ext_gcd, mod_reduce, quotient_invariants};
use crate::error::{Error, Result};

/// Dense matrix over Z/m acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModMatrix {
    pub rows: usize,
    pub cols: usize,
    pub m: u64,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize, m: u64) -> Self {
        ModMatrix {
            rows,
            cols,
            m,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, m: u64) -> Self {
        let mut out = Self::zeros(n, n, m);
        for i in 0..n {
            out.set(i, i, 1);
        }
        out
    }

    pub fn from_rows(cols: usize, m: u64, rows: &[Vec<u64>]) -> Result<Self> {
        let mut out = Self::zeros(rows.len(), cols, m);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            for (j, &v) in r.iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    /// Builds from signed entries, reducing modulo `m`.
    pub fn from_signed(cols: usize, m: u64, rows: &[Vec<i64>]) -> Result<Self> {
        let reduced: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| mod_reduce(x as i128, m)).collect())
            .collect();
        Self::from_rows(cols, m, &reduced)
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.m;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let m = self.m as u128;
        (0..self.rows)
            .map(|i| {
                let s: u128 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u128 * (b % self.m) as u128)
                    .sum();
                (s % m) as u64
            })
            .collect()
    }

    pub fn mul(&self, other: &ModMatrix) -> Result<ModMatrix> {
        if self.cols != other.rows || self.m != other.m {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} (mod {}) by {}x{} (mod {})",
                self.rows, self.cols, self.m, other.rows, other.cols, other.m
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols, self.m);
        for j in 0..other.cols {
            let col = self.apply(&other.column(j));
            for (i, v) in col.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    pub fn negated(&self) -> ModMatrix {
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v = (self.m - *v % self.m) % self.m;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v % self.m == 0)
    }
}

/// A submodule of `(Z/m)^n` in canonical Hermite form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Submodule {
    n: usize,
    m: u64,
    rows: Vec<Vec<u64>>,
}

impl Submodule {
    pub fn from_generators<I>(n: usize, m: u64, gens: I) -> Self
    where
        I: IntoIterator<Item = Vec<u64>>,
    {
        let mut pool: Vec<Vec<u64>> = gens
            .into_iter()
            .map(|g| {
                assert_eq!(g.len(), n, "generator length mismatch");
                g.into_iter().map(|x| x % m).collect::<Vec<u64>>()
            })
            .filter(|g| g.iter().any(|&x| x != 0))
            .collect();
        let mut rows = Vec::with_capacity(n);
        for col in 0..n {
            let mut pivot = vec![0u64; n];
            pivot[col] = m;
            let mut rest = Vec::with_capacity(pool.len() + 1);
            for r in pool.drain(..) {
                if r[col] == 0 {
                    rest.push(r);
                    continue;
                }
                let (p, a) = (pivot[col] as i128, r[col] as i128);
                let (g, s, t) = ext_gcd(p, a);
                let (pg, ag) = (p / g, a / g);
                let mut new_pivot = vec![0u64; n];
                let mut new_r = vec![0u64; n];
                new_pivot[col] = g as u64;
                for k in col + 1..n {
                    let (x, y) = (pivot[k] as i128, r[k] as i128);
                    new_pivot[k] = mod_reduce(s * x + t * y, m);
                    new_r[k] = mod_reduce(ag * x - pg * y, m);
                }
                pivot = new_pivot;
                if new_r.iter().any(|&x| x != 0) {
                    rest.push(new_r);
                }
            }
            let h = pivot[col];
            if h < m {
                // (m/h) * pivot vanishes in this column but not necessarily beyond.
                let f = (m / h) as i128;
                let extra: Vec<u64> = (0..n)
                    .map(|k| if k <= col { 0 } else { mod_reduce(f * pivot[k] as i128, m) })
                    .collect();
                if extra.iter().any(|&x| x != 0) {
                    rest.push(extra);
                }
            }
            rows.push(pivot);
            pool = rest;
        }
        debug_assert!(pool.is_empty());
        // Reduce entries above each pivot.
        for k in 0..n {
            let h = rows[k][k];
            for i in 0..k {
                let q = rows[i][k] / h;
                if q == 0 {
                    continue;
                }
                let (head, tail) = rows.split_at_mut(k);
                let target = &mut head[i];
                let source = &tail[0];
                target[k] -= q * h;
                for j in k + 1..n {
                    target[j] = mod_reduce(target[j] as i128 - q as i128 * source[j] as i128, m);
                }
            }
        }
        Submodule { n, m, rows }
    }

    pub fn zero(n: usize, m: u64) -> Self {
        Self::from_generators(n, m, std::iter::empty())
    }

    pub fn full(n: usize, m: u64) -> Self {
        Self::from_generators(n, m, (0..n).map(|i| unit_vector(n, i)))
    }

    /// Span of the standard basis vectors listed in `indices`.
    pub fn coordinate(n: usize, m: u64, indices: impl IntoIterator<Item = usize>) -> Self {
        Self::from_generators(n, m, indices.into_iter().map(|i| unit_vector(n, i)))
    }

    pub fn ambient_rank(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// Hermite basis rows (genuine lattice vectors; pivots may equal `m`).
    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.n).map(|i| self.rows[i][i])
    }

    /// Number of elements of the submodule.
    pub fn cardinality(&self) -> BigUint {
        self.pivots()
            .fold(BigUint::one(), |acc, h| acc * BigUint::from(self.m / h))
    }

    /// Order of `(Z/m)^n / self`.
    pub fn index(&self) -> BigUint {
        self.pivots().fold(BigUint::one(), |acc, h| acc * BigUint::from(h))
    }

    pub fn is_zero(&self) -> bool {
        self.pivots().all(|h| h == self.m)
    }

    pub fn is_full(&self) -> bool {
        self.pivots().all(|h| h == 1) || self.m == 1
    }

    /// Division by the basis: returns the remainder and the integer
    /// coefficients used. Entries of `v` may be in `[0, m]`.
    pub fn reduce(&self, v: &[u64]) -> (Vec<u64>, Vec<i128>) {
        assert_eq!(v.len(), self.n, "vector length mismatch");
        let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        let mut coeffs = vec![0i128; self.n];
        for col in 0..self.n {
            let h = self.rows[col][col] as i128;
            let c = w[col].div_euclid(h);
            if c != 0 {
                coeffs[col] = c;
                w[col] -= c * h;
                for k in col + 1..self.n {
                    w[k] = (w[k] - c * self.rows[col][k] as i128).rem_euclid(self.m as i128);
                }
            }
        }
        (w.into_iter().map(|x| x as u64 % self.m.max(1)).collect(), coeffs)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).0.iter().all(|&x| x == 0)
    }

    /// Coefficients of `v` in the basis, if `v` lies in the submodule.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<i128>> {
        let (rem, coeffs) = self.reduce(v);
        rem.iter().all(|&x| x == 0).then_some(coeffs)
    }

    pub fn is_subset_of(&self, other: &Submodule) -> bool {
        self.n == other.n && self.m == other.m && self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        assert_eq!((self.n, self.m), (other.n, other.m), "ambient mismatch");
        Self::from_generators(self.n, self.m, self.rows.iter().chain(&other.rows).cloned())
    }

    /// `A · self` inside `(Z/m)^{A.rows}`.
    pub fn image(&self, a: &ModMatrix) -> Submodule {
        assert_eq!(a.cols, self.n, "matrix does not act on this module");
        Self::from_generators(a.rows, self.m, self.rows.iter().map(|r| a.apply(r)))
    }

    /// `{x ∈ (Z/m)^n : A x ∈ target}`.
    pub fn preimage(a: &ModMatrix, target: &Submodule) -> Submodule {
        assert_eq!(a.rows, target.n, "matrix does not land in the target");
        let (np, n, m) = (a.rows, a.cols, target.m);
        let mut gens = Vec::with_capacity(n + np);
        for i in 0..n {
            let mut g = a.column(i);
            g.extend(unit_vector(n, i));
            gens.push(g);
        }
        for h in &target.rows {
            let mut g: Vec<u64> = h.clone();
            g.extend(std::iter::repeat_n(0, n));
            gens.push(g);
        }
        let aug = Self::from_generators(np + n, m, gens);
        Self::from_generators(n, m, aug.rows[np..].iter().map(|r| r[np..].to_vec()))
    }

    pub fn intersect(&self, other: &Submodule) -> Submodule {
        assert_eq!((self.n, self.m), (other.n, other.m), "ambient mismatch");
        let n = self.n;
        let mut gens = Vec::with_capacity(2 * n);
        for r in &self.rows {
            let mut g = r.clone();
            g.extend(r.iter().copied());
            gens.push(g);
        }
        for r in &other.rows {
            let mut g = r.clone();
            g.extend(std::iter::repeat_n(0, n));
            gens.push(g);
        }
        let aug = Self::from_generators(2 * n, self.m, gens);
        Self::from_generators(n, self.m, aug.rows[n..].iter().map(|r| r[n..].to_vec()))
    }

    /// Writes `v = x + y` with `x ∈ a`, `y ∈ b`, when possible.
    pub fn decompose(v: &[u64], a: &Submodule, b: &Submodule) -> Option<(Vec<u64>, Vec<u64>)> {
        let (n, m) = (a.n, a.m);
        let mut gens = Vec::with_capacity(2 * n);
        for r in &a.rows {
            let mut g = r.clone();
            g.extend(r.iter().copied());
            gens.push(g);
        }
        for r in &b.rows {
            let mut g = r.clone();
            g.extend(std::iter::repeat_n(0, n));
            gens.push(g);
        }
        let aug = Self::from_generators(2 * n, m, gens);
        let mut probe = v.to_vec();
        probe.extend(std::iter::repeat_n(0, n));
        let (rem, _) = aug.reduce(&probe);
        if rem[..n].iter().any(|&x| x != 0) {
            return None;
        }
        // probe - (α + β, α) = (0, -α)
        let x: Vec<u64> = rem[n..].iter().map(|&t| (m - t % m) % m).collect();
        let y: Vec<u64> = v.iter().zip(&x).map(|(&vi, &xi)| (vi + m - xi) % m).collect();
        Some((x, y))
    }

    /// Coefficients `c` with `Σ c_i gens_i = v`, when `v` is in their span.
    pub fn express(v: &[u64], gens: &[Vec<u64>], m: u64) -> Option<Vec<u64>> {
        let n = v.len();
        let k = gens.len();
        let rows = gens.iter().enumerate().map(|(i, g)| {
            let mut r = g.clone();
            r.extend(unit_vector(k, i));
            r
        });
        let aug = Self::from_generators(n + k, m, rows);
        let mut probe = v.to_vec();
        probe.extend(std::iter::repeat_n(0, k));
        let (rem, _) = aug.reduce(&probe);
        if rem[..n].iter().any(|&x| x != 0) {
            return None;
        }
        Some(rem[n..].iter().map(|&t| (m - t % m) % m).collect())
    }

    /// `self / sub` as a presented module on the basis of `self`.
    pub fn quotient(&self, sub: &Submodule) -> Result<ZmModule> {
        if !sub.is_subset_of(self) {
            return Err(Error::Invalid("quotient by a non-submodule".into()));
        }
        let m = self.m;
        let mut relations = Vec::with_capacity(2 * self.n);
        let probes = sub.rows.iter().cloned().chain((0..self.n).map(|k| {
            let mut e = vec![0u64; self.n];
            e[k] = m;
            e
        }));
        for probe in probes {
            let coeffs = self
                .coordinates(&probe)
                .expect("subset checked above");
            relations.push(coeffs.into_iter().map(|c| mod_reduce(c, m)).collect());
        }
        Ok(ZmModule::new(self.n, m, relations))
    }

    /// Order of `self / sub` (requires `sub ⊆ self`).
    pub fn quotient_order(&self, sub: &Submodule) -> BigUint {
        self.cardinality() / sub.cardinality()
    }
}

pub fn unit_vector(n: usize, i: usize) -> Vec<u64> {
    let mut e = vec![0u64; n];
    e[i] = 1;
    e
}

/// `(Z/m)^gens / relations`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZmModule {
    gens: usize,
    relations: Submodule,
}

impl ZmModule {
    pub fn new(gens: usize, m: u64, relations: Vec<Vec<u64>>) -> Self {
        ZmModule {
            gens,
            relations: Submodule::from_generators(gens, m, relations),
        }
    }

    pub fn from_relations(relations: Submodule) -> Self {
        ZmModule {
            gens: relations.n,
            relations,
        }
    }

    pub fn free(gens: usize, m: u64) -> Self {
        Self::new(gens, m, Vec::new())
    }

    pub fn generators(&self) -> usize {
        self.gens
    }

    pub fn modulus(&self) -> u64 {
        self.relations.m
    }

    pub fn relations(&self) -> &Submodule {
        &self.relations
    }

    pub fn order(&self) -> BigUint {
        self.relations.index()
    }

    pub fn is_trivial(&self) -> bool {
        self.relations.is_full()
    }

    /// Invariant factors (trivial ones dropped).
    pub fn invariant_factors(&self) -> Vec<u64> {
        let m = self.relations.m;
        let rows: Vec<Vec<u64>> = self
            .relations
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| x % m).collect())
            .collect();
        quotient_invariants(&rows, self.gens, m)
    }

    pub fn is_zero_element(&self, v: &[u64]) -> bool {
        self.relations.contains(v)
    }
}

/// A homomorphism between presented Z/m-modules, given on generators.
#[derive(Debug, Clone)]
pub struct ZmHom {
    pub source: ZmModule,
    pub target: ZmModule,
    pub matrix: ModMatrix,
}

impl ZmHom {
    pub fn new(source: ZmModule, target: ZmModule, matrix: ModMatrix) -> Result<Self> {
        if matrix.rows != target.gens || matrix.cols != source.gens {
            return Err(Error::DimensionMismatch(format!(
                "map is {}x{}, modules have {} -> {} generators",
                matrix.rows, matrix.cols, source.gens, target.gens
            )));
        }
        let hom = ZmHom {
            source,
            target,
            matrix,
        };
        if !hom.source.relations.image(&hom.matrix).is_subset_of(&hom.target.relations) {
            return Err(Error::Invalid("map does not respect relations".into()));
        }
        Ok(hom)
    }

    /// Image as a submodule of the target's generator space (contains its relations).
    pub fn image(&self) -> Submodule {
        let full = Submodule::full(self.source.gens, self.source.modulus());
        full.image(&self.matrix).sum(&self.target.relations)
    }

    /// Kernel as a submodule of the source's generator space (contains its relations).
    pub fn kernel(&self) -> Submodule {
        Submodule::preimage(&self.matrix, &self.target.relations)
    }

    pub fn image_order(&self) -> BigUint {
        self.image().quotient_order(&self.target.relations)
    }

    pub fn kernel_order(&self) -> BigUint {
        self.kernel().quotient_order(&self.source.relations)
    }

    pub fn is_zero(&self) -> bool {
        self.image() == self.target.relations
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_full()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel() == self.source.relations
    }

    pub fn compose(&self, after: &ZmHom) -> Result<ZmHom> {
        ZmHom::new(
            self.source.clone(),
            after.target.clone(),
            after.matrix.mul(&self.matrix)?,
        )
    }

    /// `ker(next) / im(self)` at the shared module.
    pub fn homology_with(&self, next: &ZmHom) -> Result<ZmModule> {
        let ker = next.kernel();
        let im = self.image();
        ker.quotient(&im)
    }

    /// Exact at the shared module: composite zero and `|im self| = |ker next|`.
    pub fn exact_with(&self, next: &ZmHom) -> Result<bool> {
        let composite = self.compose(next)?;
        Ok(composite.is_zero()
            && self.image().quotient_order(&self.target.relations)
                == next.kernel().quotient_order(&next.source.relations))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_basis_of_two_in_z4() {
        let s = Submodule::from_generators(1, 4, vec![vec![2]]);
        assert_eq!(s.basis(), &[vec![2]]);
        assert_eq!(s.cardinality(), BigUint::from(2u32));
        assert_eq!(s.index(), BigUint::from(2u32));
    }

    #[test]
    fn howell_extra_rows_are_kept() {
        // (2, 1) in (Z/4)^2 generates {0, (2,1), (0,2), (2,3)}; the element
        // 2·(2,1) = (0,2) only shows up through the extra row.
        let s = Submodule::from_generators(2, 4, vec![vec![2, 1]]);
        assert_eq!(s.cardinality(), BigUint::from(4u32));
        assert!(s.contains(&[0, 2]));
        assert!(!s.contains(&[0, 1]));
        assert!(!s.contains(&[2, 0]));
    }

    #[test]
    fn kernel_and_image_of_doubling_on_z4() {
        let a = ModMatrix::from_rows(1, 4, &[vec![2]]).unwrap();
        let ker = Submodule::preimage(&a, &Submodule::zero(1, 4));
        assert_eq!(ker.basis(), &[vec![2]]);
        let im = Submodule::full(1, 4).image(&a);
        assert_eq!(im, ker);
    }

    #[test]
    fn quotient_needs_relations_from_m_multiples() {
        // 2Z/4Z inside Z/4 modulo zero is Z/2, not Z/4.
        let two = Submodule::from_generators(1, 4, vec![vec![2]]);
        let q = two.quotient(&Submodule::zero(1, 4)).unwrap();
        assert_eq!(q.invariant_factors(), vec![2]);
        assert_eq!(q.order(), BigUint::from(2u32));
    }

    #[test]
    fn intersection_and_sum_cardinalities() {
        let m = 12;
        let a = Submodule::from_generators(2, m, vec![vec![2, 0], vec![0, 3]]);
        let b = Submodule::from_generators(2, m, vec![vec![3, 0], vec![0, 2]]);
        let i = a.intersect(&b);
        let s = a.sum(&b);
        assert_eq!(
            i.cardinality() * s.cardinality(),
            a.cardinality() * b.cardinality()
        );
        assert!(i.is_subset_of(&a) && i.is_subset_of(&b));
        assert!(s.is_full());
    }

    #[test]
    fn decompose_and_express() {
        let m = 6;
        let a = Submodule::coordinate(3, m, [0]);
        let b = Submodule::from_generators(3, m, vec![vec![0, 2, 0]]);
        let (x, y) = Submodule::decompose(&[5, 4, 0], &a, &b).unwrap();
        assert!(a.contains(&x) && b.contains(&y));
        assert_eq!((x[0] + y[0]) % m, 5);
        assert!(Submodule::decompose(&[0, 1, 0], &a, &b).is_none());

        let gens = vec![vec![1, 2], vec![0, 3]];
        let c = Submodule::express(&[2, 1], &gens, m).unwrap();
        let back: Vec<u64> = (0..2)
            .map(|j| (c[0] * gens[0][j] + c[1] * gens[1][j]) % m)
            .collect();
        assert_eq!(back, vec![2, 1]);
    }

    #[test]
    fn modulus_one_is_degenerate_but_consistent() {
        let s = Submodule::from_generators(3, 1, vec![vec![1, 1, 1]]);
        assert!(s.is_full() && s.is_zero());
        assert_eq!(s.cardinality(), BigUint::one());
    }
}
