//! Dense univariate polynomials over `F_q`.

use std::cmp::Ordering;
use std::fmt;

use crate::field::{FqElement, FqField};

/// Coefficients low to high, no trailing zeros. The zero polynomial is empty.
///
/// Ordered by degree, then by coefficients from the top down (elements
/// compare zero first, then by logarithm).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<FqElement>);

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<FqElement>) -> Poly {
        while coeffs.last() == Some(&FqElement::Zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn one() -> Poly {
        Poly(vec![FqElement::ONE])
    }

    pub fn constant(c: FqElement) -> Poly {
        Poly::new(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Poly {
        Poly(vec![FqElement::Zero, FqElement::ONE])
    }

    /// `t + c`.
    pub fn linear(c: FqElement) -> Poly {
        Poly(vec![c, FqElement::ONE])
    }

    pub fn coeffs(&self) -> &[FqElement] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> FqElement {
        self.0.get(i).copied().unwrap_or(FqElement::Zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [FqElement::ONE]
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Degree, with `0` for the zero polynomial.
    pub fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn leading(&self) -> FqElement {
        self.0.last().copied().unwrap_or(FqElement::Zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FqElement::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    /// Dense index `Σ index(c_i) q^i` of a polynomial's non-leading part; the
    /// order of indices among monic polynomials of one degree equals [`Ord`].
    pub fn monic_index(&self, q: u64) -> u64 {
        self.0[..self.0.len() - 1]
            .iter()
            .rev()
            .fold(0, |acc, c| acc * q + c.index() as u64)
    }

    /// Inverse of [`monic_index`](Self::monic_index) for degree `d`.
    pub fn from_monic_index(mut index: u64, d: usize, q: u64) -> Poly {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(FqElement::from_index((index % q) as usize));
            index /= q;
        }
        c.push(FqElement::ONE);
        Poly(c)
    }

    pub fn display<'a>(&'a self, field: &'a FqField) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, field }
    }
}

/// Formats with prime-field integers when possible, e.g. `t^2 + 6`.
pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    field: &'a FqField,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let prime = self.field.degree() == 1;
        let mut first = true;
        for (i, &c) in self.poly.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if prime {
                self.field.code(c).to_string()
            } else {
                c.to_string()
            };
            let coeff = if prime { coeff } else { format!("({coeff})") };
            match (i, c == FqElement::ONE) {
                (0, _) => write!(f, "{coeff}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{coeff}*t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{coeff}*t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Polynomial arithmetic bound to a field.
#[derive(Clone, Copy)]
pub struct PolyRing<'a> {
    pub field: &'a FqField,
}

impl<'a> PolyRing<'a> {
    pub fn new(field: &'a FqField) -> Self {
        PolyRing { field }
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.0.len().max(b.0.len());
        Poly::new(
            (0..n)
                .map(|i| self.field.add(a.coeff(i), b.coeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        self.scale(a, self.field.minus_one())
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Poly, c: FqElement) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(a.0.iter().map(|&x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FqElement::Zero; a.0.len() + b.0.len() - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] = self.field.add(out[i + j], self.field.mul(x, y));
                }
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, a: &Poly, mut e: u64) -> Poly {
        let mut acc = Poly::one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        let db = b.degree().expect("division by the zero polynomial");
        if a.0.len() <= db {
            return (Poly::zero(), a.clone());
        }
        let inv = self.field.inv(b.leading()).expect("nonzero leading coefficient");
        let mut r = a.0.clone();
        let mut q = vec![FqElement::Zero; a.0.len() - db];
        for k in (db..r.len()).rev() {
            let c = r[k];
            if c.is_zero() {
                continue;
            }
            let f = self.field.mul(c, inv);
            q[k - db] = f;
            let nf = self.field.neg(f);
            for (i, &bi) in b.0.iter().enumerate() {
                if !bi.is_zero() {
                    r[k - db + i] = self.field.add(r[k - db + i], self.field.mul(nf, bi));
                }
            }
        }
        r.truncate(db);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, a: &Poly, b: &Poly) -> Poly {
        self.divrem(a, b).1
    }

    /// Exact quotient; debug-asserts a zero remainder.
    pub fn div_exact(&self, a: &Poly, b: &Poly) -> Poly {
        let (q, r) = self.divrem(a, b);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Splits off the leading coefficient: `a = c · monic`.
    pub fn monic(&self, a: &Poly) -> (FqElement, Poly) {
        let c = a.leading();
        if c.is_zero() {
            return (FqElement::Zero, Poly::zero());
        }
        let inv = self.field.inv(c).expect("nonzero");
        (c, self.scale(a, inv))
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x).1
    }

    /// `(g, s)` with `g = gcd(a, b)` monic and `s·a ≡ g (mod b)`.
    pub fn gcd_with_cofactor(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        let (c, g) = self.monic(&r0);
        if c.is_zero() {
            return (Poly::zero(), Poly::zero());
        }
        let inv = self.field.inv(c).expect("nonzero");
        (g, self.scale(&s0, inv))
    }

    /// Inverse of `a` modulo `m`, if it exists.
    pub fn inverse_mod(&self, a: &Poly, m: &Poly) -> Option<Poly> {
        let (g, s) = self.gcd_with_cofactor(&self.rem(a, m), m);
        g.is_one().then(|| self.rem(&s, m))
    }

    pub fn mulmod(&self, a: &Poly, b: &Poly, m: &Poly) -> Poly {
        self.rem(&self.mul(a, b), m)
    }

    pub fn powmod(&self, a: &Poly, mut e: u64, m: &Poly) -> Poly {
        let mut acc = self.rem(&Poly::one(), m);
        let mut base = self.rem(a, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(&acc, &base, m);
            }
            e >>= 1;
            if e > 0 {
                base = self.mulmod(&base, &base, m);
            }
        }
        acc
    }

    pub fn derivative(&self, a: &Poly) -> Poly {
        Poly::new(
            a.0.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.field.mul(c, self.field.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, a: &Poly, x: FqElement) -> FqElement {
        a.0.iter()
            .rev()
            .fold(FqElement::Zero, |acc, &c| self.field.add(self.field.mul(acc, x), c))
    }

    /// `Π_{a(α) = 0} b(α)` for monic `a`: the norm of `b mod a` from
    /// `F_q[t]/(a)` down to `F_q` when `a` is irreducible.
    ///
    /// Euclid-style: with `b = c·b̃` (`b̃` monic of degree `k`, `deg a = n`),
    /// `N_a(b) = c^n (-1)^{nk} N_{b̃}(a mod b̃)`.
    pub fn norm(&self, a: &Poly, b: &Poly) -> FqElement {
        debug_assert!(a.is_monic());
        let f = self.field;
        let mut acc = FqElement::ONE;
        let (mut a, mut b) = (a.clone(), self.rem(b, a));
        loop {
            let n = a.deg() as i64;
            if n == 0 {
                return acc;
            }
            if b.is_zero() {
                return FqElement::Zero;
            }
            let (c, monic) = self.monic(&b);
            let k = monic.deg() as i64;
            acc = f.mul(acc, f.pow(c, n).expect("nonzero"));
            if (n * k) % 2 == 1 {
                acc = f.neg(acc);
            }
            if k == 0 {
                return acc;
            }
            let r = self.rem(&a, &monic);
            a = monic;
            b = r;
        }
    }

    /// `c_0 + c_1 t + ...` from prime-field integers.
    pub fn from_ints(&self, coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| self.field.from_int(c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_reconstructs() {
        let f = FqField::new(7, 1).unwrap();
        let r = PolyRing::new(&f);
        let a = r.from_ints(&[3, 0, 5, 1, 2]);
        let b = r.from_ints(&[1, 4, 1]);
        let (q, rem) = r.divrem(&a, &b);
        assert_eq!(r.add(&r.mul(&q, &b), &rem), a);
        assert!(rem.deg() < 2);
    }

    #[test]
    fn ordering_is_degree_then_top_down() {
        let f = FqField::new(7, 1).unwrap();
        let r = PolyRing::new(&f);
        let mut v = vec![r.from_ints(&[0, 0, 1]), r.from_ints(&[5, 1]), r.from_ints(&[1, 1])];
        v.sort();
        assert_eq!(v[2].deg(), 2);
        for p in &v {
            assert_eq!(Poly::from_monic_index(p.monic_index(7), p.deg(), 7), *p);
        }
    }

    #[test]
    fn norm_matches_table_field() {
        // F_49 = F_7[t]/(t^2+1): polynomial norms against the table norm.
        let k = FqField::new(7, 1).unwrap();
        let l = FqField::new(7, 2).unwrap();
        let r = PolyRing::new(&k);
        let pi = r.from_ints(&[1, 0, 1]);
        for c0 in 0..7 {
            for c1 in 0..7 {
                if c0 == 0 && c1 == 0 {
                    continue;
                }
                let u = r.from_ints(&[c0, c1]);
                let code = (c0 + 7 * c1) as u64;
                let table = l.norm(&k, l.from_code(code).unwrap()).unwrap();
                assert_eq!(r.norm(&pi, &u), table, "u = {c0} + {c1} t");
            }
        }
    }

    #[test]
    fn inverse_mod_irreducible() {
        let f = FqField::new(5, 1).unwrap();
        let r = PolyRing::new(&f);
        let m = r.from_ints(&[2, 0, 1]);
        let a = r.from_ints(&[3, 4]);
        let inv = r.inverse_mod(&a, &m).unwrap();
        assert!(r.mulmod(&a, &inv, &m).is_one());
    }
}
