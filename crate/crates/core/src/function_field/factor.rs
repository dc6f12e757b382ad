//! Factorization over `F_q`: square-free, distinct-degree, equal-degree.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{Poly, PolyRing};
use crate::field::FqElement;
use crate::error::{Error, Result};

/// Seed for the equal-degree splitting; the factor list is sorted afterwards,
/// so the seed affects running time only.
const SPLIT_SEED: u64 = 0x5eed_f00d;

/// `f = leading · Π factor^multiplicity`, factors monic irreducible, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub leading: FqElement,
    pub factors: Vec<(Poly, u32)>,
}

impl PolyRing<'_> {
    pub fn factor(&self, f: &Poly) -> Result<Factorization> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (leading, monic) = self.monic(f);
        let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
        let mut factors = Vec::new();
        for (g, e) in self.square_free(&monic) {
            for (h, d) in self.distinct_degree(&g) {
                for irr in self.equal_degree(&h, d, &mut rng) {
                    factors.push((irr, e));
                }
            }
        }
        factors.sort();
        // Square-free parts are coprime, but merge defensively.
        let mut merged: Vec<(Poly, u32)> = Vec::with_capacity(factors.len());
        for (p, e) in factors {
            match merged.last_mut() {
                Some((q, acc)) if *q == p => *acc += e,
                _ => merged.push((p, e)),
            }
        }
        Ok(Factorization {
            leading,
            factors: merged,
        })
    }

    pub fn is_irreducible(&self, f: &Poly) -> bool {
        match f.degree() {
            None | Some(0) => false,
            Some(1) => true,
            Some(d) => {
                let monic = self.monic(f).1;
                if !self.gcd(&monic, &self.derivative(&monic)).is_one() {
                    return false;
                }
                let dd = self.distinct_degree(&monic);
                dd.len() == 1 && dd[0].1 == d
            }
        }
    }

    /// Monic square-free parts with multiplicities.
    fn square_free(&self, f: &Poly) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        if f.deg() == 0 {
            return out;
        }
        let p = self.field.characteristic();
        let c = self.gcd(f, &self.derivative(f));
        let mut w = self.div_exact(f, &c);
        let mut c = c;
        let mut i = 1;
        while !w.is_one() {
            let y = self.gcd(&w, &c);
            let fac = self.div_exact(&w, &y);
            if !fac.is_one() {
                out.push((fac, i));
            }
            w = y;
            c = self.div_exact(&c, &w);
            i += 1;
        }
        if !c.is_one() {
            for (g, e) in self.square_free(&self.pth_root(&c)) {
                out.push((g, e * p as u32));
            }
        }
        out
    }

    /// For `c(t) = Σ a_i t^{ip}`, returns `Σ a_i^{1/p} t^i`.
    fn pth_root(&self, c: &Poly) -> Poly {
        let f = self.field;
        let p = f.characteristic() as usize;
        let n = f.units() as i128;
        let p_inv = crate::algebra::zmod::mod_inverse(p as u64 % n.max(1) as u64, n as u64)
            .unwrap_or(0) as i128;
        Poly::new(
            c.coeffs()
                .iter()
                .step_by(p)
                .map(|&a| match a {
                    FqElement::Zero => FqElement::Zero,
                    FqElement::Pow(k) => FqElement::Pow(((k as i128 * p_inv).rem_euclid(n.max(1))) as u32),
                })
                .collect(),
        )
    }

    /// Splits a monic square-free polynomial into products of irreducibles
    /// of equal degree, returned as `(product, degree)`.
    fn distinct_degree(&self, f: &Poly) -> Vec<(Poly, usize)> {
        let q = self.field.order();
        let mut out = Vec::new();
        let mut rest = f.clone();
        let x = Poly::t();
        let mut h = self.rem(&x, &rest);
        let mut i = 1;
        while rest.deg() >= 2 * i {
            h = self.powmod(&h, q, &rest);
            let g = self.gcd(&rest, &self.sub(&h, &x));
            if !g.is_one() {
                rest = self.div_exact(&rest, &g);
                h = self.rem(&h, &rest);
                out.push((g, i));
            }
            i += 1;
        }
        if rest.deg() > 0 {
            let d = rest.deg();
            out.push((rest, d));
        }
        out
    }

    /// Cantor–Zassenhaus splitting of a product of degree-`d` irreducibles.
    fn equal_degree(&self, f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
        if f.deg() == d {
            return vec![f.clone()];
        }
        let field = self.field;
        loop {
            let a = Poly::new(
                (0..f.deg())
                    .map(|_| FqElement::from_index(rng.gen_range(0..field.order() as usize)))
                    .collect(),
            );
            if a.deg() == 0 {
                continue;
            }
            let b = if field.characteristic() == 2 {
                // Absolute trace: a + a^2 + ... + a^(2^(kd - 1)) with q = 2^k.
                let steps = field.degree() as usize * d;
                let mut t = self.rem(&a, f);
                let mut s = t.clone();
                for _ in 1..steps {
                    t = self.mulmod(&t, &t, f);
                    s = self.add(&s, &t);
                }
                s
            } else {
                // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q-1)/2)
                let q = field.order();
                let mut frob = self.rem(&a, f);
                let mut acc = frob.clone();
                for _ in 1..d {
                    frob = self.powmod(&frob, q, f);
                    acc = self.mulmod(&acc, &frob, f);
                }
                let half = self.powmod(&acc, (q - 1) / 2, f);
                self.sub(&half, &Poly::one())
            };
            let g = self.gcd(f, &b);
            if g.deg() > 0 && g.deg() < f.deg() {
                let other = self.div_exact(f, &g);
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&other, d, rng));
                return out;
            }
        }
    }
}
