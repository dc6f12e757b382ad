//! Units modulo m-th powers in iterated Laurent series fields
//! `L = F_q((t_1))...((t_r))`.
//!
//! An element is modelled as `t_1^{a_1}...t_r^{a_r} · w` with `w` a unit of
//! `F_q[t_1, ..., t_r] / (t_1^N, ..., t_r^N)`. For `p ∤ m` every 1-unit is an
//! m-th power (Newton iteration converges because `m` is invertible), so the
//! class of an element in `L^×/L^{×m}` is its valuation vector mod m and the
//! logarithm of its leading coefficient mod `gcd(m, q - 1)`:
//! `L^×/L^{×m} ≅ (Z/m)^r ⊕ Z/gcd(m, q - 1)`.

use rand::Rng;

use crate::algebra::zmod::gcd;
use crate::algebra::Presentation;
use crate::error::{Error, Result};
use crate::field::{FqElement, FqField};

pub const MIN_PRECISION: usize = 8;

#[derive(Debug, Clone)]
pub struct LaurentTower {
    base: FqField,
    r: usize,
    precision: usize,
}

/// `t^valuation · unit`, the unit truncated at `t_i^N` in every variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub valuation: Vec<i64>,
    /// Coefficient of `t^e` at index `Σ e_i N^i`; the constant term is nonzero.
    pub coeffs: Vec<FqElement>,
}

/// Class in `(Z/m)^r ⊕ Z/gcd(m, q - 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentClass {
    pub valuation: Vec<u64>,
    pub leading: u64,
}

impl LaurentTower {
    pub fn new(base: FqField, r: usize, precision: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::Invalid("a tower needs at least one Laurent layer".into()));
        }
        if precision < MIN_PRECISION {
            return Err(Error::Invalid(format!(
                "precision {precision} is below {MIN_PRECISION}"
            )));
        }
        if precision.checked_pow(r as u32).is_none_or(|s| s > 1 << 20) {
            return Err(Error::Invalid(format!("precision {precision}^{r} is too large")));
        }
        Ok(LaurentTower { base, r, precision })
    }

    pub fn base(&self) -> &FqField {
        &self.base
    }

    pub fn layers(&self) -> usize {
        self.r
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    fn size(&self) -> usize {
        self.precision.pow(self.r as u32)
    }

    fn exponents(&self, mut index: usize) -> Vec<usize> {
        (0..self.r)
            .map(|_| {
                let e = index % self.precision;
                index /= self.precision;
                e
            })
            .collect()
    }

    /// Index of `t^(a + b)`, or `None` when it is truncated away.
    fn add_index(&self, a: usize, b: usize) -> Option<usize> {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.r {
            let e = a % self.precision + b % self.precision;
            if e >= self.precision {
                return None;
            }
            out += e * scale;
            scale *= self.precision;
            a /= self.precision;
            b /= self.precision;
        }
        Some(out)
    }

    pub fn one(&self) -> TruncatedSeries {
        self.monomial(&vec![0; self.r], FqElement::ONE)
            .expect("one is a unit")
    }

    /// `c · t^valuation`.
    pub fn monomial(&self, valuation: &[i64], c: FqElement) -> Result<TruncatedSeries> {
        if c.is_zero() {
            return Err(Error::ZeroElement);
        }
        if valuation.len() != self.r {
            return Err(Error::DimensionMismatch(format!(
                "valuation has {} entries for {} layers",
                valuation.len(),
                self.r
            )));
        }
        let mut coeffs = vec![FqElement::Zero; self.size()];
        coeffs[0] = c;
        Ok(TruncatedSeries {
            valuation: valuation.to_vec(),
            coeffs,
        })
    }

    /// `t^valuation` times the unit with the given coefficients
    /// (`(exponents, coefficient)` pairs, exponents below the precision).
    pub fn series(
        &self,
        valuation: &[i64],
        terms: &[(Vec<usize>, FqElement)],
    ) -> Result<TruncatedSeries> {
        let mut out = self.monomial(valuation, FqElement::ONE)?;
        out.coeffs[0] = FqElement::Zero;
        for (e, c) in terms {
            if e.len() != self.r || e.iter().any(|&x| x >= self.precision) {
                return Err(Error::DimensionMismatch(format!("exponent {e:?} out of range")));
            }
            let idx = e.iter().rev().fold(0, |acc, &x| acc * self.precision + x);
            out.coeffs[idx] = self.base.add(out.coeffs[idx], *c);
        }
        if out.coeffs[0].is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(out)
    }

    pub fn mul(&self, a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
        let f = &self.base;
        let mut coeffs = vec![FqElement::Zero; self.size()];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                if let Some(k) = self.add_index(i, j) {
                    coeffs[k] = f.add(coeffs[k], f.mul(x, y));
                }
            }
        }
        TruncatedSeries {
            valuation: a.valuation.iter().zip(&b.valuation).map(|(x, y)| x + y).collect(),
            coeffs,
        }
    }

    fn scale(&self, a: &TruncatedSeries, c: FqElement) -> TruncatedSeries {
        TruncatedSeries {
            valuation: a.valuation.clone(),
            coeffs: a.coeffs.iter().map(|&x| self.base.mul(x, c)).collect(),
        }
    }

    fn sub_units(&self, a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries {
            valuation: a.valuation.clone(),
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| self.base.sub(x, y))
                .collect(),
        }
    }

    /// Inverse: `c^{-1} Σ_k (-y)^k` for `w = c(1 + y)`, `y` nilpotent.
    pub fn inv(&self, a: &TruncatedSeries) -> TruncatedSeries {
        let f = &self.base;
        let c_inv = f.inv(a.coeffs[0]).expect("unit");
        let normalized = self.scale(a, c_inv);
        let mut minus_y = self.scale(&normalized, f.minus_one());
        minus_y.coeffs[0] = FqElement::Zero;
        let mut term = self.one();
        let mut acc = self.one();
        // (-y)^k vanishes once k exceeds r(N - 1).
        for _ in 0..self.r * (self.precision - 1) {
            term = self.mul(&term, &minus_y);
            if term.coeffs.iter().all(|c| c.is_zero()) {
                break;
            }
            for (s, t) in acc.coeffs.iter_mut().zip(&term.coeffs) {
                *s = f.add(*s, *t);
            }
        }
        let mut out = self.scale(&acc, c_inv);
        out.valuation = a.valuation.iter().map(|v| -v).collect();
        out
    }

    pub fn pow(&self, a: &TruncatedSeries, e: i64) -> TruncatedSeries {
        let base = if e < 0 { self.inv(a) } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    pub fn is_one_unit(&self, u: &TruncatedSeries) -> bool {
        u.valuation.iter().all(|&v| v == 0) && u.coeffs[0] == FqElement::ONE
    }

    fn check_modulus(&self, m: u64) -> Result<()> {
        let p = self.base.characteristic();
        if m == 0 {
            return Err(Error::Invalid("modulus must be positive".into()));
        }
        if m % p == 0 {
            return Err(Error::CharDividesModulus { p, m });
        }
        Ok(())
    }

    /// `v` with `v^m = u` exactly at the working precision, by Newton
    /// iteration `v ← v + (u v^{1-m} - v)/m` from `v = 1`.
    pub fn hensel_mth_root(&self, u: &TruncatedSeries, m: u64) -> Result<TruncatedSeries> {
        self.check_modulus(m)?;
        if !self.is_one_unit(u) {
            return Err(Error::NotAOneUnit);
        }
        let f = &self.base;
        let inv_m = f.inv(f.from_int((m % f.characteristic()) as i64))?;
        let mut v = self.one();
        // Quadratic convergence in the total-degree filtration.
        let bound = 2 * (usize::BITS - (self.r * self.precision).leading_zeros()) as usize + 2;
        for _ in 0..bound {
            let correction = self.mul(u, &self.pow(&v, 1 - m as i64));
            let step = self.scale(&self.sub_units(&correction, &v), inv_m);
            if step.coeffs.iter().all(|c| c.is_zero()) {
                break;
            }
            for (s, t) in v.coeffs.iter_mut().zip(&step.coeffs) {
                *s = f.add(*s, *t);
            }
        }
        if self.pow(&v, m as i64) != *u {
            return Err(Error::Invalid("Newton iteration did not converge".into()));
        }
        Ok(v)
    }

    /// Class of `x` in `L^×/L^{×m}`.
    pub fn class(&self, x: &TruncatedSeries, m: u64) -> Result<LaurentClass> {
        self.check_modulus(m)?;
        let g = gcd(m, self.base.units());
        Ok(LaurentClass {
            valuation: x
                .valuation
                .iter()
                .map(|&v| v.rem_euclid(m as i64) as u64)
                .collect(),
            leading: self.base.dlog(x.coeffs[0])? % g,
        })
    }

    /// `(Z/m)^r ⊕ Z/gcd(m, q - 1)`.
    pub fn units_mod_m(&self, m: u64) -> Result<Presentation> {
        self.check_modulus(m)?;
        let mut factors = vec![m; self.r];
        factors.push(gcd(m, self.base.units()));
        Ok(Presentation::diagonal(m, &factors))
    }

    /// Random element with valuations in `[-3, 3]` and dense random unit part.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> TruncatedSeries {
        let q = self.base.order() as usize;
        let valuation = (0..self.r).map(|_| rng.gen_range(-3..=3)).collect();
        let mut coeffs: Vec<FqElement> = (0..self.size())
            .map(|_| FqElement::from_index(rng.gen_range(0..q)))
            .collect();
        coeffs[0] = FqElement::Pow(rng.gen_range(0..self.base.units()) as u32);
        TruncatedSeries { valuation, coeffs }
    }

    /// Exponents of the nonzero coefficients, for display.
    pub fn support_of(&self, x: &TruncatedSeries) -> Vec<Vec<usize>> {
        x.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| self.exponents(i))
            .collect()
    }
}

/// `units_mod_m_order` for a tower over `F_q`: checks `p ∤ m`.
pub fn units_mod_m_order(q: u64, r: usize, m: u64) -> Result<Presentation> {
    LaurentTower::new(FqField::of_order(q)?, r, MIN_PRECISION)?.units_mod_m(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tower(q: u64, r: usize) -> LaurentTower {
        LaurentTower::new(FqField::of_order(q).unwrap(), r, 8).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(units_mod_m_order(7, 1, 2).unwrap().factors_u64(), vec![2, 2]);
        assert_eq!(units_mod_m_order(4, 2, 3).unwrap().factors_u64(), vec![3, 3, 3]);
        assert_eq!(units_mod_m_order(5, 1, 3).unwrap().factors_u64(), vec![3]);
        assert_eq!(
            units_mod_m_order(7, 1, 7).unwrap_err(),
            Error::CharDividesModulus { p: 7, m: 7 }
        );
    }

    #[test]
    fn square_root_of_one_plus_t() {
        let t = tower(7, 1);
        let u = t.series(&[0], &[(vec![0], FqElement::ONE), (vec![1], FqElement::ONE)]).unwrap();
        let v = t.hensel_mth_root(&u, 2).unwrap();
        assert_eq!(t.mul(&v, &v), u);
        assert_eq!(t.hensel_mth_root(&t.one(), 5).unwrap(), t.one());
        assert_eq!(t.hensel_mth_root(&u, 7).unwrap_err(), Error::CharDividesModulus { p: 7, m: 7 });
        let w = t.monomial(&[1], FqElement::ONE).unwrap();
        assert_eq!(t.hensel_mth_root(&w, 2).unwrap_err(), Error::NotAOneUnit);
    }

    #[test]
    fn roots_in_two_variables() {
        let t = tower(4, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let mut u = t.random_element(&mut rng);
            u.valuation = vec![0, 0];
            u.coeffs[0] = FqElement::ONE;
            let v = t.hensel_mth_root(&u, 3).unwrap();
            assert_eq!(t.pow(&v, 3), u);
        }
    }

    #[test]
    fn inverse() {
        let t = tower(5, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x = t.random_element(&mut rng);
        let y = t.inv(&x);
        assert_eq!(t.mul(&x, &y), t.one());
    }
}
