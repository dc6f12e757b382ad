//! Finite fields `F_{p^d}` with discrete-logarithm tables.
//!
//! Elements are stored as `Zero` or `Pow(k)` meaning `g^k` for the field's
//! fixed generator `g`. Field elements as polynomials over `F_p` appear only
//! while the tables are built, encoded as integers `Σ c_i p^i` ("codes").
//!
//! Choices, all deterministic:
//! - the modulus is the monic irreducible polynomial of degree `d` with the
//!   smallest code `Σ c_i p^i` (leading term included), so `F_49 = F_7[t]/(t^2+1)`;
//! - the generator is the element of smallest code with order `q - 1`.

use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::algebra::presentation::Presentation;
use crate::algebra::zmod::{gcd, mod_inverse};
use crate::algebra::{IntMatrix, Modulus};
use crate::error::{Error, Result};

/// Upper bound on `p^d` for table construction.
pub const TABLE_BOUND: u64 = 1 << 20;

/// A field element: zero, or a power of the generator with exponent in `[0, q-1)`.
///
/// The derived order puts zero first and then sorts by discrete logarithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FqElement {
    Zero,
    Pow(u32),
}

impl FqElement {
    pub const ONE: FqElement = FqElement::Pow(0);

    pub fn is_zero(self) -> bool {
        self == FqElement::Zero
    }

    /// `0` for zero, `1 + k` for `g^k`. Dense indexing used by enumerations.
    pub fn index(self) -> usize {
        match self {
            FqElement::Zero => 0,
            FqElement::Pow(k) => k as usize + 1,
        }
    }

    pub fn from_index(i: usize) -> FqElement {
        if i == 0 {
            FqElement::Zero
        } else {
            FqElement::Pow((i - 1) as u32)
        }
    }
}

impl fmt::Display for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FqElement::Zero => write!(f, "0"),
            FqElement::Pow(0) => write!(f, "1"),
            FqElement::Pow(k) => write!(f, "g^{k}"),
        }
    }
}

impl Serialize for FqElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(1))?;
        match self {
            FqElement::Zero => map.serialize_entry("zero", &true)?,
            FqElement::Pow(k) => map.serialize_entry("dlog", k)?,
        }
        map.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementRepr {
    dlog: Option<u32>,
    zero: Option<bool>,
}

impl<'de> Deserialize<'de> for FqElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match ElementRepr::deserialize(d)? {
            ElementRepr {
                dlog: Some(k),
                zero: None | Some(false),
            } => Ok(FqElement::Pow(k)),
            ElementRepr {
                dlog: None,
                zero: Some(true),
            } => Ok(FqElement::Zero),
            _ => Err(de::Error::custom("expected {\"dlog\":k} or {\"zero\":true}")),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `(p, d)` with `q = p^d`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let (mut d, mut x) = (0, q);
    while x > 1 {
        x /= p;
        d += 1;
    }
    Some((p, d))
}

/// The finite field of order `p^d` with its logarithm tables.
#[derive(Clone)]
pub struct FqField {
    p: u64,
    d: u32,
    q: u64,
    modulus: Vec<u64>,
    generator: u64,
    /// `exp[k]` is the code of `g^k`.
    exp: Vec<u32>,
    /// `log[code]` is the logarithm of a nonzero code.
    log: Vec<u32>,
    /// `zech[k]` is the index (`FqElement::index`) of `1 + g^k`.
    zech: Vec<u32>,
}

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}(modulus {:?}, generator code {})", self.q, self.modulus, self.generator)
    }
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.d == other.d
    }
}

impl Eq for FqField {}

impl FqField {
    pub fn new(p: u64, d: u32) -> Result<FqField> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if d == 0 {
            return Err(Error::Invalid("extension degree must be positive".into()));
        }
        let q = p
            .checked_pow(d)
            .filter(|&q| q <= TABLE_BOUND)
            .ok_or(Error::TooLarge { p, d })?;
        let modulus = smallest_irreducible(p, d as usize);
        let arith = CodeArith {
            p,
            modulus: &modulus,
        };
        let order = q - 1;
        let primes = prime_factors(order);
        let generator = (1..q)
            .find(|&c| {
                primes
                    .iter()
                    .all(|&r| arith.pow(c, order / r) != 1)
            })
            .expect("the multiplicative group is cyclic");

        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u64;
        for (k, slot) in exp.iter_mut().enumerate() {
            *slot = x as u32;
            log[x as usize] = k as u32;
            x = arith.mul(x, generator);
        }
        let zech = exp
            .iter()
            .map(|&code| {
                let c = code as u64;
                let plus_one = c - c % p + (c % p + 1) % p;
                if plus_one == 0 {
                    0
                } else {
                    log[plus_one as usize] + 1
                }
            })
            .collect();
        Ok(FqField {
            p,
            d,
            q,
            modulus,
            generator,
            exp,
            log,
            zech,
        })
    }

    /// Field of order `q`, which must be a prime power.
    pub fn of_order(q: u64) -> Result<FqField> {
        let (p, d) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, d)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// Order of the multiplicative group.
    pub fn units(&self) -> u64 {
        self.q - 1
    }

    /// Modulus coefficients over `F_p`, low to high.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Code `Σ c_i p^i` of the generator.
    pub fn generator_code(&self) -> u64 {
        self.generator
    }

    pub fn generator(&self) -> FqElement {
        FqElement::Pow(1 % self.units().max(1) as u32)
    }

    pub fn zero(&self) -> FqElement {
        FqElement::Zero
    }

    pub fn one(&self) -> FqElement {
        FqElement::ONE
    }

    pub fn minus_one(&self) -> FqElement {
        if self.p == 2 {
            FqElement::ONE
        } else {
            FqElement::Pow((self.units() / 2) as u32)
        }
    }

    /// Every element in index order (zero first, then `g^0, g^1, ...`).
    pub fn elements(&self) -> impl Iterator<Item = FqElement> {
        (0..self.q as usize).map(FqElement::from_index)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FqElement> {
        (0..self.units() as u32).map(FqElement::Pow)
    }

    pub fn code(&self, x: FqElement) -> u64 {
        match x {
            FqElement::Zero => 0,
            FqElement::Pow(k) => self.exp[k as usize] as u64,
        }
    }

    pub fn from_code(&self, code: u64) -> Result<FqElement> {
        if code >= self.q {
            return Err(Error::Invalid(format!("code {code} is not an element of F_{}", self.q)));
        }
        Ok(if code == 0 {
            FqElement::Zero
        } else {
            FqElement::Pow(self.log[code as usize])
        })
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> FqElement {
        let c = n.rem_euclid(self.p as i64) as u64;
        self.from_code(c).expect("prime-field code")
    }

    pub fn pow_of_generator(&self, k: i64) -> FqElement {
        FqElement::Pow(k.rem_euclid(self.units() as i64) as u32)
    }

    pub fn dlog(&self, x: FqElement) -> Result<u64> {
        match x {
            FqElement::Zero => Err(Error::ZeroElement),
            FqElement::Pow(k) => Ok(k as u64),
        }
    }

    pub fn mul(&self, a: FqElement, b: FqElement) -> FqElement {
        match (a, b) {
            (FqElement::Pow(i), FqElement::Pow(j)) => {
                FqElement::Pow(((i as u64 + j as u64) % self.units()) as u32)
            }
            _ => FqElement::Zero,
        }
    }

    pub fn inv(&self, a: FqElement) -> Result<FqElement> {
        match a {
            FqElement::Zero => Err(Error::ZeroElement),
            FqElement::Pow(k) => Ok(self.pow_of_generator(-(k as i64))),
        }
    }

    pub fn div(&self, a: FqElement, b: FqElement) -> Result<FqElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`; `0^0 = 1`, negative powers of zero fail.
    pub fn pow(&self, a: FqElement, e: i64) -> Result<FqElement> {
        match a {
            FqElement::Zero if e == 0 => Ok(FqElement::ONE),
            FqElement::Zero if e > 0 => Ok(FqElement::Zero),
            FqElement::Zero => Err(Error::ZeroElement),
            FqElement::Pow(k) => {
                let n = self.units() as i128;
                Ok(FqElement::Pow(((k as i128 * e as i128).rem_euclid(n)) as u32))
            }
        }
    }

    pub fn add(&self, a: FqElement, b: FqElement) -> FqElement {
        match (a, b) {
            (FqElement::Zero, x) | (x, FqElement::Zero) => x,
            (FqElement::Pow(i), FqElement::Pow(j)) => {
                let n = self.units();
                let diff = (j as u64 + n - i as u64) % n;
                match self.zech[diff as usize] {
                    0 => FqElement::Zero,
                    z => FqElement::Pow(((i as u64 + z as u64 - 1) % n) as u32),
                }
            }
        }
    }

    pub fn neg(&self, a: FqElement) -> FqElement {
        self.mul(a, self.minus_one())
    }

    pub fn sub(&self, a: FqElement, b: FqElement) -> FqElement {
        self.add(a, self.neg(b))
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: FqElement) -> Result<u64> {
        let k = self.dlog(a)?;
        Ok(self.units() / gcd(k, self.units()))
    }

    /// The embedding of `base` into `self` sending the root of `base`'s
    /// modulus to the root in `self` of smallest logarithm.
    pub fn embedding_of(&self, base: &FqField) -> Result<Embedding> {
        if base.p != self.p || self.d % base.d != 0 {
            return Err(Error::Invalid(format!(
                "F_{} is not a subfield of F_{}",
                base.q, self.q
            )));
        }
        let e = self.units() / base.units();
        let image = if base.d == 1 {
            self.from_int(base.generator as i64)
        } else {
            let root = (0..base.units())
                .map(|j| FqElement::Pow((e * j) as u32))
                .find(|&y| self.eval_prime_poly(&base.modulus, y).is_zero())
                .expect("a subfield of the right order contains every root");
            let coeffs = code_digits(base.generator, base.p, base.d as usize);
            self.eval_prime_poly(&coeffs, root)
        };
        let l = self.dlog(image)?;
        debug_assert_eq!(l % e, 0);
        Ok(Embedding {
            small_units: base.units(),
            large_units: self.units(),
            twist: (l / e) % base.units().max(1),
        })
    }

    /// Norm from `self` down to `base` under [`embedding_of`](Self::embedding_of).
    pub fn norm(&self, base: &FqField, x: FqElement) -> Result<FqElement> {
        self.embedding_of(base)?.norm(x)
    }

    fn eval_prime_poly(&self, coeffs: &[u64], x: FqElement) -> FqElement {
        coeffs.iter().rev().fold(FqElement::Zero, |acc, &c| {
            self.add(self.mul(acc, x), self.from_int(c as i64))
        })
    }

    /// Class of a unit in `F_q^× / (F_q^×)^m`.
    pub fn unit_class(&self, x: FqElement, m: u64) -> Result<UnitClass> {
        let order = gcd(m, self.units());
        Ok(UnitClass {
            exponent: self.dlog(x)? % order,
            order,
        })
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            d: self.d,
            modulus: self.modulus.clone(),
        }
    }
}

/// JSON form of a field: `{"p":7,"d":2,"modulus":[1,0,1]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub d: u32,
    pub modulus: Vec<u64>,
}

impl FieldDescriptor {
    /// Rebuilds the field, rejecting a modulus other than the canonical one.
    pub fn build(&self) -> Result<FqField> {
        let f = FqField::new(self.p, self.d)?;
        if f.modulus != self.modulus {
            return Err(Error::Invalid(format!(
                "modulus {:?} differs from the canonical {:?}",
                self.modulus, f.modulus
            )));
        }
        Ok(f)
    }
}

/// A class in `F_q^× / m`, stored as `dlog mod gcd(m, q-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitClass {
    pub exponent: u64,
    pub order: u64,
}

impl UnitClass {
    pub fn is_trivial(&self) -> bool {
        self.exponent == 0
    }
}

/// An embedding `K -> L` of finite fields, recorded by the integer `c` with
/// `dlog_L(φ(g_K)) = c · (|L^×| / |K^×|)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Embedding {
    small_units: u64,
    large_units: u64,
    twist: u64,
}

impl Embedding {
    pub fn image(&self, x: FqElement) -> FqElement {
        match x {
            FqElement::Zero => FqElement::Zero,
            FqElement::Pow(k) => {
                let e = self.large_units / self.small_units;
                FqElement::Pow(((k as u128 * self.twist as u128 * e as u128) % self.large_units as u128) as u32)
            }
        }
    }

    /// `N(x) = x^{(|L|-1)/(|K|-1)}` in the coordinates of `K`.
    pub fn norm(&self, x: FqElement) -> Result<FqElement> {
        let FqElement::Pow(k) = x else {
            return Err(Error::ZeroElement);
        };
        let n = self.small_units;
        if n == 1 {
            return Ok(FqElement::ONE);
        }
        let inv = mod_inverse(self.twist % n, n).expect("embedding twist is a unit");
        Ok(FqElement::Pow(((k as u128 % n as u128 * inv as u128) % n as u128) as u32))
    }

    /// `self: K -> K'` followed by `outer: K' -> M`.
    pub fn then(&self, outer: &Embedding) -> Embedding {
        assert_eq!(self.large_units, outer.small_units, "embeddings do not compose");
        Embedding {
            small_units: self.small_units,
            large_units: outer.large_units,
            twist: ((self.twist as u128 * outer.twist as u128) % self.small_units.max(1) as u128) as u64,
        }
    }
}

/// `F_q^× / m` as a presentation: cyclic of order `gcd(m, q-1)`.
///
/// This holds for every positive `m`, so `p | m` is accepted here; the
/// Milnor K-group computation below still rejects it.
pub fn units_mod_m(field: &FqField, m: u64) -> Result<Presentation> {
    if m == 0 {
        return Err(Error::Invalid("modulus must be positive".into()));
    }
    Ok(Presentation::diagonal(m, &[gcd(m, field.units())]))
}

/// `K_n^M(F_q) / m` for `n <= 3`.
///
/// Degree 2 is computed from the Steinberg presentation: `{g, g}` generates,
/// its order divides `q - 1`, and each `a ≠ 0, 1` contributes the relator
/// `dlog(a) · dlog(1 - a)`. Degree 3 vanishes because degree 2 already does.
pub fn milnor_k_finite(field: &FqField, n: usize, m: u64) -> Result<Presentation> {
    check_modulus(field, m)?;
    match n {
        0 => Ok(Presentation::cyclic(m)),
        1 => units_mod_m(field, m),
        2 => {
            let units = field.units();
            let mut relators = std::collections::BTreeSet::new();
            relators.insert(units);
            relators.insert(m);
            for a in field.nonzero_elements() {
                let b = field.sub(FqElement::ONE, a);
                if let FqElement::Pow(lb) = b {
                    let la = field.dlog(a)?;
                    relators.insert((la as u128 * lb as u128 % units as u128) as u64);
                }
            }
            let rows: Vec<Vec<u64>> = relators.into_iter().map(|r| vec![r]).collect();
            Presentation::new(Modulus::Integers, 1, IntMatrix::from_rows(1, &rows)?)
        }
        3 => Ok(Presentation::trivial()),
        _ => Err(Error::DegreeUnsupported(n)),
    }
}

fn check_modulus(field: &FqField, m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::Invalid("modulus must be positive".into()));
    }
    if m % field.p == 0 {
        return Err(Error::CharDividesModulus { p: field.p, m });
    }
    Ok(())
}

/// Base-`p` digits of a code, low to high, padded to `len`.
fn code_digits(mut code: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(code % p);
        code /= p;
    }
    out
}

/// Arithmetic on codes of `F_p[x] / (modulus)`.
struct CodeArith<'a> {
    p: u64,
    modulus: &'a [u64],
}

impl CodeArith<'_> {
    fn mul(&self, a: u64, b: u64) -> u64 {
        let d = self.modulus.len() - 1;
        let p = self.p;
        let x = code_digits(a, p, d);
        let y = code_digits(b, p, d);
        let mut prod = vec![0u64; 2 * d];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % p;
            }
        }
        for k in (d..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (i, &mi) in self.modulus.iter().enumerate().take(d) {
                prod[k - d + i] = (prod[k - d + i] + (p - c) * mi) % p;
            }
            prod[k] = 0;
        }
        prod.iter().take(d).rev().fold(0, |acc, &c| acc * p + c)
    }

    fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Smallest-code monic irreducible polynomial of degree `d` over `F_p`.
fn smallest_irreducible(p: u64, d: usize) -> Vec<u64> {
    let lead = p.pow(d as u32);
    (0..lead)
        .map(|low| {
            let mut c = code_digits(low, p, d);
            c.push(1);
            c
        })
        .find(|f| is_irreducible_prime(f, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Trial division by every monic polynomial of degree `<= deg f / 2`.
fn is_irreducible_prime(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    if d <= 1 {
        return true;
    }
    for k in 1..=d / 2 {
        for low in 0..p.pow(k as u32) {
            let mut g = code_digits(low, p, k);
            g.push(1);
            if remainder_prime(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn remainder_prime(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    for k in (dg..r.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        for (i, &gi) in g.iter().enumerate() {
            r[k - dg + i] = (r[k - dg + i] + (p - c) * gi) % p;
        }
    }
    r.truncate(dg);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f7_generator_is_three() {
        let f = FqField::new(7, 1).unwrap();
        assert_eq!(f.generator_code(), 3);
        assert_eq!(f.code(f.generator()), 3);
        assert_eq!(f.dlog(f.from_int(6)).unwrap(), 3);
    }

    #[test]
    fn f2_has_trivial_units() {
        let f = FqField::new(2, 1).unwrap();
        assert_eq!(f.units(), 1);
        assert_eq!(f.add(f.one(), f.one()), FqElement::Zero);
    }

    #[test]
    fn f9_generator_has_order_eight() {
        let f = FqField::new(3, 2).unwrap();
        assert_eq!(f.order(), 9);
        assert_eq!(f.element_order(f.generator()).unwrap(), 8);
    }

    #[test]
    fn f49_modulus() {
        let f = FqField::new(7, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn errors() {
        assert_eq!(FqField::new(6, 1).unwrap_err(), Error::NotPrime(6));
        assert_eq!(FqField::new(2, 21).unwrap_err(), Error::TooLarge { p: 2, d: 21 });
        assert_eq!(FqField::of_order(12).unwrap_err(), Error::NotPrimePower(12));
    }

    #[test]
    fn units_examples() {
        let f7 = FqField::new(7, 1).unwrap();
        assert_eq!(units_mod_m(&f7, 2).unwrap().factors_u64(), vec![2]);
        let f8 = FqField::new(2, 3).unwrap();
        assert!(units_mod_m(&f8, 2).unwrap().is_trivial());
        assert_eq!(units_mod_m(&f8, 7).unwrap().factors_u64(), vec![7]);
        let f9 = FqField::new(3, 2).unwrap();
        assert_eq!(units_mod_m(&f9, 4).unwrap().factors_u64(), vec![4]);
    }

    #[test]
    fn norm_examples_in_f49() {
        let l = FqField::new(7, 2).unwrap();
        let k = FqField::new(7, 1).unwrap();
        let n = l.norm(&k, l.generator()).unwrap();
        assert_eq!(k.element_order(n).unwrap(), 6);
        assert_eq!(l.norm(&k, l.one()).unwrap(), k.one());
        // i = t is a root of t^2 + 1; its code is 7.
        let i = l.from_code(7).unwrap();
        assert_eq!(l.norm(&k, l.neg(i)).unwrap(), k.one());
    }

    #[test]
    fn milnor_k2_examples() {
        let f7 = FqField::new(7, 1).unwrap();
        assert!(milnor_k_finite(&f7, 2, 6).unwrap().is_trivial());
        assert_eq!(milnor_k_finite(&f7, 0, 4).unwrap().factors_u64(), vec![4]);
        let f5 = FqField::new(5, 1).unwrap();
        assert!(milnor_k_finite(&f5, 2, 2).unwrap().is_trivial());
        assert!(milnor_k_finite(&f5, 3, 2).unwrap().is_trivial());
        assert_eq!(milnor_k_finite(&f5, 4, 2).unwrap_err(), Error::DegreeUnsupported(4));
        assert_eq!(
            milnor_k_finite(&f5, 1, 5).unwrap_err(),
            Error::CharDividesModulus { p: 5, m: 5 }
        );
    }

    #[test]
    fn json_forms() {
        let f = FqField::new(7, 2).unwrap();
        assert_eq!(
            serde_json::to_string(&f.descriptor()).unwrap(),
            r#"{"p":7,"d":2,"modulus":[1,0,1]}"#
        );
        assert_eq!(serde_json::to_string(&FqElement::Pow(5)).unwrap(), r#"{"dlog":5}"#);
        assert_eq!(serde_json::to_string(&FqElement::Zero).unwrap(), r#"{"zero":true}"#);
        let back: FqElement = serde_json::from_str(r#"{"zero":true}"#).unwrap();
        assert_eq!(back, FqElement::Zero);
    }
}
