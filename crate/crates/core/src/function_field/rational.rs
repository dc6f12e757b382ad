//! Rational functions in factored form and the places of the projective line.

use std::collections::BTreeMap;
use std::fmt;

use super::poly::{Poly, PolyRing};
use crate::error::{Error, Result};
use crate::field::{FqElement, FqField};

/// A closed point of the projective line: a monic irreducible or infinity.
///
/// Infinity sorts first, then finite places by polynomial order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinity,
    Finite(Poly),
}

impl Place {
    /// Validates that `pi` is monic and irreducible.
    pub fn finite(field: &FqField, pi: Poly) -> Result<Place> {
        let ring = PolyRing::new(field);
        if !pi.is_monic() || !ring.is_irreducible(&pi) {
            return Err(Error::BadPlace(format!(
                "{} is not a monic irreducible polynomial",
                pi.display(field)
            )));
        }
        Ok(Place::Finite(pi))
    }

    /// Residue field degree over `F_q`.
    pub fn degree(&self) -> usize {
        match self {
            Place::Infinity => 1,
            Place::Finite(pi) => pi.deg(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    pub fn display<'a>(&'a self, field: &'a FqField) -> PlaceDisplay<'a> {
        PlaceDisplay { place: self, field }
    }
}

pub struct PlaceDisplay<'a> {
    place: &'a Place,
    field: &'a FqField,
}

impl fmt::Display for PlaceDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.place {
            Place::Infinity => write!(f, "inf"),
            Place::Finite(pi) => write!(f, "{}", pi.display(self.field)),
        }
    }
}

/// A nonzero element `constant · Π π^e` of `F_q(t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    constant: FqElement,
    factors: BTreeMap<Poly, i64>,
}

impl RationalFunction {
    pub fn constant(c: FqElement) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(RationalFunction {
            constant: c,
            factors: BTreeMap::new(),
        })
    }

    pub fn one() -> Self {
        RationalFunction {
            constant: FqElement::ONE,
            factors: BTreeMap::new(),
        }
    }

    /// Assumes each key is monic irreducible; zero exponents are dropped.
    pub fn from_factors(constant: FqElement, factors: impl IntoIterator<Item = (Poly, i64)>) -> Result<Self> {
        let mut out = Self::constant(constant)?;
        for (p, e) in factors {
            out.multiply_factor(p, e);
        }
        Ok(out)
    }

    /// The place's uniformizer (`π`, or `1/t` at infinity).
    pub fn uniformizer(place: &Place) -> Self {
        match place {
            Place::Infinity => Self::from_factors(FqElement::ONE, [(Poly::t(), -1)]).expect("nonzero"),
            Place::Finite(pi) => Self::from_factors(FqElement::ONE, [(pi.clone(), 1)]).expect("nonzero"),
        }
    }

    pub fn from_poly(field: &FqField, f: &Poly) -> Result<Self> {
        let fac = PolyRing::new(field).factor(f)?;
        Self::from_factors(fac.leading, fac.factors.into_iter().map(|(p, e)| (p, e as i64)))
    }

    /// `num / den`, both nonzero.
    pub fn from_fraction(field: &FqField, num: &Poly, den: &Poly) -> Result<Self> {
        Ok(Self::from_poly(field, num)?.div(field, &Self::from_poly(field, den)?))
    }

    fn multiply_factor(&mut self, p: Poly, e: i64) {
        if e == 0 {
            return;
        }
        let entry = self.factors.entry(p).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.factors.retain(|_, v| *v != 0);
        }
    }

    pub fn constant_part(&self) -> FqElement {
        self.constant
    }

    pub fn factors(&self) -> &BTreeMap<Poly, i64> {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.constant == FqElement::ONE && self.factors.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, field: &FqField, other: &Self) -> Self {
        let mut out = self.clone();
        out.constant = field.mul(self.constant, other.constant);
        for (p, &e) in &other.factors {
            out.multiply_factor(p.clone(), e);
        }
        out
    }

    pub fn inv(&self, field: &FqField) -> Self {
        RationalFunction {
            constant: field.inv(self.constant).expect("nonzero constant"),
            factors: self.factors.iter().map(|(p, &e)| (p.clone(), -e)).collect(),
        }
    }

    pub fn div(&self, field: &FqField, other: &Self) -> Self {
        self.mul(field, &other.inv(field))
    }

    pub fn pow(&self, field: &FqField, e: i64) -> Self {
        if e == 0 {
            return Self::one();
        }
        RationalFunction {
            constant: field.pow(self.constant, e).expect("nonzero constant"),
            factors: self.factors.iter().map(|(p, &x)| (p.clone(), x * e)).collect(),
        }
    }

    pub fn neg(&self, field: &FqField) -> Self {
        RationalFunction {
            constant: field.neg(self.constant),
            factors: self.factors.clone(),
        }
    }

    /// `deg(numerator) - deg(denominator)`.
    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|(p, &e)| e * p.deg() as i64).sum()
    }

    pub fn valuation(&self, place: &Place) -> i64 {
        match place {
            Place::Infinity => -self.degree(),
            Place::Finite(pi) => self.factors.get(pi).copied().unwrap_or(0),
        }
    }

    /// Places with nonzero valuation, infinity first.
    pub fn support(&self) -> Vec<Place> {
        let mut out = Vec::new();
        if self.degree() != 0 {
            out.push(Place::Infinity);
        }
        out.extend(self.factors.keys().cloned().map(Place::Finite));
        out
    }

    /// Expanded numerator (with the constant) and monic denominator.
    pub fn fraction(&self, field: &FqField) -> (Poly, Poly) {
        let ring = PolyRing::new(field);
        let mut num = Poly::constant(self.constant);
        let mut den = Poly::one();
        for (p, &e) in &self.factors {
            if e > 0 {
                num = ring.mul(&num, &ring.pow(p, e as u64));
            } else {
                den = ring.mul(&den, &ring.pow(p, (-e) as u64));
            }
        }
        (num, den)
    }

    /// `1 - self`, or `None` when `self = 1`.
    pub fn one_minus(&self, field: &FqField) -> Result<Option<Self>> {
        let ring = PolyRing::new(field);
        let (num, den) = self.fraction(field);
        let diff = ring.sub(&den, &num);
        if diff.is_zero() {
            return Ok(None);
        }
        Ok(Some(Self::from_fraction(field, &diff, &den)?))
    }

    /// Value at `x ∈ F_q`; `None` at a pole.
    pub fn evaluate(&self, field: &FqField, x: FqElement) -> Option<FqElement> {
        let ring = PolyRing::new(field);
        let mut acc = self.constant;
        let mut zero_order = 0i64;
        for (p, &e) in &self.factors {
            let v = ring.eval(p, x);
            if v.is_zero() {
                zero_order += e;
            } else {
                acc = field.mul(acc, field.pow(v, e).expect("nonzero"));
            }
        }
        match zero_order.cmp(&0) {
            std::cmp::Ordering::Less => None,
            std::cmp::Ordering::Greater => Some(FqElement::Zero),
            std::cmp::Ordering::Equal => Some(acc),
        }
    }

    /// Reduction of `self · u^{-v(self)}` at the place, `u` the uniformizer.
    pub fn unit_residue(&self, field: &FqField, place: &Place) -> ResidueUnit {
        match place {
            Place::Infinity => ResidueUnit {
                constant: self.constant,
                factors: Vec::new(),
            },
            Place::Finite(pi) => {
                let ring = PolyRing::new(field);
                let factors = self
                    .factors
                    .iter()
                    .filter(|(p, _)| *p != pi)
                    .map(|(p, &e)| (ring.rem(p, pi), e))
                    .collect();
                ResidueUnit {
                    constant: self.constant,
                    factors,
                }
            }
        }
    }

    pub fn display<'a>(&'a self, field: &'a FqField) -> RationalDisplay<'a> {
        RationalDisplay { f: self, field }
    }
}

pub struct RationalDisplay<'a> {
    f: &'a RationalFunction,
    field: &'a FqField,
}

impl fmt::Display for RationalDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.field.degree() == 1 {
            self.field.code(self.f.constant).to_string()
        } else {
            self.f.constant.to_string()
        };
        write!(f, "{c}")?;
        for (p, e) in &self.f.factors {
            write!(f, "*({})", p.display(self.field))?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A unit of a residue field, kept as `constant · Π p_i^{e_i}` with each
/// `p_i` already reduced modulo the place's polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueUnit {
    pub constant: FqElement,
    pub factors: Vec<(Poly, i64)>,
}

impl ResidueUnit {
    pub fn from_constant(c: FqElement) -> Self {
        ResidueUnit {
            constant: c,
            factors: Vec::new(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant == FqElement::ONE && self.factors.is_empty()
    }

    /// Multiplied out in `F_q[t]/(π)` (constant polynomial at infinity).
    pub fn value(&self, field: &FqField, place: &Place) -> Poly {
        let ring = PolyRing::new(field);
        let mut acc = Poly::constant(self.constant);
        let modulus = match place {
            Place::Infinity => return acc,
            Place::Finite(pi) => pi,
        };
        for (p, e) in &self.factors {
            let base = if *e >= 0 {
                p.clone()
            } else {
                ring.inverse_mod(p, modulus).expect("unit of the residue field")
            };
            acc = ring.mulmod(&acc, &ring.powmod(&base, e.unsigned_abs(), modulus), modulus);
        }
        acc
    }

    /// Norm down to `F_q`.
    pub fn norm(&self, field: &FqField, place: &Place) -> FqElement {
        let ring = PolyRing::new(field);
        let d = place.degree() as i64;
        let mut acc = field.pow(self.constant, d).expect("nonzero");
        if let Place::Finite(pi) = place {
            for (p, e) in &self.factors {
                let n = ring.norm(pi, p);
                acc = field.mul(acc, field.pow(n, *e).expect("unit"));
            }
        }
        acc
    }

    /// Coordinate in `κ(v)^× / m ≅ Z/m` (requires `m | q - 1`):
    /// the logarithm of the norm, mod `m`.
    pub fn coordinate(&self, field: &FqField, place: &Place, m: u64) -> u64 {
        let d = place.degree() as i128;
        let n = field.units() as i128;
        let mut acc = field.dlog(self.constant).expect("nonzero") as i128 * d;
        if let Place::Finite(pi) = place {
            let ring = PolyRing::new(field);
            for (p, e) in &self.factors {
                let l = field.dlog(ring.norm(pi, p)).expect("unit") as i128;
                acc += l * *e as i128;
            }
        }
        (acc.rem_euclid(n).rem_euclid(m as i128)) as u64
    }
}
