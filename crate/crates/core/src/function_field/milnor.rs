//! Milnor K-classes mod m over `F_q(t)` and their residues.
//!
//! Sign convention: for `f = π^a u`, `g = π^b w` the residue of `{f, g}` is
//! `(-1)^{ab} · w^a / u^b` reduced at the place, so that `∂{π, u} = ū`.
//! Longer symbols are expanded multilinearly in the slots `π^a · u`, with
//! `{π, π} = {π, -1}` and graded commutativity moving the first `π` to the front.
//!
//! Requires `m | q - 1`, so that all twists of `Z/m` agree and the residue
//! groups are `K^M_*(κ(v))/m`. For a finite residue field `κ` of degree `d`,
//! `κ^×/m ≅ Z/m` through `u ↦ dlog N(u) mod m`, and `K_n(κ)/m = 0` for `n ≥ 2`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::poly::{Poly, PolyRing};
use super::rational::{Place, RationalFunction, ResidueUnit};
use crate::error::{Error, Result};
use crate::field::{FqElement, FqField};

/// `Σ c_i {f_{i,1}, ..., f_{i,n}}` in `K_n^M(F_q(t)) / m`.
///
/// Kept in a normal form: symbols sorted and merged, coefficients in
/// `(0, m)`, symbols with a slot equal to `1` dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilnorClass {
    n: usize,
    m: u64,
    terms: Vec<(u64, Vec<RationalFunction>)>,
}

impl MilnorClass {
    pub fn zero(n: usize, m: u64) -> Self {
        MilnorClass {
            n,
            m,
            terms: Vec::new(),
        }
    }

    pub fn symbol(m: u64, slots: Vec<RationalFunction>) -> Self {
        Self::from_terms(slots.len(), m, vec![(1, slots)])
    }

    pub fn from_terms(n: usize, m: u64, terms: Vec<(i64, Vec<RationalFunction>)>) -> Self {
        let mut merged: BTreeMap<Vec<RationalFunction>, i128> = BTreeMap::new();
        for (c, slots) in terms {
            assert_eq!(slots.len(), n, "symbol length mismatch");
            if slots.iter().any(RationalFunction::is_one) {
                continue;
            }
            *merged.entry(slots).or_insert(0) += c as i128;
        }
        let terms = merged
            .into_iter()
            .filter_map(|(slots, c)| {
                let c = c.rem_euclid(m as i128) as u64;
                (c != 0).then_some((c, slots))
            })
            .collect();
        MilnorClass { n, m, terms }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn terms(&self) -> &[(u64, Vec<RationalFunction>)] {
        &self.terms
    }

    /// No terms left after normalization (formal zero).
    pub fn is_formally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &MilnorClass) -> Result<MilnorClass> {
        if self.n != other.n || self.m != other.m {
            return Err(Error::Invalid(format!(
                "cannot add classes in K_{}/{} and K_{}/{}",
                self.n, self.m, other.n, other.m
            )));
        }
        let terms = self
            .terms
            .iter()
            .chain(&other.terms)
            .map(|(c, s)| (*c as i64, s.clone()))
            .collect();
        Ok(Self::from_terms(self.n, self.m, terms))
    }

    pub fn scale(&self, c: i64) -> MilnorClass {
        let terms = self
            .terms
            .iter()
            .map(|(a, s)| ((*a as i128 * c as i128).rem_euclid(self.m as i128) as i64, s.clone()))
            .collect();
        Self::from_terms(self.n, self.m, terms)
    }

    /// Places where some slot has nonzero valuation.
    pub fn support(&self) -> BTreeSet<Place> {
        self.terms
            .iter()
            .flat_map(|(_, s)| s.iter())
            .flat_map(RationalFunction::support)
            .collect()
    }

    pub fn to_json(&self, field: &FqField) -> serde_json::Value {
        let repr = ClassRepr {
            m: self.m,
            n: Some(self.n),
            terms: self
                .terms
                .iter()
                .map(|(c, slots)| TermRepr {
                    c: *c,
                    sym: slots.iter().map(|f| FnRepr::from_function(field, f)).collect(),
                })
                .collect(),
        };
        serde_json::to_value(repr).expect("plain data serializes")
    }

    pub fn from_json(field: &FqField, value: &serde_json::Value) -> Result<MilnorClass> {
        let repr: ClassRepr = serde_json::from_value(value.clone())
            .map_err(|e| Error::Invalid(format!("bad Milnor class JSON: {e}")))?;
        let n = match (repr.n, repr.terms.first()) {
            (Some(n), _) => n,
            (None, Some(t)) => t.sym.len(),
            (None, None) => return Err(Error::Invalid("empty class needs \"n\"".into())),
        };
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            if t.sym.len() != n {
                return Err(Error::Invalid("symbols of different lengths".into()));
            }
            let slots = t
                .sym
                .iter()
                .map(|f| f.to_function(field))
                .collect::<Result<Vec<_>>>()?;
            terms.push(((t.c % repr.m) as i64, slots));
        }
        if repr.m == 0 {
            return Err(Error::Invalid("modulus must be positive".into()));
        }
        Ok(Self::from_terms(n, repr.m, terms))
    }
}

#[derive(Serialize, Deserialize)]
struct ClassRepr {
    m: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    c: u64,
    sym: Vec<FnRepr>,
}

/// `{"const": dlog, "factors": [[coefficient codes low to high, exponent], ...]}`.
#[derive(Serialize, Deserialize)]
struct FnRepr {
    #[serde(rename = "const")]
    constant: u32,
    factors: Vec<(Vec<u64>, i64)>,
}

impl FnRepr {
    fn from_function(field: &FqField, f: &RationalFunction) -> FnRepr {
        FnRepr {
            constant: field.dlog(f.constant_part()).expect("nonzero constant") as u32,
            factors: f
                .factors()
                .iter()
                .map(|(p, &e)| (p.coeffs().iter().map(|&c| field.code(c)).collect(), e))
                .collect(),
        }
    }

    fn to_function(&self, field: &FqField) -> Result<RationalFunction> {
        if self.constant as u64 >= field.units() {
            return Err(Error::Invalid(format!("dlog {} out of range", self.constant)));
        }
        let mut factors = Vec::with_capacity(self.factors.len());
        for (codes, e) in &self.factors {
            let coeffs = codes
                .iter()
                .map(|&c| field.from_code(c))
                .collect::<Result<Vec<_>>>()?;
            let place = Place::finite(field, Poly::new(coeffs))?;
            let Place::Finite(p) = place else { unreachable!() };
            factors.push((p, *e));
        }
        RationalFunction::from_factors(FqElement::Pow(self.constant), factors)
    }
}

/// `Σ c_i {u_{i,1}, ..., u_{i,n}}` in `K_n^M(κ(v)) / m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueClass {
    pub place: Place,
    pub n: usize,
    pub m: u64,
    pub terms: Vec<(u64, Vec<ResidueUnit>)>,
}

impl ResidueClass {
    /// The class in `Z/m`: degree 0 is `Z/m` itself, degree 1 uses norm
    /// coordinates, and higher degrees vanish over a finite field.
    pub fn value(&self, field: &FqField) -> u64 {
        let m = self.m as u128;
        match self.n {
            0 => (self.terms.iter().map(|(c, _)| *c as u128).sum::<u128>() % m) as u64,
            1 => {
                let mut acc = 0u128;
                for (c, slots) in &self.terms {
                    let x = slots[0].coordinate(field, &self.place, self.m) as u128;
                    acc = (acc + *c as u128 * x) % m;
                }
                acc as u64
            }
            _ => 0,
        }
    }

    pub fn is_zero(&self, field: &FqField) -> bool {
        self.value(field) == 0
    }
}

/// A class in `K_n^M(F_q) / m` for `n ≤ 1`, as an element of `Z/m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteClass {
    pub n: usize,
    pub m: u64,
    pub value: u64,
}

/// Fails unless `m | q - 1`.
pub fn check_twist(field: &FqField, m: u64) -> Result<()> {
    if m == 0 || field.units() % m != 0 {
        return Err(Error::TwistMismatch {
            m,
            q_minus_one: field.units(),
        });
    }
    Ok(())
}

fn check_place(field: &FqField, place: &Place) -> Result<()> {
    if let Place::Finite(pi) = place {
        if !pi.is_monic() || !PolyRing::new(field).is_irreducible(pi) {
            return Err(Error::BadPlace(format!(
                "{} is not a monic irreducible polynomial",
                pi.display(field)
            )));
        }
    }
    Ok(())
}

/// The residue `∂_v x`.
pub fn residue(field: &FqField, x: &MilnorClass, place: &Place) -> Result<ResidueClass> {
    check_twist(field, x.m)?;
    check_place(field, place)?;
    if x.n == 0 {
        return Err(Error::DegreeUnsupported(0));
    }
    Ok(residue_unchecked(field, x, place))
}

pub(crate) fn residue_unchecked(field: &FqField, x: &MilnorClass, place: &Place) -> ResidueClass {
    let m = x.m as i128;
    let mut terms = Vec::new();
    for (c, slots) in &x.terms {
        let parts: Vec<(i64, ResidueUnit)> = slots
            .iter()
            .map(|f| (f.valuation(place), f.unit_residue(field, place)))
            .collect();
        expand_slots(field, *c, &parts, m, &mut terms);
    }
    ResidueClass {
        place: place.clone(),
        n: x.n - 1,
        m: x.m,
        terms,
    }
}

/// Residue of `c · {π^{a_1} u_1, ..., π^{a_n} u_n}` appended to `out`.
fn expand_slots(
    field: &FqField,
    c: u64,
    parts: &[(i64, ResidueUnit)],
    m: i128,
    out: &mut Vec<(u64, Vec<ResidueUnit>)>,
) {
    let n = parts.len();
    for mask in 1u64..(1 << n) {
        let first = mask.trailing_zeros() as usize;
        let mut coef = c as i128;
        for (i, (a, _)) in parts.iter().enumerate() {
            if mask >> i & 1 == 1 {
                coef = coef * *a as i128 % m;
            }
        }
        if first % 2 == 1 {
            coef = -coef;
        }
        let coef = coef.rem_euclid(m) as u64;
        if coef == 0 {
            continue;
        }
        let sym = (0..n)
            .filter(|&i| i != first)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    ResidueUnit::from_constant(field.minus_one())
                } else {
                    parts[i].1.clone()
                }
            })
            .collect();
        out.push((coef, sym));
    }
}

/// Corestriction to `F_q`: multiplication by the degree on `K_0`, the norm on `K_1`.
pub fn corestrict(field: &FqField, r: &ResidueClass) -> Result<FiniteClass> {
    let value = match r.n {
        0 => (r.value(field) as u128 * r.place.degree() as u128 % r.m as u128) as u64,
        1 => r.value(field),
        n => return Err(Error::DegreeUnsupported(n)),
    };
    Ok(FiniteClass { n: r.n, m: r.m, value })
}

/// `Σ_{v ∈ S} Cor ∂_v x`, which vanishes by Weil reciprocity.
pub fn reciprocity_defect(field: &FqField, x: &MilnorClass, places: &[Place]) -> Result<FiniteClass> {
    check_twist(field, x.m)?;
    if !places.contains(&Place::Infinity) {
        return Err(Error::SupportNotCovered("the place at infinity is missing".into()));
    }
    let given: BTreeSet<&Place> = places.iter().collect();
    if let Some(v) = x.support().iter().find(|v| !given.contains(v)) {
        return Err(Error::SupportNotCovered(format!(
            "ramified at {} which is not listed",
            v.display(field)
        )));
    }
    if x.n == 0 || x.n > 2 {
        return Err(Error::DegreeUnsupported(x.n));
    }
    let mut value = 0u128;
    for v in given {
        check_place(field, v)?;
        let cor = corestrict(field, &residue_unchecked(field, x, v))?;
        value = (value + cor.value as u128) % x.m as u128;
    }
    Ok(FiniteClass {
        n: x.n - 1,
        m: x.m,
        value: value as u64,
    })
}

/// True when every residue vanishes (checked on the support and at infinity;
/// elsewhere all slots are units).
pub fn is_unramified(field: &FqField, x: &MilnorClass) -> Result<bool> {
    check_twist(field, x.m)?;
    if x.n == 0 {
        return Ok(true);
    }
    let mut places = x.support();
    places.insert(Place::Infinity);
    Ok(places
        .iter()
        .all(|v| residue_unchecked(field, x, v).is_zero(field)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::milnor_k_finite;

    fn f7() -> FqField {
        FqField::new(7, 1).unwrap()
    }

    fn poly_fn(field: &FqField, c: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(field, &PolyRing::new(field).from_ints(c)).unwrap()
    }

    #[test]
    fn tame_symbol_at_t_is_minus_one() {
        let f = f7();
        let x = MilnorClass::symbol(2, vec![poly_fn(&f, &[0, 1]), poly_fn(&f, &[-1, 1])]);
        let r = residue(&f, &x, &Place::Finite(Poly::t())).unwrap();
        assert_eq!(r.value(&f), 1);
        let at_one = residue(&f, &x, &Place::Finite(PolyRing::new(&f).from_ints(&[-1, 1]))).unwrap();
        assert_eq!(at_one.value(&f), 0);
        let at_inf = residue(&f, &x, &Place::Infinity).unwrap();
        assert_eq!(at_inf.value(&f), 1);
        let d = reciprocity_defect(
            &f,
            &x,
            &[Place::Infinity, Place::Finite(Poly::t()), Place::Finite(PolyRing::new(&f).from_ints(&[-1, 1]))],
        )
        .unwrap();
        assert_eq!(d.value, 0);
    }

    #[test]
    fn three_slot_residue_lands_in_k2_of_f7() {
        let f = f7();
        let x = MilnorClass::symbol(2, vec![poly_fn(&f, &[0, 1]), poly_fn(&f, &[3]), poly_fn(&f, &[2, 1])]);
        let r = residue(&f, &x, &Place::Finite(Poly::t())).unwrap();
        assert_eq!(r.n, 2);
        assert_eq!(r.terms.len(), 1);
        let (c, sym) = &r.terms[0];
        assert_eq!(*c, 1);
        let vals: Vec<Poly> = sym.iter().map(|u| u.value(&f, &r.place)).collect();
        let ring = PolyRing::new(&f);
        assert_eq!(vals, vec![ring.from_ints(&[3]), ring.from_ints(&[2])]);
        assert!(milnor_k_finite(&f, 2, 2).unwrap().is_trivial());
        assert_eq!(r.value(&f), 0);
    }

    #[test]
    fn unit_pairs_have_no_residue() {
        let f = f7();
        let x = MilnorClass::symbol(2, vec![poly_fn(&f, &[3]), poly_fn(&f, &[5])]);
        assert!(is_unramified(&f, &x).unwrap());
        let y = MilnorClass::symbol(2, vec![poly_fn(&f, &[0, 1]), poly_fn(&f, &[-1, 1])]);
        assert!(!is_unramified(&f, &y).unwrap());
    }

    #[test]
    fn corestriction_examples() {
        let f = f7();
        let ring = PolyRing::new(&f);
        let cubic = ring.from_ints(&[2, 0, 0, 1]);
        assert!(ring.is_irreducible(&cubic));
        let r0 = ResidueClass {
            place: Place::Finite(cubic),
            n: 0,
            m: 2,
            terms: vec![(1, Vec::new())],
        };
        assert_eq!(corestrict(&f, &r0).unwrap().value, 1);
        // -i in F_7[t]/(t^2+1) has norm 1.
        let quad = ring.from_ints(&[1, 0, 1]);
        let minus_i = ResidueUnit {
            constant: f.minus_one(),
            factors: vec![(Poly::t(), 1)],
        };
        assert_eq!(minus_i.norm(&f, &Place::Finite(quad.clone())), FqElement::ONE);
        let r1 = ResidueClass {
            place: Place::Finite(quad),
            n: 1,
            m: 2,
            terms: vec![(1, vec![minus_i])],
        };
        assert_eq!(corestrict(&f, &r1).unwrap().value, 0);
        let empty = ResidueClass {
            place: Place::Infinity,
            n: 1,
            m: 2,
            terms: Vec::new(),
        };
        assert_eq!(corestrict(&f, &empty).unwrap().value, 0);
    }

    #[test]
    fn errors() {
        let f = f7();
        let x = MilnorClass::symbol(5, vec![poly_fn(&f, &[0, 1]), poly_fn(&f, &[-1, 1])]);
        assert_eq!(
            residue(&f, &x, &Place::Infinity).unwrap_err(),
            Error::TwistMismatch { m: 5, q_minus_one: 6 }
        );
        let y = MilnorClass::symbol(2, vec![poly_fn(&f, &[0, 1]), poly_fn(&f, &[-1, 1])]);
        assert!(matches!(
            reciprocity_defect(&f, &y, &[Place::Infinity]),
            Err(Error::SupportNotCovered(_))
        ));
        let bad = Place::Finite(PolyRing::new(&f).from_ints(&[-1, 0, 1]));
        assert!(matches!(residue(&f, &y, &bad), Err(Error::BadPlace(_))));
    }

    #[test]
    fn json_round_trip() {
        let f = f7();
        let x = MilnorClass::symbol(2, vec![poly_fn(&f, &[0, 1]), poly_fn(&f, &[-1, 1])]);
        let v = x.to_json(&f);
        assert_eq!(
            v.to_string(),
            r#"{"m":2,"n":2,"terms":[{"c":1,"sym":[{"const":0,"factors":[[[0,1],1]]},{"const":0,"factors":[[[6,1],1]]}]}]}"#
        );
        assert_eq!(MilnorClass::from_json(&f, &v).unwrap(), x);
    }
}
