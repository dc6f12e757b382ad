//! Seeded random elements of `F_q(t)` for property checks.

use rand::Rng;

use super::milnor::MilnorClass;
use super::poly::{Poly, PolyRing};
use super::rational::RationalFunction;
use crate::field::{FqElement, FqField};

/// Largest degree of the irreducibles used by [`random_function`].
pub const MAX_FACTOR_DEGREE: usize = 3;
/// Exponents are drawn from `[-MAX_EXPONENT, MAX_EXPONENT]`.
pub const MAX_EXPONENT: i64 = 3;

pub fn random_nonzero<R: Rng>(field: &FqField, rng: &mut R) -> FqElement {
    FqElement::Pow(rng.gen_range(0..field.units()) as u32)
}

/// Random polynomial of degree `<= max_degree` (possibly zero).
pub fn random_poly<R: Rng>(field: &FqField, rng: &mut R, max_degree: usize) -> Poly {
    let q = field.order() as usize;
    Poly::new(
        (0..=max_degree)
            .map(|_| FqElement::from_index(rng.gen_range(0..q)))
            .collect(),
    )
}

/// Uniform monic irreducible of degree exactly `d`, by rejection.
pub fn random_irreducible<R: Rng>(field: &FqField, rng: &mut R, d: usize) -> Poly {
    let ring = PolyRing::new(field);
    let q = field.order();
    loop {
        let idx = rng.gen_range(0..q.pow(d as u32));
        let p = Poly::from_monic_index(idx, d, q);
        if ring.is_irreducible(&p) {
            return p;
        }
    }
}

/// A nonzero constant times up to three irreducibles of degree `<= 3`
/// with exponents in `[-3, 3]`.
pub fn random_function<R: Rng>(field: &FqField, rng: &mut R) -> RationalFunction {
    random_function_up_to(field, rng, MAX_FACTOR_DEGREE)
}

/// As [`random_function`], with factors of degree at most `max_degree`.
pub fn random_function_up_to<R: Rng>(field: &FqField, rng: &mut R, max_degree: usize) -> RationalFunction {
    let count = rng.gen_range(0..=3);
    let factors: Vec<(Poly, i64)> = (0..count)
        .map(|_| {
            let d = rng.gen_range(1..=max_degree.max(1));
            let e = rng.gen_range(-MAX_EXPONENT..=MAX_EXPONENT);
            (random_irreducible(field, rng, d), e)
        })
        .collect();
    RationalFunction::from_factors(random_nonzero(field, rng), factors).expect("nonzero constant")
}

/// `{f_1, ..., f_n}` with coefficient 1 and random slots.
pub fn random_symbol<R: Rng>(field: &FqField, rng: &mut R, n: usize, m: u64) -> MilnorClass {
    MilnorClass::symbol(m, (0..n).map(|_| random_function(field, rng)).collect())
}

/// `f = a / b` with `a, b` of degree `<= max_degree`, `f ∉ {0, 1}`, together with `1 - f`.
pub fn random_steinberg_pair<R: Rng>(
    field: &FqField,
    rng: &mut R,
    max_degree: usize,
) -> (RationalFunction, RationalFunction) {
    loop {
        let a = random_poly(field, rng, max_degree);
        let b = random_poly(field, rng, max_degree);
        if a.is_zero() || b.is_zero() || a == b {
            continue;
        }
        let f = RationalFunction::from_fraction(field, &a, &b).expect("nonzero");
        let g = f
            .one_minus(field)
            .expect("nonzero")
            .expect("f differs from 1");
        return (f, g);
    }
}

/// A polynomial of degree `< deg pi + extra` that is coprime to `pi`.
pub fn random_unit_at<R: Rng>(field: &FqField, rng: &mut R, pi: &Poly, extra: usize) -> RationalFunction {
    let ring = PolyRing::new(field);
    loop {
        let u = random_poly(field, rng, pi.deg() + extra - 1);
        if !u.is_zero() && !ring.rem(&u, pi).is_zero() {
            return RationalFunction::from_poly(field, &u).expect("nonzero");
        }
    }
}
