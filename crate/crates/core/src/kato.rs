//! S-truncated Kato complexes of the projective line over `F_q` and the
//! unramified cohomology of `F_q(t)`.
//!
//! The complex `C^{i,j}` has the generic point in degree 1 and the closed
//! points in degree 0; the differential is the residue. Only places of
//! degree `<= D` (and infinity) are kept.
//!
//! * Window `(0,0)`: degree 1 is the group of S-units mod m with basis the
//!   constant generator `g` and every finite `π ∈ S`; degree 0 is `Z/m` per place.
//! * Windows `(1,1)` and `(1,0)`: degree 1 is the S-supported part of
//!   `K_2(F_q(t))/m` with basis `{π, ũ_π}`, where `ũ_π` is the least
//!   polynomial of degree `< deg π` whose norm from `F_q[t]/(π)` is the
//!   generator of `F_q^×`; degree 0 is `κ(v)^×/m ≅ Z/m` per place. Since
//!   `K_2(F_q)/m = 0`, an S-supported class is determined by its finite
//!   residues, and the finite block is unitriangular in the place order.
//!   With `m | q - 1` the twists agree, so `(1,0)` is the same complex.
//! * Windows with `i >= 2` have zero terms.
//!
//! Complexes are assembled with modulus `q - 1` and reduced to any `m | q - 1`;
//! the lifts do not depend on `m`.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{reduce, ChainComplex, IntMatrix, Modulus, Presentation, SparseModMatrix};
use crate::error::{Error, Result};
use crate::field::{FqElement, FqField};
use crate::function_field::random::{random_function_up_to, MAX_FACTOR_DEGREE};
use crate::function_field::{
    check_twist, residue_unchecked, MilnorClass, Place, PlaceTable, Poly, PolyRing, RationalFunction,
};

/// Environment variable capping the support degree.
pub const MAX_DEGREE_ENV: &str = "UNRAMIFIED_MAX_D";
pub const DEFAULT_MAX_DEGREE: usize = 6;

/// A basis element of the degree-1 term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    /// The constant generator `g` of `F_q^×`.
    Constant,
    /// A uniformizer `π`.
    Uniformizer(Poly),
    /// The symbol `{π, lift}`.
    Symbol { place: Poly, lift: Poly },
}

#[derive(Debug, Clone)]
pub struct KatoComplex {
    field: FqField,
    m: u64,
    i: i64,
    j: i64,
    max_degree: usize,
    support: Vec<Place>,
    generators: Vec<Generator>,
    differential: SparseModMatrix,
    weights: Vec<u64>,
}

impl KatoComplex {
    /// Builds `C^{i,j}_m` of `P^1_{F_q}` with support of degree `<= max_degree`.
    pub fn build(q: u64, m: u64, i: i64, j: i64, max_degree: usize) -> Result<KatoComplex> {
        let field = FqField::of_order(q)?;
        check_twist(&field, m)?;
        let table = PlaceTable::new(&field, max_degree);
        Self::build_with(&field, &table, i, j, max_degree)?.with_modulus(m)
    }

    /// Builds with modulus `q - 1` from a precomputed place table.
    pub fn build_with(field: &FqField, table: &PlaceTable, i: i64, j: i64, max_degree: usize) -> Result<KatoComplex> {
        let window = Window::of(i, j)?;
        if max_degree > table.max_degree() {
            return Err(Error::Invalid(format!(
                "place table covers degree {} < {max_degree}",
                table.max_degree()
            )));
        }
        let m = field.units();
        let support = table.support(max_degree);
        let rows = match window {
            Window::Zero => 0,
            _ => support.len(),
        };
        let mut differential = SparseModMatrix::new(rows, m);
        let mut generators = Vec::new();
        let weights;
        match window {
            Window::Zero => weights = Vec::new(),
            Window::Units => {
                generators.push(Generator::Constant);
                differential.push_column([]);
                for (row, place) in support.iter().enumerate().skip(1) {
                    let Place::Finite(pi) = place else { unreachable!() };
                    let d = pi.deg() as u64 % m;
                    differential.push_column([(row, 1 % m), (0, (m - d) % m)]);
                    generators.push(Generator::Uniformizer(pi.clone()));
                }
                weights = support.iter().map(|v| v.degree() as u64 % m).collect();
            }
            Window::Symbols => {
                let lifts = LiftSearch::new(field);
                for (row, place) in support.iter().enumerate().skip(1) {
                    let Place::Finite(pi) = place else { unreachable!() };
                    let lift = lifts.least(pi);
                    let entries = symbol_column(field, &support, row, pi, &lift, m);
                    differential.push_column(entries);
                    generators.push(Generator::Symbol {
                        place: pi.clone(),
                        lift,
                    });
                }
                weights = vec![1 % m; support.len()];
            }
        }
        Ok(KatoComplex {
            field: field.clone(),
            m,
            i,
            j,
            max_degree,
            support,
            generators,
            differential,
            weights,
        })
    }

    /// The same complex with coefficients reduced to `Z/m'`, for `m' | m`.
    pub fn with_modulus(&self, m: u64) -> Result<KatoComplex> {
        if m == 0 || self.m % m != 0 {
            return Err(Error::TwistMismatch {
                m,
                q_minus_one: self.field.units(),
            });
        }
        let mut differential = SparseModMatrix::new(self.differential.rows(), m);
        for c in 0..self.differential.cols() {
            differential.push_column(self.differential.column(c).iter().map(|&(r, v)| (r, v % m)));
        }
        Ok(KatoComplex {
            m,
            differential,
            weights: self.weights.iter().map(|w| w % m).collect(),
            ..self.clone()
        })
    }

    /// Restriction to places of degree `<= d` (a subcomplex, as every column
    /// only involves places of degree at most its own).
    pub fn truncated(&self, d: usize) -> KatoComplex {
        let d = d.min(self.max_degree);
        let finite = self.support[1..]
            .iter()
            .take_while(|v| v.degree() <= d)
            .count();
        let support: Vec<Place> = self.support[..=finite].to_vec();
        let (rows, cols) = match Window::of(self.i, self.j).expect("validated") {
            Window::Zero => (0, 0),
            Window::Units => (support.len(), 1 + finite),
            Window::Symbols => (support.len(), finite),
        };
        let mut differential = SparseModMatrix::new(rows, self.m);
        for c in 0..cols {
            let col = self.differential.column(c);
            debug_assert!(col.iter().all(|&(r, _)| r < rows));
            differential.push_column(col.iter().copied());
        }
        KatoComplex {
            field: self.field.clone(),
            m: self.m,
            i: self.i,
            j: self.j,
            max_degree: d,
            weights: self.weights[..rows].to_vec(),
            support,
            generators: self.generators[..cols].to_vec(),
            differential,
        }
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn window(&self) -> (i64, i64) {
        (self.i, self.j)
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Infinity first, then the finite places in order.
    pub fn support(&self) -> &[Place] {
        &self.support
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn differential(&self) -> &SparseModMatrix {
        &self.differential
    }

    /// Weights of the map from degree 0 to `K_i(F_q)/m` (the pushforward).
    pub fn augmentation_weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn rank(&self, degree: i64) -> Result<usize> {
        match degree {
            0 => Ok(self.differential.rows()),
            1 => Ok(self.differential.cols()),
            _ => Err(Error::DegreeOutOfRange { degree, lo: 0, hi: 1 }),
        }
    }

    /// Kernel in degree 1, cokernel in degree 0.
    pub fn homology(&self, degree: i64) -> Result<Presentation> {
        let r = reduce(&self.differential);
        let factors = match degree {
            0 => r.cokernel_invariants(),
            1 => r.kernel_invariants(),
            _ => return Err(Error::DegreeOutOfRange { degree, lo: 0, hi: 1 }),
        };
        Ok(Presentation::diagonal(self.m, &factors))
    }

    /// Dense copy as a two-term chain complex over `Z/m`.
    pub fn to_chain_complex(&self) -> Result<ChainComplex> {
        let rows = self.differential.to_dense_rows();
        let rows: Vec<Vec<i64>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(|v| v as i64).collect())
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let d = if refs.is_empty() {
            IntMatrix::zeros(0, self.differential.cols())
        } else {
            IntMatrix::from_i64(&refs)
        };
        ChainComplex::new(
            Modulus::Residues(self.m),
            0,
            vec![self.differential.rows(), self.differential.cols()],
            vec![d],
        )
    }

    fn row_of(&self, place: &Place) -> Option<usize> {
        self.support.binary_search(place).ok()
    }

    fn check_element(&self, x: &MilnorClass) -> Result<()> {
        if x.modulus() != self.m || x.degree() as i64 != self.i + 1 {
            return Err(Error::Invalid(format!(
                "expected a class in K_{}/{}, got K_{}/{}",
                self.i + 1,
                self.m,
                x.degree(),
                x.modulus()
            )));
        }
        if let Some(v) = x.support().into_iter().find(|v| self.row_of(v).is_none()) {
            return Err(Error::SupportNotCovered(format!(
                "{} has degree above {}",
                v.display(&self.field),
                self.max_degree
            )));
        }
        Ok(())
    }

    /// Residue of `x` at every place of S, as a degree-0 vector.
    pub fn residue_vector(&self, x: &MilnorClass) -> Result<Vec<u64>> {
        self.check_element(x)?;
        let mut out = vec![0u64; self.differential.rows()];
        if out.is_empty() {
            return Ok(out);
        }
        let mut places = x.support();
        places.insert(Place::Infinity);
        for v in places {
            let row = self.row_of(&v).expect("checked");
            out[row] = residue_unchecked(&self.field, x, &v).value(&self.field);
        }
        Ok(out)
    }

    /// Coordinates of an S-supported class in the degree-1 basis.
    pub fn coordinates(&self, x: &MilnorClass) -> Result<Vec<u64>> {
        self.check_element(x)?;
        let m = self.m as i128;
        let mut out = vec![0u64; self.differential.cols()];
        match Window::of(self.i, self.j)? {
            Window::Zero => {}
            Window::Units => {
                let mut acc = vec![0i128; out.len()];
                for (c, slots) in x.terms() {
                    let f = &slots[0];
                    let k = self.field.dlog(f.constant_part())? as i128;
                    acc[0] += *c as i128 * k;
                    for (p, &e) in f.factors() {
                        let col = self.row_of(&Place::Finite(p.clone())).expect("checked");
                        acc[col] += *c as i128 * e as i128;
                    }
                }
                for (o, a) in out.iter_mut().zip(acc) {
                    *o = a.rem_euclid(m) as u64;
                }
            }
            Window::Symbols => {
                // Finite residues, then back-substitution through the
                // unitriangular block from the largest place down.
                let mut pending: BTreeMap<usize, u64> = BTreeMap::new();
                for v in x.support() {
                    if v.is_infinity() {
                        continue;
                    }
                    let value = residue_unchecked(&self.field, x, &v).value(&self.field);
                    if value != 0 {
                        pending.insert(self.row_of(&v).expect("checked"), value);
                    }
                }
                while let Some((row, value)) = pending.pop_last() {
                    let col = row - 1;
                    out[col] = value;
                    for &(r, a) in self.differential.column(col) {
                        if r == row || r == 0 {
                            continue;
                        }
                        let e = pending.entry(r).or_insert(0);
                        *e = ((*e as i128 - a as i128 * value as i128).rem_euclid(m)) as u64;
                        if *e == 0 {
                            pending.remove(&r);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `Σ w_v a_v mod m`.
    pub fn augment(&self, v: &[u64]) -> u64 {
        let m = self.m as u128;
        (v.iter()
            .zip(&self.weights)
            .map(|(&a, &w)| a as u128 * w as u128 % m)
            .sum::<u128>()
            % m) as u64
    }

    /// A seeded random S-supported element of the degree-1 term.
    pub fn random_element(&self, rng: &mut ChaCha8Rng) -> MilnorClass {
        let d = self.max_degree.clamp(1, MAX_FACTOR_DEGREE);
        let n = (self.i + 1).max(0) as usize;
        let slots = (0..n)
            .map(|_| random_function_up_to(&self.field, rng, d))
            .collect();
        MilnorClass::symbol(self.m, slots)
    }

    /// Pushes `trials` random elements through the differential and the
    /// augmentation: the composite must vanish, and the image of the
    /// coordinates must match the residues computed place by place.
    pub fn check_square_zero(&self, seed: u64, trials: usize) -> Result<SquareZeroReport> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut failures = Vec::new();
        if self.max_degree == 0 && self.i >= 0 {
            return Err(Error::Invalid("random elements need support degree >= 1".into()));
        }
        for t in 0..trials {
            let x = self.random_element(&mut rng);
            let coords = self.coordinates(&x)?;
            let image = self.differential.apply(&coords);
            let direct = self.residue_vector(&x)?;
            if self.augment(&image) != 0 || image != direct {
                failures.push(t);
            }
        }
        Ok(SquareZeroReport {
            seed,
            trials,
            passed: trials - failures.len(),
            failures,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareZeroReport {
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub failures: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Window {
    Units,
    Symbols,
    Zero,
}

impl Window {
    fn of(i: i64, j: i64) -> Result<Window> {
        match (i, j) {
            (0, 0) => Ok(Window::Units),
            (1, 1) | (1, 0) => Ok(Window::Symbols),
            (i, _) if i >= 2 => Ok(Window::Zero),
            _ => Err(Error::UnsupportedWindow { i, j }),
        }
    }
}

/// Column of `{π, lift}`: residues at `π`, at the factors of the lift, and at infinity.
fn symbol_column(
    field: &FqField,
    support: &[Place],
    row: usize,
    pi: &Poly,
    lift: &Poly,
    m: u64,
) -> Vec<(usize, u64)> {
    let lift_fn = if lift.deg() <= 1 {
        let (c, monic) = PolyRing::new(field).monic(lift);
        let factors = (!monic.is_one()).then_some((monic, 1));
        RationalFunction::from_factors(c, factors).expect("nonzero")
    } else {
        RationalFunction::from_poly(field, lift).expect("nonzero")
    };
    let places: Vec<Place> = std::iter::once(Place::Infinity)
        .chain(std::iter::once(Place::Finite(pi.clone())))
        .chain(lift_fn.factors().keys().cloned().map(Place::Finite))
        .collect();
    let x = MilnorClass::symbol(m, vec![RationalFunction::uniformizer(&support[row]), lift_fn]);
    places
        .iter()
        .map(|v| {
            let r = support.binary_search(v).expect("lower-degree places are in S");
            (r, residue_unchecked(field, &x, v).value(field))
        })
        .collect()
}

/// Finds `ũ_π`: the least polynomial (degree first, then coefficients from
/// the top) of degree `< deg π` whose norm is the generator of `F_q^×`.
struct LiftSearch<'a> {
    field: &'a FqField,
    ring: PolyRing<'a>,
    /// Elements in increasing order: zero, then `g^0, g^1, ...`.
    elements: Vec<FqElement>,
}

impl<'a> LiftSearch<'a> {
    fn new(field: &'a FqField) -> Self {
        LiftSearch {
            field,
            ring: PolyRing::new(field),
            elements: (0..field.order() as usize).map(FqElement::from_index).collect(),
        }
    }

    fn least(&self, pi: &Poly) -> Poly {
        let n = self.field.units();
        let d = pi.deg() as u64;
        if n == 1 {
            return Poly::one();
        }
        // Constants: N(g^k) = g^{kd}.
        for k in 0..n {
            if k * d % n == 1 % n {
                return Poly::constant(FqElement::Pow(k as u32));
            }
        }
        if d >= 2 {
            let logs: Vec<u64> = self
                .elements
                .iter()
                .map(|&a| self.field.dlog(self.ring.norm(pi, &Poly::linear(a))).expect("unit"))
                .collect();
            for k in 0..n {
                for (a, l) in self.elements.iter().zip(&logs) {
                    if (k * d + l) % n == 1 {
                        return self.ring.scale(&Poly::linear(*a), FqElement::Pow(k as u32));
                    }
                }
            }
        }
        let q = self.field.order();
        for deg in 2..d as usize {
            for k in 0..n {
                for idx in 0..q.pow(deg as u32) {
                    let u = self
                        .ring
                        .scale(&Poly::from_monic_index(idx, deg, q), FqElement::Pow(k as u32));
                    if self.field.dlog(self.ring.norm(pi, &u)).ok() == Some(1) {
                        return u;
                    }
                }
            }
        }
        unreachable!("the norm of a finite field extension is surjective")
    }
}

/// How far the support is exhausted before an answer is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SupportPolicy {
    pub max_degree: usize,
    /// Compute every degree up to the bound instead of stopping at the
    /// first repeated answer.
    pub exhaust: bool,
}

impl SupportPolicy {
    pub fn new(max_degree: usize) -> Self {
        SupportPolicy {
            max_degree,
            exhaust: false,
        }
    }

    pub fn exhaustive(max_degree: usize) -> Self {
        SupportPolicy {
            max_degree,
            exhaust: true,
        }
    }

    /// Bound from `UNRAMIFIED_MAX_D`, default 6.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_DEGREE_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map(Self::new)
                .map_err(|_| Error::Invalid(format!("{MAX_DEGREE_ENV}={v} is not a degree"))),
            Err(_) => Ok(Self::new(DEFAULT_MAX_DEGREE)),
        }
    }
}

impl Default for SupportPolicy {
    fn default() -> Self {
        Self::new(DEFAULT_MAX_DEGREE)
    }
}

/// Answer at one support bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub max_degree: usize,
    pub places: usize,
    pub rows: usize,
    pub cols: usize,
    pub factors: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnramifiedGroup {
    pub q: u64,
    pub m: u64,
    pub degree: i64,
    pub window: (i64, i64),
    pub factors: Vec<u64>,
    #[serde(skip)]
    pub presentation: Presentation,
    /// First support bound `D` whose answer agrees with `D + 1` (and, when
    /// exhausting, with every larger bound).
    pub stabilized_at: Option<usize>,
    pub stages: Vec<Stage>,
    pub note: Option<String>,
}

impl UnramifiedGroup {
    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }
}

/// `H^i_ur(F_q(t), Z/m(i))` for `i ∈ {1, 2, 3}`.
pub fn unramified(q: u64, m: u64, i: i64, policy: SupportPolicy) -> Result<UnramifiedGroup> {
    let field = FqField::of_order(q)?;
    let mut table = PlaceTable::new(&field, 0);
    unramified_with(&field, &mut table, m, i, policy)
}

/// As [`unramified`], reusing (and extending) a place table.
pub fn unramified_with(
    field: &FqField,
    table: &mut PlaceTable,
    m: u64,
    i: i64,
    policy: SupportPolicy,
) -> Result<UnramifiedGroup> {
    check_twist(field, m)?;
    let window = match i {
        1 => (0, 0),
        2 => (1, 1),
        3 => {
            return Ok(UnramifiedGroup {
                q: field.order(),
                m,
                degree: 3,
                window: (2, 2),
                factors: Vec::new(),
                presentation: Presentation::diagonal(m, &[]),
                stabilized_at: None,
                stages: Vec::new(),
                note: Some(
                    "both terms vanish: K_3 and K_2 of finite fields are zero mod m".into(),
                ),
            })
        }
        _ => return Err(Error::DegreeOutOfRange { degree: i, lo: 1, hi: 3 }),
    };
    let mut stages: Vec<Stage> = Vec::new();
    let mut stabilized_at = None;
    if policy.exhaust {
        table.extend_to(field, policy.max_degree);
        let full = KatoComplex::build_with(field, table, window.0, window.1, policy.max_degree)?;
        return unramified_exhaustive(&full, m);
    }
    for d in 1..=policy.max_degree {
        table.extend_to(field, d);
        let c = KatoComplex::build_with(field, table, window.0, window.1, d)?.with_modulus(m)?;
        stages.push(stage(&c)?);
        let n = stages.len();
        if n >= 2 && stages[n - 1].factors == stages[n - 2].factors {
            stabilized_at = Some(d - 1);
            break;
        }
    }
    finish(field, m, i, window, stages, stabilized_at, policy.max_degree)
}

/// Exhaustive answer from a complex built once at the largest support
/// bound, with modulus a multiple of `m`: every smaller bound is a truncation.
pub fn unramified_exhaustive(full: &KatoComplex, m: u64) -> Result<UnramifiedGroup> {
    check_twist(full.field(), m)?;
    let window = full.window();
    let i = match window {
        (0, 0) => 1,
        (1, _) => 2,
        _ => return Err(Error::UnsupportedWindow { i: window.0, j: window.1 }),
    };
    let reduced = full.with_modulus(m)?;
    let max_degree = full.max_degree();
    let mut stages = Vec::with_capacity(max_degree);
    for d in 1..=max_degree {
        stages.push(stage(&reduced.truncated(d))?);
    }
    let last = stages.last().map(|s| s.factors.clone());
    let stabilized_at = stages
        .iter()
        .position(|s| Some(&s.factors) == last.as_ref())
        .map(|p| p + 1)
        .filter(|&d| d < max_degree);
    finish(full.field(), m, i, window, stages, stabilized_at, max_degree)
}

fn stage(c: &KatoComplex) -> Result<Stage> {
    Ok(Stage {
        max_degree: c.max_degree(),
        places: c.support().len(),
        rows: c.differential().rows(),
        cols: c.differential().cols(),
        factors: c.homology(1)?.factors_u64(),
    })
}

fn finish(
    field: &FqField,
    m: u64,
    i: i64,
    window: (i64, i64),
    stages: Vec<Stage>,
    stabilized_at: Option<usize>,
    max_degree: usize,
) -> Result<UnramifiedGroup> {
    let Some(witness) = stabilized_at else {
        return Err(Error::NotStabilized { max_degree });
    };
    let factors = stages[witness - 1].factors.clone();
    Ok(UnramifiedGroup {
        q: field.order(),
        m,
        degree: i,
        window,
        presentation: Presentation::diagonal(m, &factors),
        factors,
        stabilized_at,
        stages,
        note: None,
    })
}

/// Cokernel of the divisor map on S-units: `CH_0(P^1)/m`.
pub fn degree_zero_homology(q: u64, m: u64, max_degree: usize) -> Result<Presentation> {
    KatoComplex::build(q, m, 0, 0, max_degree)?.homology(0)
}

/// Whether every residue of `x` vanishes.
///
/// Residues are evaluated on the support of `x` and at infinity; at every
/// other place all slots are units.
pub fn is_unramified(field: &FqField, x: &MilnorClass) -> Result<bool> {
    crate::function_field::is_unramified(field, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units_window_over_f7() {
        let c = KatoComplex::build(7, 2, 0, 0, 2).unwrap();
        assert_eq!(c.rank(1).unwrap(), 29);
        assert_eq!(c.rank(0).unwrap(), 29);
        assert_eq!(c.homology(1).unwrap().factors_u64(), vec![2]);
        assert_eq!(c.homology(0).unwrap().factors_u64(), vec![2]);
        let dense = c.to_chain_complex().unwrap();
        assert_eq!(dense.homology(1).unwrap().factors_u64(), vec![2]);
        assert_eq!(dense.homology(0).unwrap().factors_u64(), vec![2]);
    }

    #[test]
    fn symbol_window_is_unitriangular() {
        let c = KatoComplex::build(7, 2, 1, 1, 2).unwrap();
        assert_eq!(c.rank(1).unwrap(), 28);
        assert!(c.homology(1).unwrap().is_trivial());
        let dense = c.to_chain_complex().unwrap();
        assert!(dense.homology(1).unwrap().is_trivial());
        assert_eq!(dense.homology(0).unwrap().factors_u64(), vec![2]);
        let twisted = KatoComplex::build(7, 2, 1, 0, 2).unwrap();
        assert_eq!(twisted.differential(), c.differential());
    }

    #[test]
    fn lifts_have_unit_coordinate() {
        let f = FqField::new(7, 1).unwrap();
        let table = PlaceTable::new(&f, 3);
        let c = KatoComplex::build_with(&f, &table, 1, 1, 3).unwrap();
        for (col, g) in c.generators().iter().enumerate() {
            let Generator::Symbol { place, lift } = g else { panic!() };
            assert!(lift.deg() < place.deg().max(1));
            let row = col + 1;
            let at_pi = c.differential().column(col).iter().find(|e| e.0 == row).unwrap().1;
            assert_eq!(at_pi, 1);
        }
    }

    #[test]
    fn random_elements_square_to_zero() {
        for (q, m) in [(7, 2), (7, 3), (5, 4), (9, 8)] {
            for (i, j) in [(0, 0), (1, 1)] {
                let c = KatoComplex::build(q, m, i, j, 3).unwrap();
                let r = c.check_square_zero(11, 50).unwrap();
                assert_eq!(r.passed, 50, "q={q} m={m} window=({i},{j}) failures {:?}", r.failures);
            }
        }
    }

    #[test]
    fn steinberg_symbols_have_zero_coordinates() {
        let f = FqField::new(7, 1).unwrap();
        let c = KatoComplex::build(7, 6, 1, 1, 3).unwrap();
        let r = PolyRing::new(&f);
        let a = RationalFunction::from_poly(&f, &r.from_ints(&[2, 1])).unwrap();
        let b = a.one_minus(&f).unwrap().unwrap();
        let x = MilnorClass::symbol(6, vec![a, b]);
        assert!(c.coordinates(&x).unwrap().iter().all(|&v| v == 0));
    }

    #[test]
    fn unramified_examples() {
        let g = unramified(7, 2, 1, SupportPolicy::new(4)).unwrap();
        assert_eq!(g.factors, vec![2]);
        assert_eq!(g.stabilized_at, Some(1));
        assert_eq!(unramified(13, 3, 1, SupportPolicy::new(4)).unwrap().factors, vec![3]);
        assert!(unramified(7, 2, 2, SupportPolicy::exhaustive(3)).unwrap().factors.is_empty());
        assert!(unramified(7, 2, 3, SupportPolicy::new(3)).unwrap().note.is_some());
        assert_eq!(
            unramified(7, 5, 1, SupportPolicy::new(3)).unwrap_err(),
            Error::TwistMismatch { m: 5, q_minus_one: 6 }
        );
        assert!(matches!(
            unramified(7, 2, 1, SupportPolicy::new(1)),
            Err(Error::NotStabilized { max_degree: 1 })
        ));
    }

    #[test]
    fn degree_zero_examples() {
        assert_eq!(degree_zero_homology(7, 2, 1).unwrap().factors_u64(), vec![2]);
        assert_eq!(degree_zero_homology(9, 4, 2).unwrap().factors_u64(), vec![4]);
        assert!(degree_zero_homology(7, 1, 2).unwrap().is_trivial());
    }

    #[test]
    fn higher_windows_vanish() {
        let c = KatoComplex::build(7, 2, 2, 2, 2).unwrap();
        assert_eq!((c.rank(0).unwrap(), c.rank(1).unwrap()), (0, 0));
        assert_eq!(
            KatoComplex::build(7, 2, 0, 1, 2).unwrap_err(),
            Error::UnsupportedWindow { i: 0, j: 1 }
        );
    }
}
