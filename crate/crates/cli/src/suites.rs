//! Seeded property suites behind `verify`.
//!
//! Every trial draws its own seed from a ChaCha8 stream keyed by the suite
//! seed, so a failing trial can be replayed alone.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use unramified::algebra::zmod::gcd;
use unramified::algebra::{smith_normal_form, IntMatrix};
use unramified::field::FqField;
use unramified::function_field::random::{random_steinberg_pair, random_symbol};
use unramified::function_field::{check_twist, is_unramified, reciprocity_defect, MilnorClass, Place, PlaceTable};
use unramified::kato::KatoComplex;
use unramified::laurent::{LaurentTower, TruncatedSeries, MIN_PRECISION};
use unramified::spectral::{synthetic, FilteredComplex, SyntheticConfig};
use unramified::Error;

use crate::CliError;

pub const SUITES: [&str; 7] = ["complex", "reciprocity", "steinberg", "lemma42", "pages", "units", "snf"];

/// Field orders and moduli exercised when none are given.
const GRID_ORDERS: [u64; 4] = [5, 7, 9, 13];
const LAURENT_ORDERS: [u64; 4] = [4, 5, 7, 9];
const SYNTHETIC_MODULI: [u64; 8] = [2, 3, 4, 5, 6, 8, 9, 12];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub trial_seed: u64,
    pub reason: String,
    pub instance: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn failed(&self) -> usize {
        self.trials - self.passed
    }
}

/// Outcome of one trial: `Err((reason, instance))` on failure.
type Trial = Result<(), (String, Value)>;

pub fn run_suite(
    suite: &str,
    seed: u64,
    trials: usize,
    q: Option<u64>,
    m: Option<u64>,
    max_degree: usize,
) -> Result<SuiteReport, CliError> {
    let mut runner: Box<dyn FnMut(&mut ChaCha8Rng) -> Trial> = match suite {
        "complex" => {
            let grid = grid(q, m)?;
            let mut cache: BTreeMap<(u64, i64), KatoComplex> = BTreeMap::new();
            Box::new(move |rng| complex_trial(rng, &grid, &mut cache, max_degree))
        }
        "reciprocity" => {
            let grid = fields(grid(q, m)?)?;
            Box::new(move |rng| reciprocity_trial(rng, &grid))
        }
        "steinberg" => {
            let grid = fields(grid(q, m)?)?;
            Box::new(move |rng| steinberg_trial(rng, &grid))
        }
        "lemma42" => {
            let moduli = moduli(m)?;
            Box::new(move |rng| four_term_trial(rng, &moduli))
        }
        "pages" => {
            let moduli = moduli(m)?;
            Box::new(move |rng| pages_trial(rng, &moduli))
        }
        "units" => {
            let towers = towers(q, m)?;
            Box::new(move |rng| units_trial(rng, &towers))
        }
        "snf" => Box::new(snf_trial),
        other => return Err(CliError::UnknownSuite(other.to_string())),
    };
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = 0;
    let mut failures = Vec::new();
    for trial in 0..trials {
        let trial_seed: u64 = master.gen();
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
        match runner(&mut rng) {
            Ok(()) => passed += 1,
            Err((reason, instance)) => failures.push(Failure {
                trial,
                trial_seed,
                reason,
                instance,
            }),
        }
    }
    Ok(SuiteReport {
        suite: suite.to_string(),
        seed,
        trials,
        passed,
        failures,
    })
}

fn divisors_above_one(n: u64) -> Vec<u64> {
    (2..=n).filter(|d| n % d == 0).collect()
}

/// `(q, m)` pairs with `m | q - 1`.
fn grid(q: Option<u64>, m: Option<u64>) -> Result<Vec<(u64, u64)>, CliError> {
    let orders: Vec<u64> = match q {
        Some(q) => {
            FqField::of_order(q)?;
            vec![q]
        }
        None => GRID_ORDERS.to_vec(),
    };
    let mut points = Vec::new();
    for &q in &orders {
        let mut ms = divisors_above_one(q - 1);
        if ms.is_empty() {
            ms.push(1);
        }
        match m {
            Some(m) if (q - 1) % m == 0 && m > 0 => points.push((q, m)),
            Some(_) => {}
            None => points.extend(ms.into_iter().map(|m| (q, m))),
        }
    }
    if points.is_empty() {
        let q = orders[0];
        return Err(Error::TwistMismatch {
            m: m.unwrap_or(0),
            q_minus_one: q - 1,
        }
        .into());
    }
    Ok(points)
}

fn fields(points: Vec<(u64, u64)>) -> Result<Vec<(FqField, u64)>, CliError> {
    let mut out = Vec::with_capacity(points.len());
    for (q, m) in points {
        let field = FqField::of_order(q)?;
        check_twist(&field, m)?;
        out.push((field, m));
    }
    Ok(out)
}

fn moduli(m: Option<u64>) -> Result<Vec<u64>, CliError> {
    match m {
        Some(0) => Err(Error::Invalid("modulus must be positive".into()).into()),
        Some(m) => Ok(vec![m]),
        None => Ok(SYNTHETIC_MODULI.to_vec()),
    }
}

/// `(tower base, modulus)` pairs with `p ∤ m`, `m <= 6`.
fn towers(q: Option<u64>, m: Option<u64>) -> Result<Vec<(FqField, u64)>, CliError> {
    let orders: Vec<u64> = q.map(|q| vec![q]).unwrap_or_else(|| LAURENT_ORDERS.to_vec());
    let mut out = Vec::new();
    for q in orders {
        let field = FqField::of_order(q)?;
        let p = field.characteristic();
        match m {
            Some(m) if m == 0 || m % p == 0 => {
                return Err(Error::CharDividesModulus { p, m }.into());
            }
            Some(m) => out.push((field.clone(), m)),
            None => out.extend((1..=6).filter(|m| m % p != 0).map(|m| (field.clone(), m))),
        }
    }
    Ok(out)
}

fn pick<'a, T, R: Rng>(rng: &mut R, items: &'a [T]) -> &'a T {
    &items[rng.gen_range(0..items.len())]
}

fn complex_trial(
    rng: &mut ChaCha8Rng,
    grid: &[(u64, u64)],
    cache: &mut BTreeMap<(u64, i64), KatoComplex>,
    max_degree: usize,
) -> Trial {
    let &(q, m) = pick(rng, grid);
    let window = if rng.gen_bool(0.5) { 0 } else { 1 };
    let seed: u64 = rng.gen();
    let instance = json!({ "q": q, "m": m, "window": [window, window], "max_degree": max_degree, "seed": seed });
    let fail = |reason: String| (reason, instance.clone());
    if !cache.contains_key(&(q, window)) {
        let field = FqField::of_order(q).map_err(|e| fail(e.to_string()))?;
        let table = PlaceTable::new(&field, max_degree);
        let full = KatoComplex::build_with(&field, &table, window, window, max_degree).map_err(|e| fail(e.to_string()))?;
        cache.insert((q, window), full);
    }
    let complex = cache[&(q, window)].with_modulus(m).map_err(|e| fail(e.to_string()))?;
    let report = complex.check_square_zero(seed, 1).map_err(|e| fail(e.to_string()))?;
    if report.passed == 1 {
        Ok(())
    } else {
        Err(fail("d∘d is nonzero on a random element".into()))
    }
}

fn symbol_places(x: &MilnorClass) -> Vec<Place> {
    let mut places: Vec<Place> = x.support().into_iter().collect();
    if !places.contains(&Place::Infinity) {
        places.push(Place::Infinity);
    }
    places
}

fn reciprocity_trial(rng: &mut ChaCha8Rng, grid: &[(FqField, u64)]) -> Trial {
    let (field, m) = pick(rng, grid);
    let n = rng.gen_range(1..=2);
    let x = random_symbol(field, rng, n, *m);
    let instance = json!({ "q": field.order(), "symbol": x.to_json(field) });
    match reciprocity_defect(field, &x, &symbol_places(&x)) {
        Ok(defect) if defect.value == 0 => Ok(()),
        Ok(defect) => Err((format!("reciprocity defect {}", defect.value), instance)),
        Err(e) => Err((e.to_string(), instance)),
    }
}

fn steinberg_trial(rng: &mut ChaCha8Rng, grid: &[(FqField, u64)]) -> Trial {
    let (field, m) = pick(rng, grid);
    let (f, g) = random_steinberg_pair(field, rng, 3);
    let x = MilnorClass::symbol(*m, vec![f, g]);
    let instance = json!({ "q": field.order(), "symbol": x.to_json(field) });
    match is_unramified(field, &x) {
        Ok(true) => Ok(()),
        Ok(false) => Err(("{f, 1-f} has a nonzero residue".into(), instance)),
        Err(e) => Err((e.to_string(), instance)),
    }
}

fn four_term_trial(rng: &mut ChaCha8Rng, moduli: &[u64]) -> Trial {
    let mut config = SyntheticConfig::new(*pick(rng, moduli));
    config.vanish_above_diagonal = true;
    let complex = synthetic(rng, config).map_err(|e| (e.to_string(), Value::Null))?;
    let instance = complex.to_json();
    let fail = |reason: String| (reason, instance.clone());
    let seq = complex.four_term_sequence().map_err(|e| fail(e.to_string()))?;
    if !seq.is_exact() {
        return Err(fail(format!(
            "not exact (at E_2^{{0,3}}: {}, at E_2^{{2,2}}: {}); groups {:?}",
            seq.exact_at_edge, seq.exact_at_d2, seq.groups
        )));
    }
    if !complex.convergence_holds().map_err(|e| fail(e.to_string()))? {
        return Err(fail("E_inf does not count H".into()));
    }
    Ok(())
}

/// Page recursion for r = 1, 2, 3, stabilization, counting convergence and
/// the edge image.
pub fn check_pages(complex: &FilteredComplex) -> Result<Option<String>, Error> {
    for r in 1..=3 {
        if !complex.page_recursion_holds(r)? {
            return Ok(Some(format!("E_{} is not the homology of E_{r}", r + 1)));
        }
    }
    let inf = complex.infinity_page();
    let e_inf = complex.page(inf)?;
    if e_inf.summary() != complex.page(inf + 1)?.summary() {
        return Ok(Some(format!("E_{inf} differs from E_{}", inf + 1)));
    }
    if !complex.convergence_holds()? {
        return Ok(Some("E_inf does not count H".into()));
    }
    for n in 0..=complex.length() as i64 {
        let edge = complex.edge_map(n)?;
        if edge.image_order() != e_inf.entries[&(0, n)].module.order() {
            return Ok(Some(format!("edge image in degree {n} is not E_inf^{{0,{n}}}")));
        }
    }
    Ok(None)
}

fn pages_trial(rng: &mut ChaCha8Rng, moduli: &[u64]) -> Trial {
    let config = SyntheticConfig::new(*pick(rng, moduli));
    let complex = synthetic(rng, config).map_err(|e| (e.to_string(), Value::Null))?;
    match check_pages(&complex) {
        Ok(None) => Ok(()),
        Ok(Some(reason)) => Err((reason, complex.to_json())),
        Err(e) => Err((e.to_string(), complex.to_json())),
    }
}

fn one_unit_part(tower: &LaurentTower, x: &TruncatedSeries) -> TruncatedSeries {
    let f = tower.base();
    let lead = f.inv(x.coeffs[0]).expect("leading coefficient is nonzero");
    TruncatedSeries {
        valuation: vec![0; x.valuation.len()],
        coeffs: x.coeffs.iter().map(|&c| f.mul(lead, c)).collect(),
    }
}

fn units_trial(rng: &mut ChaCha8Rng, towers: &[(FqField, u64)]) -> Trial {
    let (field, m) = pick(rng, towers);
    let r = rng.gen_range(1..=2);
    let instance = json!({ "q": field.order(), "r": r, "m": m });
    let fail = |reason: String| (reason, instance.clone());
    let tower = LaurentTower::new(field.clone(), r, MIN_PRECISION).map_err(|e| fail(e.to_string()))?;
    let x = tower.random_element(rng);
    let y = tower.random_element(rng);
    let class = |z: &TruncatedSeries| tower.class(z, *m).map_err(|e| fail(e.to_string()));
    let (cx, cy, cxy) = (class(&x)?, class(&y)?, class(&tower.mul(&x, &y))?);
    let g = gcd(*m, field.units());
    let sum_ok = cxy.leading == (cx.leading + cy.leading) % g
        && cxy
            .valuation
            .iter()
            .zip(cx.valuation.iter().zip(&cy.valuation))
            .all(|(&s, (&a, &b))| s == (a + b) % m);
    if !sum_ok {
        return Err(fail("class map is not additive".into()));
    }
    let power = class(&tower.pow(&x, *m as i64))?;
    if power.leading != 0 || power.valuation.iter().any(|&v| v != 0) {
        return Err(fail("an m-th power has a nontrivial class".into()));
    }
    let u = one_unit_part(&tower, &x);
    let root = tower.hensel_mth_root(&u, *m).map_err(|e| fail(e.to_string()))?;
    if tower.pow(&root, *m as i64) != u {
        return Err(fail("Hensel root is wrong".into()));
    }
    let expected: Vec<u64> = {
        let mut v: Vec<u64> = vec![*m; r];
        v.push(gcd(*m, field.units()));
        v.retain(|&f| f != 1);
        v
    };
    let computed = tower.units_mod_m(*m).map_err(|e| fail(e.to_string()))?.factors_u64();
    let mut expected_sorted = expected;
    expected_sorted.sort_unstable();
    let mut computed_sorted = computed;
    computed_sorted.sort_unstable();
    if expected_sorted != computed_sorted {
        return Err(fail(format!("units mod m {computed_sorted:?}, expected {expected_sorted:?}")));
    }
    Ok(())
}

fn det(a: &[Vec<i128>]) -> i128 {
    match a.len() {
        0 => 1,
        1 => a[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = a[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * a[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect())
        .collect()
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i128(b, a % b)
    }
}

/// Invariant factors as ratios of determinantal divisors.
fn determinantal_factors(a: &[Vec<i128>], rows: usize, cols: usize) -> Vec<i128> {
    let mut divisors = vec![1i128];
    for k in 1..=rows.min(cols) {
        let mut g = 0;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| a[r][c]).collect()).collect();
                g = gcd_i128(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| w[1] / w[0]).collect()
}

fn snf_trial(rng: &mut ChaCha8Rng) -> Trial {
    let rows = rng.gen_range(1..=4);
    let cols = rng.gen_range(1..=4);
    let a: Vec<Vec<i128>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-12i128..=12)).collect())
        .collect();
    let instance = json!({ "matrix": a.iter().map(|r| r.iter().map(|&x| x as i64).collect::<Vec<_>>()).collect::<Vec<_>>() });
    let fail = |reason: String| (reason, instance.clone());
    let m = IntMatrix::from_rows(cols, &a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<Vec<BigInt>>>())
        .map_err(|e| fail(e.to_string()))?;
    let snf = smith_normal_form(&m);
    let got: Vec<i128> = snf
        .factors
        .iter()
        .map(|f| i128::try_from(f).expect("small entries"))
        .collect();
    if got.windows(2).any(|w| w[1] % w[0] != 0) {
        return Err(fail(format!("factors {got:?} do not form a divisor chain")));
    }
    let product = snf.left.mul(&m).and_then(|x| x.mul(&snf.right)).map_err(|e| fail(e.to_string()))?;
    for r in 0..rows {
        for c in 0..cols {
            let expected = if r == c && r < got.len() { BigInt::from(got[r]) } else { BigInt::from(0) };
            if product.row(r)[c] != expected {
                return Err(fail("left * A * right is not diagonal".into()));
            }
        }
    }
    let oracle = determinantal_factors(&a, rows, cols);
    if got != oracle {
        return Err(fail(format!("factors {got:?}, determinantal divisors give {oracle:?}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinantal_oracle() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        assert_eq!(determinantal_factors(&a, 3, 3), vec![2, 6, 12]);
    }

    #[test]
    fn every_suite_runs() {
        for suite in SUITES {
            let report = run_suite(suite, 7, 5, None, None, 1).unwrap();
            assert_eq!(report.passed, 5, "{suite}: {:?}", report.failures);
        }
    }
}
