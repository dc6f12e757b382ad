//! Spectral sequences of filtered cochain complexes over `Z/m`.
//!
//! The complex is `C^0 -> ... -> C^N` with free terms and a filtration by
//! coordinate subspaces: every basis vector carries a level, and
//! `F^p C^n` is spanned by the basis vectors of level `>= p`. Levels in `C^n`
//! lie in `[0, n]`, so the sequence sits in the first quadrant.
//!
//! Pages use the subquotients
//! `E_r^{p,q} = Z_r^{p,n} / (Z_{r-1}^{p+1,n} + d Z_{r-1}^{p-r+1,n-1})` with
//! `n = p + q` and `Z_r^{p,n} = {x ∈ F^p C^n : dx ∈ F^{p+r} C^{n+1}}`.
//! Each entry is presented on the Hermite basis of `Z_r^{p,n}`.

mod coniveau;
mod synthetic;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::{ModMatrix, Presentation, Submodule, ZmHom, ZmModule};
use crate::algebra::zmod::mod_reduce;
use crate::error::{Error, Result};

pub use coniveau::{coniveau_curve, CurveInstance};
pub use synthetic::{synthetic, SyntheticConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredComplex {
    m: u64,
    dims: Vec<usize>,
    /// `d^n : C^n -> C^{n+1}` for `n < N`.
    differentials: Vec<ModMatrix>,
    /// Filtration level of every basis vector.
    levels: Vec<Vec<usize>>,
}

impl FilteredComplex {
    pub fn new(
        m: u64,
        differentials: Vec<ModMatrix>,
        levels: Vec<Vec<usize>>,
    ) -> Result<FilteredComplex> {
        if m == 0 {
            return Err(Error::Invalid("modulus must be positive".into()));
        }
        if levels.is_empty() {
            return Err(Error::MalformedFiltration("a complex needs at least one term".into()));
        }
        let dims: Vec<usize> = levels.iter().map(Vec::len).collect();
        if differentials.len() + 1 != dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} terms need {} differentials, got {}",
                dims.len(),
                dims.len() - 1,
                differentials.len()
            )));
        }
        for (n, d) in differentials.iter().enumerate() {
            if d.rows != dims[n + 1] || d.cols != dims[n] || d.m != m {
                return Err(Error::DimensionMismatch(format!(
                    "d^{n} is {}x{} mod {}, expected {}x{} mod {m}",
                    d.rows,
                    d.cols,
                    d.m,
                    dims[n + 1],
                    dims[n]
                )));
            }
        }
        for (n, lv) in levels.iter().enumerate() {
            if let Some(&bad) = lv.iter().find(|&&p| p > n) {
                return Err(Error::MalformedFiltration(format!(
                    "level {bad} in C^{n} leaves the first quadrant"
                )));
            }
        }
        for (n, d) in differentials.iter().enumerate() {
            for r in 0..d.rows {
                for c in 0..d.cols {
                    if d.get(r, c) != 0 && levels[n + 1][r] < levels[n][c] {
                        return Err(Error::MalformedFiltration(format!(
                            "d^{n} lowers the filtration at ({r}, {c})"
                        )));
                    }
                }
            }
        }
        for n in 1..differentials.len() {
            if !differentials[n].mul(&differentials[n - 1])?.is_zero() {
                return Err(Error::NotAComplex { degree: n as i64 });
            }
        }
        Ok(FilteredComplex {
            m,
            dims,
            differentials,
            levels,
        })
    }

    /// Builds from explicit filtration steps: `filtration[n][p]` lists the
    /// basis indices of `F^p C^n`, starting with all of `C^n` at `p = 0`.
    pub fn from_steps(
        m: u64,
        dims: &[usize],
        differentials: Vec<ModMatrix>,
        filtration: &[Vec<Vec<usize>>],
    ) -> Result<FilteredComplex> {
        if filtration.len() != dims.len() {
            return Err(Error::MalformedFiltration(format!(
                "{} filtrations for {} terms",
                filtration.len(),
                dims.len()
            )));
        }
        let mut levels = Vec::with_capacity(dims.len());
        for (n, (steps, &dim)) in filtration.iter().zip(dims).enumerate() {
            let mut level = vec![0usize; dim];
            let mut previous: Option<Vec<usize>> = None;
            for (p, step) in steps.iter().enumerate() {
                let mut sorted = step.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.iter().any(|&b| b >= dim) {
                    return Err(Error::MalformedFiltration(format!("F^{p} C^{n} has an index out of range")));
                }
                match &previous {
                    None if sorted.len() != dim => {
                        return Err(Error::MalformedFiltration(format!("F^0 C^{n} must be all of C^{n}")));
                    }
                    Some(prev) if !sorted.iter().all(|b| prev.binary_search(b).is_ok()) => {
                        return Err(Error::MalformedFiltration(format!("F^{p} C^{n} is not inside F^{}", p - 1)));
                    }
                    _ => {}
                }
                for &b in &sorted {
                    level[b] = p;
                }
                previous = Some(sorted);
            }
            if previous.is_none() && dim > 0 {
                return Err(Error::MalformedFiltration(format!("C^{n} has no filtration")));
            }
            levels.push(level);
        }
        Self::new(m, differentials, levels)
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// Top degree `N`.
    pub fn length(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    pub fn differentials(&self) -> &[ModMatrix] {
        &self.differentials
    }

    /// Largest filtration level in use.
    pub fn depth(&self) -> usize {
        self.levels.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Rank of `C^n` (zero outside `[0, N]`).
    pub fn dim(&self, n: i64) -> usize {
        if n < 0 {
            return 0;
        }
        self.dims.get(n as usize).copied().unwrap_or(0)
    }

    /// `d^n`, zero outside the stored range.
    pub fn d(&self, n: i64) -> ModMatrix {
        if n >= 0 {
            if let Some(d) = self.differentials.get(n as usize) {
                return d.clone();
            }
        }
        ModMatrix::zeros(self.dim(n + 1), self.dim(n), self.m)
    }

    /// `F^p C^n`.
    pub fn filtered(&self, p: i64, n: i64) -> Submodule {
        let dim = self.dim(n);
        if dim == 0 {
            return Submodule::zero(0, self.m);
        }
        let lv = &self.levels[n as usize];
        Submodule::coordinate(dim, self.m, (0..dim).filter(|&b| lv[b] as i64 >= p))
    }

    /// `Z_r^{p,n}`.
    pub fn cycles(&self, r: i64, p: i64, n: i64) -> Submodule {
        let f = self.filtered(p, n);
        if self.dim(n + 1) == 0 || self.dim(n) == 0 {
            return f;
        }
        let pre = Submodule::preimage(&self.d(n), &self.filtered(p + r, n + 1));
        f.intersect(&pre)
    }

    /// `Z_{r-1}^{p+1,n} + d Z_{r-1}^{p-r+1,n-1}`.
    pub fn denominator(&self, r: i64, p: i64, n: i64) -> Submodule {
        let upper = self.cycles(r - 1, p + 1, n);
        if self.dim(n - 1) == 0 || self.dim(n) == 0 {
            return upper;
        }
        let lower = self.cycles(r - 1, p - r + 1, n - 1).image(&self.d(n - 1));
        upper.sum(&lower)
    }

    /// `ker d^n`.
    pub fn cocycles(&self, n: i64) -> Submodule {
        if self.dim(n) == 0 || self.dim(n + 1) == 0 {
            return Submodule::full(self.dim(n), self.m);
        }
        Submodule::preimage(&self.d(n), &Submodule::zero(self.dim(n + 1), self.m))
    }

    /// `im d^{n-1}`.
    pub fn coboundaries(&self, n: i64) -> Submodule {
        if self.dim(n) == 0 || self.dim(n - 1) == 0 {
            return Submodule::zero(self.dim(n), self.m);
        }
        Submodule::full(self.dim(n - 1), self.m).image(&self.d(n - 1))
    }

    /// `H^n` presented on the Hermite basis of the cocycles.
    pub fn cohomology_module(&self, n: i64) -> Result<ZmModule> {
        self.cocycles(n).quotient(&self.coboundaries(n))
    }

    pub fn cohomology(&self, n: i64) -> Result<Presentation> {
        Ok(Presentation::from_module(&self.cohomology_module(n)?))
    }

    /// A page index past which every page equals `E_∞`.
    pub fn infinity_page(&self) -> usize {
        self.length() + self.depth() + 2
    }

    fn entry(&self, r: i64, p: i64, q: i64) -> Result<PageEntry> {
        let n = p + q;
        let cycles = self.cycles(r, p, n);
        let denominator = self.denominator(r, p, n);
        let module = cycles.quotient(&denominator)?;
        let factors = module.invariant_factors();
        Ok(PageEntry {
            p,
            q,
            cycles,
            denominator,
            module,
            factors,
        })
    }

    /// The page `E_r` (`r >= 1`) with its differentials.
    pub fn page(&self, r: usize) -> Result<SSPage> {
        if r == 0 {
            return Err(Error::Invalid("pages start at r = 1".into()));
        }
        let ri = r as i64;
        let mut entries = BTreeMap::new();
        for n in 0..=self.length() as i64 {
            for p in 0..=n.min(self.depth() as i64) {
                entries.insert((p, n - p), self.entry(ri, p, n - p)?);
            }
        }
        let mut differentials = BTreeMap::new();
        for (&(p, q), source) in &entries {
            let Some(target) = entries.get(&(p + ri, q - ri + 1)) else {
                continue;
            };
            let d = self.d(p + q);
            let gens = source.cycles.basis();
            let mut matrix = ModMatrix::zeros(target.cycles.basis().len(), gens.len(), self.m);
            for (c, z) in gens.iter().enumerate() {
                let dz = d.apply(z);
                let coords = target.cycles.coordinates(&dz).ok_or_else(|| {
                    Error::MalformedFiltration(format!("d leaves Z_{r} at ({p}, {q})"))
                })?;
                for (row, x) in coords.into_iter().enumerate() {
                    matrix.set(row, c, mod_reduce(x, self.m));
                }
            }
            let hom = ZmHom::new(source.module.clone(), target.module.clone(), matrix)?;
            differentials.insert((p, q), hom);
        }
        Ok(SSPage {
            r,
            m: self.m,
            entries,
            differentials,
        })
    }

    /// Chain-level `d` followed by reduction into `E_r^{p+r, q-r+1}`:
    /// the canonical representative of `d_r [x]` for `x ∈ Z_r^{p,n}`.
    pub fn apply_differential(&self, page: &SSPage, p: i64, q: i64, x: &[u64]) -> Result<Vec<u64>> {
        let r = page.r as i64;
        let source = page
            .entries
            .get(&(p, q))
            .ok_or_else(|| Error::DegreeOutOfRange { degree: p + q, lo: 0, hi: self.length() as i64 })?;
        if !source.cycles.contains(x) {
            return Err(Error::Invalid(format!("vector is not in Z_{r} at ({p}, {q})")));
        }
        let dx = self.d(p + q).apply(x);
        Ok(match page.entries.get(&(p + r, q - r + 1)) {
            Some(target) => target.denominator.reduce(&dx).0,
            None => vec![0; dx.len()],
        })
    }

    /// `H^n -> E_2^{0,n}`: the class of a cocycle in `E_∞^{0,n} ⊆ E_2^{0,n}`.
    pub fn edge_map(&self, n: i64) -> Result<ZmHom> {
        let page = self.page(2)?;
        self.edge_map_on(&page, n)
    }

    fn edge_map_on(&self, page: &SSPage, n: i64) -> Result<ZmHom> {
        let source = self.cohomology_module(n)?;
        let target = page
            .entries
            .get(&(0, n))
            .ok_or_else(|| Error::DegreeOutOfRange { degree: n, lo: 0, hi: self.length() as i64 })?;
        let cocycles = self.cocycles(n);
        let gens = cocycles.basis();
        let mut matrix = ModMatrix::zeros(target.cycles.basis().len(), gens.len(), self.m);
        for (c, z) in gens.iter().enumerate() {
            let coords = target
                .cycles
                .coordinates(z)
                .expect("cocycles lie in every Z_r^0");
            for (row, x) in coords.into_iter().enumerate() {
                matrix.set(row, c, mod_reduce(x, self.m));
            }
        }
        ZmHom::new(source, target.module.clone(), matrix)
    }

    /// The sequence `H^3 -> E_2^{0,3} -> E_2^{2,2} -> H^4`, valid when
    /// `E_2^{p,q} = 0` for all `p > q`.
    pub fn four_term_sequence(&self) -> Result<FourTermSequence> {
        let page = self.page(2)?;
        if let Some(&(p, q)) = page
            .entries
            .iter()
            .find(|(&(p, q), e)| p > q && !e.factors.is_empty())
            .map(|(k, _)| k)
        {
            return Err(Error::HypothesisFailed {
                p: p as usize,
                q: q as usize,
            });
        }
        let zero_entry = |p: i64, q: i64| -> Result<PageEntry> {
            match page.entries.get(&(p, q)) {
                Some(e) => Ok(e.clone()),
                None => self.entry(2, p, q),
            }
        };
        let e03 = zero_entry(0, 3)?;
        let e22 = zero_entry(2, 2)?;
        let edge = if page.entries.contains_key(&(0, 3)) {
            self.edge_map_on(&page, 3)?
        } else {
            ZmHom::new(
                self.cohomology_module(3)?,
                e03.module.clone(),
                ModMatrix::zeros(e03.cycles.basis().len(), self.cocycles(3).basis().len(), self.m),
            )?
        };
        let d2 = match page.differentials.get(&(0, 3)) {
            Some(h) => h.clone(),
            None => ZmHom::new(
                e03.module.clone(),
                e22.module.clone(),
                ModMatrix::zeros(e22.cycles.basis().len(), e03.cycles.basis().len(), self.m),
            )?,
        };
        let h4 = self.cohomology_module(4)?;
        let cocycles4 = self.cocycles(4);
        // f: lift z ∈ Z_2^{2,4} to a cocycle z - w with w ∈ F^3 C^4.
        let d4 = self.d(4);
        let f3 = self.filtered(3, 4);
        let lifts: Vec<Vec<u64>> = f3.basis().iter().map(|w| d4.apply(w)).collect();
        let gens = e22.cycles.basis();
        let mut matrix = ModMatrix::zeros(cocycles4.basis().len(), gens.len(), self.m);
        for (c, z) in gens.iter().enumerate() {
            let dz = d4.apply(z);
            let coeffs = if dz.iter().all(|&x| x == 0) {
                vec![0; lifts.len()]
            } else {
                Submodule::express(&dz, &lifts, self.m).ok_or(Error::HypothesisFailed { p: 2, q: 2 })?
            };
            let mut cocycle = z.clone();
            for (k, w) in f3.basis().iter().enumerate() {
                for (x, &wi) in cocycle.iter_mut().zip(w) {
                    *x = ((*x as u128 + (self.m - coeffs[k] % self.m) as u128 * wi as u128) % self.m as u128) as u64;
                }
            }
            let coords = cocycles4
                .coordinates(&cocycle)
                .ok_or(Error::HypothesisFailed { p: 2, q: 2 })?;
            for (row, x) in coords.into_iter().enumerate() {
                matrix.set(row, c, mod_reduce(x, self.m));
            }
        }
        let f = ZmHom::new(e22.module.clone(), h4.clone(), matrix)?;
        let exact_at_edge = edge.exact_with(&d2)?;
        let exact_at_d2 = d2.exact_with(&f)?;
        Ok(FourTermSequence {
            groups: [
                edge.source.invariant_factors(),
                e03.factors.clone(),
                e22.factors.clone(),
                h4.invariant_factors(),
            ],
            edge,
            d2,
            f,
            exact_at_edge,
            exact_at_d2,
        })
    }

    /// `E_2^{p,q} = 0` whenever `p > dim_x` or `p > q`.
    pub fn vanishing_profile(&self, dim_x: usize) -> Result<bool> {
        let page = self.page(2)?;
        Ok(page
            .entries
            .iter()
            .all(|(&(p, q), e)| (p <= dim_x as i64 && p <= q) || e.factors.is_empty()))
    }

    /// `E_{r+1}^{p,q} ≅ ker d_r / im d_r` at every entry.
    pub fn page_recursion_holds(&self, r: usize) -> Result<bool> {
        let page = self.page(r)?;
        let next = self.page(r + 1)?;
        let ri = r as i64;
        for (&(p, q), entry) in &page.entries {
            let ker = match page.differentials.get(&(p, q)) {
                Some(out) => out.kernel(),
                None => Submodule::full(entry.module.generators(), self.m),
            };
            let im = match page.differentials.get(&(p - ri, q + ri - 1)) {
                Some(inc) => inc.image(),
                None => entry.module.relations().clone(),
            };
            let homology = ker.quotient(&im)?;
            if homology.invariant_factors() != next.entries[&(p, q)].factors {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `Π_{p+q=n} |E_∞^{p,q}| = |H^n|` for every `n`.
    pub fn convergence_holds(&self) -> Result<bool> {
        let page = self.page(self.infinity_page())?;
        for n in 0..=self.length() as i64 {
            let total: BigUint = page
                .entries
                .iter()
                .filter(|(&(p, q), _)| p + q == n)
                .fold(BigUint::one(), |acc, (_, e)| acc * e.module.order());
            if total != self.cohomology_module(n)?.order() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let repr = FilteredRepr {
            m: self.m,
            dims: self.dims.clone(),
            differentials: self.differentials.iter().map(ModMatrix::to_rows).collect(),
            filtration: self
                .levels
                .iter()
                .map(|lv| {
                    let top = lv.iter().copied().max().unwrap_or(0);
                    (0..=top)
                        .map(|p| (0..lv.len()).filter(|&b| lv[b] >= p).collect())
                        .collect()
                })
                .collect(),
        };
        serde_json::to_value(repr).expect("plain data serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<FilteredComplex> {
        let repr: FilteredRepr = serde_json::from_value(value.clone())
            .map_err(|e| Error::Invalid(format!("bad filtered complex JSON: {e}")))?;
        let differentials = repr
            .differentials
            .iter()
            .enumerate()
            .map(|(n, rows)| {
                let cols = repr.dims.get(n).copied().unwrap_or(0);
                if rows.is_empty() {
                    Ok(ModMatrix::zeros(0, cols, repr.m))
                } else {
                    ModMatrix::from_rows(cols, repr.m, rows)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_steps(repr.m, &repr.dims, differentials, &repr.filtration)
    }
}

#[derive(Serialize, Deserialize)]
struct FilteredRepr {
    m: u64,
    dims: Vec<usize>,
    differentials: Vec<Vec<Vec<u64>>>,
    filtration: Vec<Vec<Vec<usize>>>,
}

/// One entry `E_r^{p,q}`, presented on the Hermite basis of its cycles.
#[derive(Debug, Clone)]
pub struct PageEntry {
    pub p: i64,
    pub q: i64,
    pub cycles: Submodule,
    pub denominator: Submodule,
    pub module: ZmModule,
    pub factors: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct SSPage {
    pub r: usize,
    pub m: u64,
    pub entries: BTreeMap<(i64, i64), PageEntry>,
    /// `d_r` out of `(p, q)`, when the target is in range.
    pub differentials: BTreeMap<(i64, i64), ZmHom>,
}

impl SSPage {
    pub fn factors(&self, p: i64, q: i64) -> Vec<u64> {
        self.entries.get(&(p, q)).map(|e| e.factors.clone()).unwrap_or_default()
    }

    /// `(p, q, invariant factors)` for every entry, in order.
    pub fn summary(&self) -> Vec<(i64, i64, Vec<u64>)> {
        self.entries
            .iter()
            .map(|(&(p, q), e)| (p, q, e.factors.clone()))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct FourTermSequence {
    /// `H^3`, `E_2^{0,3}`, `E_2^{2,2}`, `H^4` as invariant factors.
    pub groups: [Vec<u64>; 4],
    pub edge: ZmHom,
    pub d2: ZmHom,
    pub f: ZmHom,
    pub exact_at_edge: bool,
    pub exact_at_d2: bool,
}

impl FourTermSequence {
    pub fn is_exact(&self) -> bool {
        self.exact_at_edge && self.exact_at_d2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_term(m: u64, a: u64) -> FilteredComplex {
        // C^0 = Z/m at level 0 -> C^1 = Z/m at level 1, multiplication by a.
        let d = ModMatrix::from_rows(1, m, &[vec![a]]).unwrap();
        FilteredComplex::new(m, vec![d], vec![vec![0], vec![1]]).unwrap()
    }

    #[test]
    fn short_filtration_degenerates_at_two() {
        let f = two_term(4, 2);
        let e1 = f.page(1).unwrap();
        assert_eq!(e1.factors(0, 0), vec![4]);
        assert_eq!(e1.factors(1, 0), vec![4]);
        let e2 = f.page(2).unwrap();
        assert_eq!(e2.factors(0, 0), vec![2]);
        assert_eq!(e2.factors(1, 0), vec![2]);
        let e3 = f.page(3).unwrap();
        assert_eq!(e2.summary(), e3.summary());
        assert!(f.convergence_holds().unwrap());
        assert!(f.page_recursion_holds(1).unwrap());
        assert!(f.edge_map(0).unwrap().is_surjective());
    }

    #[test]
    fn zero_complex() {
        let f = FilteredComplex::new(3, vec![ModMatrix::zeros(0, 0, 3); 5], vec![Vec::new(); 6]).unwrap();
        let s = f.four_term_sequence().unwrap();
        assert!(s.is_exact());
        assert!(s.groups.iter().all(Vec::is_empty));
        assert!(f.vanishing_profile(1).unwrap());
        assert!(f.edge_map(2).unwrap().is_zero());
    }

    #[test]
    fn offending_entry_is_rejected() {
        // A lone basis vector of C^4 at level 3 survives to E_2^{3,1}.
        let mut levels = vec![Vec::new(); 6];
        levels[4] = vec![3];
        let diffs: Vec<ModMatrix> = (0..5)
            .map(|n| ModMatrix::zeros(levels[n + 1].len(), levels[n].len(), 5))
            .collect();
        let f = FilteredComplex::new(5, diffs, levels).unwrap();
        assert_eq!(f.four_term_sequence().unwrap_err(), Error::HypothesisFailed { p: 3, q: 1 });
        assert!(!f.vanishing_profile(5).unwrap());
    }

    #[test]
    fn filtration_must_be_respected() {
        let d = ModMatrix::from_rows(1, 3, &[vec![1]]).unwrap();
        assert!(matches!(
            FilteredComplex::new(3, vec![d], vec![vec![1], vec![0]]),
            Err(Error::MalformedFiltration(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let f = two_term(6, 3);
        let v = f.to_json();
        assert_eq!(
            v.to_string(),
            r#"{"differentials":[[[3]]],"dims":[1,1],"filtration":[[[0]],[[0],[0]]],"m":6}"#
        );
        assert_eq!(FilteredComplex::from_json(&v).unwrap(), f);
    }
}
