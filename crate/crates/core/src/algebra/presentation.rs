//! Finitely presented abelian groups and Z/m-modules.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::smith::smith_normal_form;
use super::submodule::ZmModule;
use super::zmod::quotient_invariants;
use crate::error::{Error, Result};

/// Ambient ring of a presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Modulus {
    Integers,
    Residues(u64),
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Integers => write!(f, "Z"),
            Modulus::Residues(m) => write!(f, "Z/{m}"),
        }
    }
}

/// `ring^generators / rowspace(relations)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub modulus: Modulus,
    pub generators: usize,
    pub relations: IntMatrix,
}

impl Presentation {
    pub fn new(modulus: Modulus, generators: usize, relations: IntMatrix) -> Result<Self> {
        if relations.cols() != generators && relations.rows() > 0 {
            return Err(Error::DimensionMismatch(format!(
                "relation matrix has {} columns for {generators} generators",
                relations.cols()
            )));
        }
        if modulus == Modulus::Residues(0) {
            return Err(Error::Invalid("modulus must be positive".into()));
        }
        Ok(Presentation {
            modulus,
            generators,
            relations: relations.with_cols_if_empty(generators),
        })
    }

    pub fn trivial() -> Self {
        Presentation {
            modulus: Modulus::Integers,
            generators: 0,
            relations: IntMatrix::zeros(0, 0),
        }
    }

    /// `Z/n`; `n = 0` gives `Z`.
    pub fn cyclic(n: u64) -> Self {
        let relations = if n == 0 {
            IntMatrix::zeros(0, 1)
        } else {
            IntMatrix::from_i64(&[&[n as i64]])
        };
        Presentation {
            modulus: Modulus::Integers,
            generators: 1,
            relations,
        }
    }

    /// Direct sum of cyclic Z/m-modules `Z/d_1 ⊕ ...` with each `d_i | m`.
    pub fn diagonal(m: u64, factors: &[u64]) -> Self {
        let mut rel = IntMatrix::zeros(factors.len(), factors.len());
        for (i, &d) in factors.iter().enumerate() {
            rel[(i, i)] = BigInt::from(d);
        }
        Presentation {
            modulus: Modulus::Residues(m),
            generators: factors.len(),
            relations: rel,
        }
    }

    pub fn from_module(module: &ZmModule) -> Self {
        let n = module.generators();
        let rows: Vec<Vec<u64>> = module.relations().basis().to_vec();
        Presentation {
            modulus: Modulus::Residues(module.modulus()),
            generators: n,
            relations: IntMatrix::from_rows(n, &rows).expect("basis rows have full length"),
        }
    }

    /// Unique invariant factors `d_1 | d_2 | ...`, trivial factors dropped,
    /// `0` for each free Z summand.
    pub fn invariant_factors(&self) -> Vec<BigUint> {
        match self.modulus {
            Modulus::Integers => integer_invariants(&self.relations, self.generators),
            Modulus::Residues(m) => {
                let rows = self.relations.reduce_mod(m);
                quotient_invariants(&rows, self.generators, m)
                    .into_iter()
                    .map(BigUint::from)
                    .collect()
            }
        }
    }

    /// Same as [`invariant_factors`](Self::invariant_factors), always computed
    /// through integer Smith form (relations stacked with `m·I`).
    pub fn invariant_factors_over_z(&self) -> Vec<BigUint> {
        match self.modulus {
            Modulus::Integers => integer_invariants(&self.relations, self.generators),
            Modulus::Residues(m) => {
                let mut scaled = IntMatrix::identity(self.generators);
                for i in 0..self.generators {
                    scaled[(i, i)] = BigInt::from(m);
                }
                let stacked = self
                    .relations
                    .vstack(&scaled)
                    .expect("relation width equals generator count");
                integer_invariants(&stacked, self.generators)
            }
        }
    }

    /// Invariant factors as machine words. Panics if a factor overflows.
    pub fn factors_u64(&self) -> Vec<u64> {
        self.invariant_factors()
            .iter()
            .map(|d| d.to_u64().expect("invariant factor fits in u64"))
            .collect()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigUint> {
        let factors = self.invariant_factors();
        if factors.iter().any(Zero::is_zero) {
            return None;
        }
        Some(factors.iter().fold(BigUint::one(), |acc, d| acc * d))
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors().is_empty()
    }

    pub fn isomorphic(&self, other: &Presentation) -> bool {
        self.invariant_factors() == other.invariant_factors()
    }
}

fn integer_invariants(relations: &IntMatrix, generators: usize) -> Vec<BigUint> {
    let rel = relations.clone().with_cols_if_empty(generators);
    let snf = smith_normal_form(&rel);
    let mut out: Vec<BigUint> = snf
        .factors
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| d.magnitude().clone())
        .collect();
    out.extend(std::iter::repeat_n(BigUint::zero(), generators - snf.rank()));
    // Zeros (free summands) go last: every integer divides 0.
    out.sort_by(|a, b| match (a.is_zero(), b.is_zero()) {
        (true, false) => std::cmp::Ordering::Greater,
        (false, true) => std::cmp::Ordering::Less,
        _ => a.cmp(b),
    });
    out
}

/// Renders invariant factors as `Z/2 + Z/6`, `Z` for 0, `0` when empty.
pub fn describe_factors(factors: &[BigUint]) -> String {
    if factors.is_empty() {
        return "0".into();
    }
    factors
        .iter()
        .map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{d}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", describe_factors(&self.invariant_factors()))
    }
}

impl Serialize for Presentation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(3))?;
        match self.modulus {
            Modulus::Integers => map.serialize_entry("modulus", "Z")?,
            Modulus::Residues(m) => map.serialize_entry("modulus", &m)?,
        }
        map.serialize_entry("generators", &self.generators)?;
        map.serialize_entry("relations", &self.relations)?;
        map.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ModulusRepr {
    Num(u64),
    Ring(String),
}

#[derive(Deserialize)]
struct PresentationRepr {
    modulus: ModulusRepr,
    generators: usize,
    #[serde(default = "empty_matrix")]
    relations: IntMatrix,
}

fn empty_matrix() -> IntMatrix {
    IntMatrix::zeros(0, 0)
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PresentationRepr::deserialize(d)?;
        let modulus = match repr.modulus {
            ModulusRepr::Num(m) => Modulus::Residues(m),
            ModulusRepr::Ring(s) if s == "Z" => Modulus::Integers,
            ModulusRepr::Ring(s) => return Err(de::Error::custom(format!("unknown modulus {s:?}"))),
        };
        Presentation::new(modulus, repr.generators, repr.relations).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn cyclic_six() {
        assert_eq!(Presentation::cyclic(6).invariant_factors(), big(&[6]));
    }

    #[test]
    fn two_plus_three_is_six() {
        let p = Presentation::new(
            Modulus::Integers,
            2,
            IntMatrix::from_i64(&[&[2, 0], &[0, 3]]),
        )
        .unwrap();
        assert_eq!(p.invariant_factors(), big(&[6]));
    }

    #[test]
    fn free_generator_is_infinite() {
        let p = Presentation::cyclic(0);
        assert_eq!(p.invariant_factors(), big(&[0]));
        assert_eq!(p.order(), None);
        assert_eq!(p.to_string(), "Z");
    }

    #[test]
    fn torsion_before_free_part() {
        let p = Presentation::new(Modulus::Integers, 3, IntMatrix::from_i64(&[&[4, 0, 0], &[0, 6, 0]]))
            .unwrap();
        assert_eq!(p.invariant_factors(), big(&[2, 12, 0]));
    }

    #[test]
    fn modular_routes_agree() {
        let p = Presentation::new(
            Modulus::Residues(12),
            3,
            IntMatrix::from_i64(&[&[2, 4, 0], &[0, 3, 9], &[6, 0, 6]]),
        )
        .unwrap();
        assert_eq!(p.invariant_factors(), p.invariant_factors_over_z());
    }

    #[test]
    fn json_shape_round_trips() {
        let p = Presentation::new(Modulus::Residues(4), 2, IntMatrix::from_i64(&[&[2, 0]])).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"modulus":4,"generators":2,"relations":[[2,0]]}"#);
        let back: Presentation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let z: Presentation =
            serde_json::from_str(r#"{"modulus":"Z","generators":1,"relations":[]}"#).unwrap();
        assert_eq!(z.invariant_factors(), big(&[0]));
    }
}
