//! Bounded homological chain complexes of free modules over Z or Z/m.

use num_bigint::BigInt;
use num_traits::Zero;

use super::matrix::IntMatrix;
use super::presentation::{Modulus, Presentation};
use super::smith::smith_normal_form;
use super::submodule::{ModMatrix, Submodule};
use crate::error::{Error, Result};

/// `C_hi -> ... -> C_lo` with `d_k : C_k -> C_{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    ring: Modulus,
    lo: i64,
    ranks: Vec<usize>,
    /// `differentials[i]` is `d_{lo + i + 1}`, a `ranks[i] x ranks[i + 1]` matrix.
    differentials: Vec<IntMatrix>,
}

impl ChainComplex {
    /// `ranks` lists the term ranks from degree `lo` upward; `differentials`
    /// lists `d_{lo+1}, d_{lo+2}, ...`.
    pub fn new(
        ring: Modulus,
        lo: i64,
        ranks: Vec<usize>,
        differentials: Vec<IntMatrix>,
    ) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::DimensionMismatch("a complex needs at least one term".into()));
        }
        if differentials.len() + 1 != ranks.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} terms need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                differentials.len()
            )));
        }
        let differentials: Vec<IntMatrix> = differentials
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                let d = d.with_cols_if_empty(ranks[i + 1]);
                if d.rows() == 0 && ranks[i] == 0 {
                    return Ok(IntMatrix::zeros(0, ranks[i + 1]));
                }
                if d.rows() != ranks[i] || d.cols() != ranks[i + 1] {
                    return Err(Error::DimensionMismatch(format!(
                        "d_{} is {}x{}, expected {}x{}",
                        lo + i as i64 + 1,
                        d.rows(),
                        d.cols(),
                        ranks[i],
                        ranks[i + 1]
                    )));
                }
                Ok(d)
            })
            .collect::<Result<_>>()?;
        Ok(ChainComplex {
            ring,
            lo,
            ranks,
            differentials,
        })
    }

    pub fn ring(&self) -> Modulus {
        self.ring
    }

    pub fn lowest_degree(&self) -> i64 {
        self.lo
    }

    pub fn highest_degree(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn rank(&self, degree: i64) -> Result<usize> {
        Ok(self.ranks[self.index(degree)?])
    }

    /// `d_degree : C_degree -> C_{degree-1}`, if both ends exist.
    pub fn differential(&self, degree: i64) -> Option<&IntMatrix> {
        if degree <= self.lo || degree > self.highest_degree() {
            return None;
        }
        Some(&self.differentials[(degree - self.lo - 1) as usize])
    }

    /// Same complex with every degree raised by `shift`.
    pub fn shifted(&self, shift: i64) -> ChainComplex {
        ChainComplex {
            lo: self.lo + shift,
            ..self.clone()
        }
    }

    fn index(&self, degree: i64) -> Result<usize> {
        if degree < self.lo || degree > self.highest_degree() {
            return Err(Error::DegreeOutOfRange {
                degree,
                lo: self.lo,
                hi: self.highest_degree(),
            });
        }
        Ok((degree - self.lo) as usize)
    }

    /// Checks `d_k ∘ d_{k+1} = 0` (mod m when working over Z/m).
    pub fn check(&self) -> Result<()> {
        for i in 1..self.differentials.len() {
            let comp = self.differentials[i - 1].mul(&self.differentials[i])?;
            let vanishes = match self.ring {
                Modulus::Integers => comp.is_zero(),
                Modulus::Residues(m) => comp.reduce_mod(m).iter().flatten().all(|&x| x == 0),
            };
            if !vanishes {
                return Err(Error::NotAComplex {
                    degree: self.lo + i as i64,
                });
            }
        }
        Ok(())
    }

    /// `ker(d_degree) / im(d_{degree+1})`.
    pub fn homology(&self, degree: i64) -> Result<Presentation> {
        let idx = self.index(degree)?;
        self.check()?;
        let n = self.ranks[idx];
        let outgoing = self.differential(degree);
        let incoming = self.differential(degree + 1);
        match self.ring {
            Modulus::Residues(m) => {
                let (ker, im) = self.mod_cycles_boundaries(m, n, outgoing, incoming);
                let module = ker.quotient(&im)?;
                Ok(Presentation::from_module(&module))
            }
            Modulus::Integers => integer_homology(n, outgoing, incoming),
        }
    }

    /// Exact at `degree`, decided by comparing kernel and image exactly.
    pub fn is_exact_at(&self, degree: i64) -> Result<bool> {
        let idx = self.index(degree)?;
        self.check()?;
        match self.ring {
            Modulus::Residues(m) => {
                let n = self.ranks[idx];
                let (ker, im) = self.mod_cycles_boundaries(
                    m,
                    n,
                    self.differential(degree),
                    self.differential(degree + 1),
                );
                Ok(ker.cardinality() == im.cardinality())
            }
            Modulus::Integers => Ok(self.homology(degree)?.is_trivial()),
        }
    }

    fn mod_cycles_boundaries(
        &self,
        m: u64,
        n: usize,
        outgoing: Option<&IntMatrix>,
        incoming: Option<&IntMatrix>,
    ) -> (Submodule, Submodule) {
        let ker = match outgoing {
            Some(d) => Submodule::preimage(&to_mod(d, m), &Submodule::zero(d.rows(), m)),
            None => Submodule::full(n, m),
        };
        let im = match incoming {
            Some(d) => Submodule::full(d.cols(), m).image(&to_mod(d, m)),
            None => Submodule::zero(n, m),
        };
        (ker, im)
    }
}

pub(crate) fn to_mod(d: &IntMatrix, m: u64) -> ModMatrix {
    ModMatrix::from_rows(d.cols(), m, &d.reduce_mod(m)).expect("shape preserved")
}

fn integer_homology(
    n: usize,
    outgoing: Option<&IntMatrix>,
    incoming: Option<&IntMatrix>,
) -> Result<Presentation> {
    // Kernel basis: columns of the right transform beyond the rank. In those
    // coordinates a vector x has y = R^{-1} x, and cycles have y_i = 0 for i < rank.
    let (rank, right_inv) = match outgoing {
        Some(d) => {
            let snf = smith_normal_form(d);
            (snf.rank(), snf.right_inverse)
        }
        None => (0, IntMatrix::identity(n)),
    };
    let k = n - rank;
    let rows: Vec<Vec<BigInt>> = match incoming {
        Some(d) => {
            let coords = right_inv.mul(d)?;
            (0..coords.cols())
                .map(|j| (rank..n).map(|i| coords[(i, j)].clone()).collect())
                .filter(|r: &Vec<BigInt>| r.iter().any(|x| !x.is_zero()))
                .collect()
        }
        None => Vec::new(),
    };
    Presentation::new(Modulus::Integers, k, IntMatrix::from_rows(k, &rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn factors(p: &Presentation) -> Vec<u64> {
        p.factors_u64()
    }

    #[test]
    fn doubling_over_z() {
        // 0 -> Z --2--> Z -> 0 in degrees 1, 0.
        let c = ChainComplex::new(Modulus::Integers, 0, vec![1, 1], vec![IntMatrix::from_i64(&[&[2]])])
            .unwrap();
        assert_eq!(factors(&c.homology(0).unwrap()), vec![2]);
        assert!(c.homology(1).unwrap().is_trivial());
        assert!(!c.is_exact_at(0).unwrap());
        assert!(c.is_exact_at(1).unwrap());
    }

    #[test]
    fn identity_is_exact() {
        let c = ChainComplex::new(Modulus::Integers, 0, vec![1, 1], vec![IntMatrix::identity(1)])
            .unwrap();
        assert!(c.is_exact_at(0).unwrap() && c.is_exact_at(1).unwrap());
    }

    #[test]
    fn doubling_twice_mod_four() {
        let two = IntMatrix::from_i64(&[&[2]]);
        let c = ChainComplex::new(Modulus::Residues(4), 0, vec![1, 1, 1], vec![two.clone(), two])
            .unwrap();
        assert!(c.homology(1).unwrap().is_trivial());
        assert!(c.is_exact_at(1).unwrap());
        assert_eq!(factors(&c.homology(0).unwrap()), vec![2]);
        assert_eq!(factors(&c.homology(2).unwrap()), vec![2]);
    }

    #[test]
    fn errors() {
        let two = IntMatrix::from_i64(&[&[2]]);
        let c = ChainComplex::new(Modulus::Integers, 0, vec![1, 1, 1], vec![two.clone(), two])
            .unwrap();
        assert!(matches!(c.homology(1), Err(Error::NotAComplex { .. })));
        assert!(matches!(c.homology(7), Err(Error::DegreeOutOfRange { .. })));
    }

    #[test]
    fn free_homology_over_z() {
        // Z^2 --(1 1)--> Z: kernel Z, nothing above.
        let c = ChainComplex::new(Modulus::Integers, 0, vec![1, 2], vec![IntMatrix::from_i64(&[&[1, 1]])])
            .unwrap();
        assert_eq!(c.homology(1).unwrap().invariant_factors(), vec![BigUint::from(0u32)]);
    }

    #[test]
    fn shift_moves_degrees() {
        let c = ChainComplex::new(Modulus::Integers, 0, vec![1, 1], vec![IntMatrix::from_i64(&[&[3]])])
            .unwrap();
        let s = c.shifted(5);
        assert_eq!(s.homology(5).unwrap().invariant_factors(), c.homology(0).unwrap().invariant_factors());
    }
}
