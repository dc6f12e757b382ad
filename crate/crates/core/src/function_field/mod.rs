//! The rational function field `F_q(t)`: polynomials, places, Milnor symbols
//! and their residues.

mod factor;
mod milnor;
mod parse;
mod place;
mod poly;
pub mod random;
mod rational;

pub use factor::Factorization;
pub use milnor::{
    check_twist, corestrict, is_unramified, reciprocity_defect, residue, FiniteClass, MilnorClass,
    ResidueClass,
};
pub(crate) use milnor::residue_unchecked;
pub use parse::{parse_function, parse_place, parse_symbol};
pub use place::{irreducible_count, PlaceTable};
pub use poly::{Poly, PolyRing};
pub use rational::{Place, RationalFunction, ResidueUnit};
