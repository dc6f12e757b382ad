//! Unramified cohomology of rational function fields over finite fields,
//! computed exactly through Milnor K-groups mod m, Kato complexes and
//! spectral sequences of filtered complexes.

pub mod algebra;
pub mod error;
pub mod field;
pub mod function_field;
pub mod kato;
pub mod laurent;
pub mod spectral;

pub use error::{Error, Result};
