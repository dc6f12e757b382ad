//! Exact linear algebra over Z and Z/m.

pub mod complex;
pub mod matrix;
pub mod presentation;
pub mod smith;
pub mod sparse;
pub mod submodule;
pub mod zmod;

pub use complex::ChainComplex;
pub use matrix::IntMatrix;
pub use presentation::{describe_factors, Modulus, Presentation};
pub use smith::{smith_normal_form, SmithForm};
pub use sparse::{reduce, Reduction, SparseModMatrix};
pub use submodule::{ModMatrix, Submodule, ZmHom, ZmModule};
