//! Exact arithmetic over `Q`, `Q(i)` and `H(Q)` and linear algebra over these
//! division rings: matrices, canonical subspaces and sesquilinear structures.

pub mod form;
pub mod json;
pub mod matrix;
pub mod quaternionic;
pub mod scalar;
pub mod subspace;

pub use form::{FormKind, IsotropyClass, SesquiStructure};
pub use matrix::{Matrix, Vector};
pub use scalar::{Ring, Scalar};
pub use subspace::Subspace;
