//! Exact computations with quiver algebras, Hochschild homology and
//! null-square projective algebras.

pub mod algebra;
pub mod bimodule;
pub mod corpus;
pub mod error;
pub mod hochschild;
pub mod les;
pub mod linalg;
pub mod module;
pub mod nm;
pub mod nullsquare;

pub use error::{Error, Result};
pub use linalg::{Matrix, PrimeField, Scalar};

/// Exact rationals, the default ground field.
pub type Q = num_rational::BigRational;
/// Prime field used for fast cross-checks.
pub type Fp = PrimeField<2_147_483_647>;
