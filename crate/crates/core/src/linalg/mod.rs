//! Exact linear algebra over a generic field.

mod matrix;
mod scalar;
pub mod sparse;

pub use matrix::{
    entry_cap, homology_dim, quotient, rank_of_vectors, rref, set_entry_cap, Matrix, Rref, Solver, SubspaceBasis,
};
pub(crate) use matrix::check_entries;
pub use scalar::{parse_rational, PrimeField, Scalar};
pub use sparse::{Accum, Echelon, PivotRule, Quotient, SparseVec};
