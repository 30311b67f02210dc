//! Quiver presentations, based algebras and Peirce decompositions.

mod based;
mod peirce;
mod quiver;

pub use based::{BasedAlgebra, BasisElem};
pub use peirce::{peirce_quiver, IdempotentSystem, PeirceQuiver};
pub use quiver::{
    compute_basis, parse_presentation, Arrow, ArrowFile, Path, Presentation, PresentationFile, Quiver, Relation,
    TermFile, DEFAULT_MAX_LEN,
};
