use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix with {entries} stored entries exceeds the entry cap {cap}")]
    ResourceLimit { entries: usize, cap: usize },

    #[error("differentials do not compose to zero ({context})")]
    NotAComplex { context: String },

    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("ideal did not close below truncation length {cap}")]
    NotAdmissible { cap: usize },

    #[error("malformed relation: {0}")]
    MalformedRelation(String),

    #[error("idempotent system has a single element")]
    TrivialSystem,

    #[error("Peirce quiver has no source vertex")]
    NoSource,

    #[error("algebra is not basic: {0}")]
    NotBasic(String),

    #[error("algebra is not sober: {0}")]
    NotSober(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("algebras do not match: {0}")]
    AlgebraMismatch(String),

    #[error("degree {degree} has {count} chains, above the cap {cap}")]
    DimensionCapExceeded { degree: usize, count: usize, cap: usize },

    #[error("presentation and matrix model differ: {witness}")]
    IsoFailure { witness: String },

    #[error("no finite projective resolution within cap {cap}")]
    NoFiniteResolution { cap: usize },

    #[error("(N M)^{searched} has dimension {dim}; no vanishing power found")]
    TensorPowersDoNotVanish { searched: usize, dim: usize },

    #[error("Tor methods disagree in degree {degree}: literal {literal}, reduced {reduced}")]
    MethodMismatch { degree: usize, literal: usize, reduced: usize },

    #[error("identity fails in degree {degree}: {detail}")]
    IdentityFailure { degree: usize, detail: String },

    #[error("algebra is not triangular for the given system")]
    NotTriangular,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
