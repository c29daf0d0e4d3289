use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degeneracy index {index} out of range for a simplex of dimension {dim}")]
    DegeneracyOutOfRange { index: usize, dim: usize },
    #[error("face index {index} out of range for a simplex of dimension {dim}")]
    FaceOutOfRange { index: usize, dim: usize },
    #[error("horn index {k} out of range for dimension {n}")]
    HornOutOfRange { n: usize, k: usize },
    #[error("dimension must be at least {min}, got {got}")]
    DimensionTooSmall { min: usize, got: usize },
    #[error("malformed complex: {0}")]
    Malformed(String),
    #[error("maps do not share a codomain")]
    CodomainMismatch,
    #[error("maps do not share a domain")]
    DomainMismatch,
    #[error("not a simplicial map: {0}")]
    NotAMap(String),
    #[error("lifting square does not commute")]
    SquareDoesNotCommute,
    #[error("segal map needs n >= 1")]
    SegalDegreeZero,
    #[error("not a category: {0}")]
    NotACategory(String),
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("presheaf is not functorial: {0}")]
    NotFunctorial(String),
    #[error("input failed the quasi-category precheck: {0}")]
    NotAQuasiCategory(String),
    #[error("naturality failure: {0}")]
    Naturality(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
