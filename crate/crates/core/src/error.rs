use thiserror::Error;

use crate::graphflow::GraphError;
use crate::polyring::{Context, ParseError, PolyError};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("context mismatch: {0} vs {1}")]
    ContextMismatch(Context, Context),
    #[error("expected a degree-{expected} multi-vector, got degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("unsupported multi-vector degree {0} (supported: 1..=3)")]
    UnsupportedDegree(usize),
    #[error("invalid index tuple {0:?}")]
    BadIndex(Vec<usize>),
    #[error("expected {expected} determinant arguments, got {found}")]
    WrongArgCount { expected: usize, found: usize },
    #[error("operation requires dimension {expected}, got {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("dimension {0} too small for this construction")]
    DimensionTooSmall(usize),
    #[error("input bi-vector is not Poisson")]
    NotPoisson,
    #[error("no lambda-exponent convention yields a Poisson bi-vector")]
    CalibrationFailure,
    #[error("empty basis")]
    EmptyBasis,
    #[error("context has no adjoined epsilon")]
    EpsilonMissing,
    #[error("input must not depend on epsilon")]
    DependsOnEpsilon,
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("malformed document: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
