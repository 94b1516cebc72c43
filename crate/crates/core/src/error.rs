use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range 1..={num_vars}")]
    IndexOutOfRange { index: usize, num_vars: usize },
    #[error("non-finite value")]
    NonFinite,
    #[error("polynomial must have at least one variable")]
    NoVariables,
    #[error("expansion exceeds the term limit")]
    TooLarge,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("null polynomial has no root set")]
    NullPolynomial,
    #[error("no roots: polynomial is a nonzero constant")]
    Constant,
    #[error("b must be nonzero")]
    RealRootsOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("empty point set")]
    Empty,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("grid of {0} cells exceeds the size limit")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Stability(#[from] crate::stability::StabilityError),
    #[error("hypothesis violated: partial derivative {k} is null")]
    NullDerivative { k: usize },
    #[error("point is not a critical point: |Q_k(z)| = {residual:e} exceeds {bound:e}")]
    NotCritical { residual: f64, bound: f64 },
    #[error("polynomial degree {0} is below 2")]
    DegreeTooLow(usize),
    #[error("{0}")]
    Invalid(String),
}
