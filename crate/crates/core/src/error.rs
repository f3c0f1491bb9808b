use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("not a closed pseudomanifold: {0}")]
    NotClosedPseudomanifold(String),
    #[error("cochain is not a cocycle: {0}")]
    NotACocycle(String),
    #[error("parameter vanishes on simplex {simplex:?}")]
    ZeroParameter { simplex: Vec<u32> },
    #[error("no nowhere-zero representative found after {attempts} attempts")]
    LiftFailed { attempts: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown manifold `{0}`")]
    UnknownManifold(String),
    #[error("{classes} classes exceed the enumeration cap of {cap}")]
    TooManyClasses { classes: usize, cap: usize },
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("vectors are linearly dependent")]
    LinearlyDependent,
    #[error("subspace is not contained in the ambient span")]
    NotASubspace,
    #[error("system has no solution")]
    Inconsistent,
    #[error("bilinearity certificate failed: {0}")]
    CertificateFailed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
