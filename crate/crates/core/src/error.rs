use thiserror::Error;

/// Errors raised by construction and verification routines.
///
/// Numeric diagnostics are carried as `f64` regardless of the scalar type
/// the computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    Dimension { left: usize, right: usize },

    #[error("matrix is not Hermitian (max asymmetry {asymmetry:e})")]
    Hermiticity { asymmetry: f64 },

    #[error("matrix is not traceless (|tr| = {trace:e})")]
    Trace { trace: f64 },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("generator ladder is not applicable at s = 1: {{a, a_dag, A}} already closes")]
    LadderNotApplicable,

    #[error("closure not reached after {rounds} rounds (current dimension {dimension})")]
    ClosureNotReached { dimension: usize, rounds: usize },

    #[error("su(n) certification failed: {clause}")]
    CertificationFailure { clause: String },

    #[error("state is not normalized (norm {norm})")]
    Normalization { norm: f64 },

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
}

pub type Result<V> = std::result::Result<V, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
