use thiserror::Error;

/// Crate-wide error type. Each variant maps to a concrete precondition or
/// runtime failure; the CLI translates these into process exit codes
/// (validation -> 2, convergence -> 3).
#[derive(Debug, Error)]
pub enum Error {
    #[error("gram matrix is not symmetric positive definite: {0}")]
    GramNotSpd(String),

    #[error("differentials do not compose to zero: {0}")]
    NotAComplex(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("eigenvalue clusters overlap within tolerance: {0}")]
    EigenvalueClusterAmbiguity(String),

    #[error("complex has no middle degree (odd length)")]
    MiddleDegreeMissing,

    #[error("metric family is not smooth at u = {u}: {detail}")]
    NonSmoothFamily { u: f64, detail: String },

    #[error("complex is not acyclic: {0}")]
    AcyclicityViolation(String),

    #[error("convergence budget exceeded: {0}")]
    ConvergenceBudgetExceeded(String),

    #[error("spectrum is empty")]
    EmptySpectrum,

    #[error("gram matrix is not compatible with the complex structure: {0}")]
    NonKaehlerInput(String),

    #[error("unsupported dimension: {0}")]
    DimensionError(String),

    #[error("gamma operator is inconsistent: {0}")]
    IncompatibleGamma(String),

    #[error("gamma drifted off an involution along the family: {0}")]
    GammaSquareDrift(String),

    #[error("operator spectrum is not real nonnegative: {0}")]
    NonRealSpectrum(String),

    #[error("cannot combine reports of different kinds: {0} vs {1}")]
    KindMismatch(String, String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("verification failed: {0}")]
    VerifyFailure(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI uses for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::VerifyFailure(_) => 1,
            Error::ConvergenceBudgetExceeded(_) => 3,
            Error::Io(_) => 2,
            _ => 2,
        }
    }
}
