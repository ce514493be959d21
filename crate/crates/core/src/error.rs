use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("operator is not positive semidefinite (eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {dim} exceeds the supported maximum of {max}")]
    DimensionOverflow { dim: usize, max: usize },

    #[error("matrix entries: expected {expected} values, found {found}")]
    BadShape { expected: usize, found: usize },

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("zero vector cannot be normalized into a state")]
    ZeroVector,

    #[error("vector norm {norm} is not 1 (pass normalize = true to rescale)")]
    NotNormalized { norm: f64 },

    #[error("trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("Kraus operators are not complete: |sum E^dag E - I|_F = {residual:.3e}")]
    NotComplete { residual: f64 },

    #[error("a channel needs between 1 and {max} Kraus operators, got {count}")]
    KrausCount { count: usize, max: usize },

    #[error("{name} = {value} is out of range {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("no test meets the acceptance constraint (violation {violation:.3e})")]
    InfeasibleTolerance { violation: f64 },

    #[error("neighbourhood relation has no pairs")]
    EmptyRelation,

    #[error("only (epsilon, 0)-differential privacy translates to hypothesis-testing privacy, got delta = {delta}")]
    DeltaNotZero { delta: f64 },

    #[error("depolarizing parameter p = 0 has no closed-form privacy certificate")]
    ZeroMixing,

    #[error("operation requires a {expected} report")]
    WrongMode { expected: &'static str },
}
