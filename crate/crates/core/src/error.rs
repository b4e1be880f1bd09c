use thiserror::Error;

/// Errors raised by constructions and checks in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("matrix is not normal (residual {residual:.3e})")]
    NotNormal { residual: f64 },

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("members {first} and {second} do not commute (residual {residual:.3e})")]
    NotCommuting {
        first: String,
        second: String,
        residual: f64,
    },

    #[error("simultaneous diagonalization failed: {0}")]
    Diagonalization(String),

    #[error("operator {label} is not unitary (residual {residual:.3e})")]
    NotUnitary { label: String, residual: f64 },

    #[error("operators {first} and {second} violate trace orthogonality (residual {residual:.3e})")]
    NotOrthogonal {
        first: String,
        second: String,
        residual: f64,
    },

    #[error("operator {label} is not traceless (|tr| = {residual:.3e})")]
    NotTraceless { label: String, residual: f64 },

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("invalid latin square: {0}")]
    InvalidLatinSquare(String),

    #[error("invalid Hadamard data: {0}")]
    InvalidHadamard(String),

    #[error("latin square pair is not inverse-paired")]
    InverseMismatch,

    #[error("unknown label {0}")]
    UnknownLabel(String),

    #[error("exact commutation mode unavailable: {0}")]
    ExactModeUnavailable(String),

    #[error("vector {index} is not unit norm (norm {norm:.12})")]
    NotNormalized { index: usize, norm: f64 },

    #[error("vector {index} is not maximally entangled (Schmidt spectrum {spectrum:?})")]
    NotMaximallyEntangled { index: usize, spectrum: Vec<f64> },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("bases are not unbiased (max deviation {deviation:.3e})")]
    NotUnbiased { deviation: f64 },

    #[error("POVM invariant violated: {0}")]
    InvalidPovm(String),

    #[error("measurement is not informationally complete (rank {rank} < {required})")]
    NotInformationallyComplete { rank: usize, required: usize },

    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
