use thiserror::Error;

/// Error type shared by every module in the crate.
///
/// Validation happens at construction boundaries (states, gates, bases,
/// registers), so operations downstream of a successful construction mostly
/// fail only on dimension mismatches or degenerate inputs such as
/// zero-probability outcomes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vectors and matrices must have dimension at least 1")]
    EmptyDimension,

    #[error("non-finite entry at flat index {index}")]
    NonFiniteEntry { index: usize },

    #[error("entry count {len} does not fill a {dim}x{dim} matrix")]
    BadEntryCount { dim: usize, len: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("subsystem dimensions multiply to {dims_product}, matrix has dimension {dim}")]
    BadFactorization { dim: usize, dims_product: usize },

    #[error("partial trace must remove a nonempty proper subset of subsystems")]
    BadTraceSubset,

    #[error("subsystem index {index} out of range for {count} subsystems")]
    BadSubsystemIndex { index: usize, count: usize },

    #[error("matrix is not Hermitian: max deviation {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary: max deviation {deviation:.3e}")]
    NotUnitary { deviation: f64 },

    #[error(
        "mixing matrix is not an isometry on the occupied columns: max deviation {deviation:.3e}"
    )]
    NotIsometry { deviation: f64 },

    #[error("projector is not idempotent: max deviation {deviation:.3e}")]
    NotIdempotent { deviation: f64 },

    #[error("state is not normalized: squared norm {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("density matrix trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("density matrix has negative eigenvalue {eigenvalue:.3e}")]
    NotPositiveSemidefinite { eigenvalue: f64 },

    #[error("ensemble must have at least one member")]
    EmptyEnsemble,

    #[error("ensemble weight {weight} outside [0, 1]")]
    WeightOutOfRange { weight: f64 },

    #[error("ensemble weights sum to {sum}, expected 1")]
    WeightSum { sum: f64 },

    #[error("ensemble members act on different qubit counts")]
    MixedQubitCounts,

    #[error("measurement basis is not orthonormal: max deviation {deviation:.3e}")]
    NotOrthonormal { deviation: f64 },

    #[error("outcome label count {labels} does not match vector count {vectors}")]
    LabelCount { labels: usize, vectors: usize },

    #[error("unknown outcome label {label:?}")]
    UnknownOutcome { label: String },

    #[error("outcome {label:?} has probability below {threshold:.0e}")]
    ZeroProbability { label: String, threshold: f64 },

    #[error("register labels must occupy disjoint, contiguous positions starting at 0")]
    BadRegister,

    #[error("register spans {register_qubits} qubits, state has {state_qubits}")]
    RegisterCoverage {
        register_qubits: usize,
        state_qubits: usize,
    },

    #[error("unknown subsystem label {name:?}")]
    UnknownLabel { name: String },

    #[error("reduction must keep a nonempty proper subset of the register")]
    BadKeepSet,

    #[error("invalid gate targets: {reason}")]
    BadTargets { reason: String },

    #[error(
        "proper and improper preparations disagree before the audit: max deviation {deviation:.3e}"
    )]
    PreparationMismatch { deviation: f64 },

    #[error("audit requires at least one observable")]
    NoTrials,

    #[error("unknown scenario {name:?}")]
    UnknownScenario { name: String },

    #[error("missing parameter {name:?}")]
    MissingParam { name: String },

    #[error("invalid parameter {name:?}: {reason}")]
    InvalidParam { name: String, reason: String },

    #[error("usage: {message}")]
    Usage { message: String },

    #[error("spec is not valid UTF-8")]
    NotUtf8,

    #[error("spec is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
