use thiserror::Error;

/// Errors raised by the laboratory's constructors and operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot parse function spec `{spec}`: {reason}")]
    Parse { spec: String, reason: String },

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("weight {weight} out of range for n = {n}")]
    WeightOutOfRange { weight: usize, n: usize },

    #[error("n = {n} exceeds the enumeration cap of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("error tolerance {0} must satisfy 0 <= eps < 1/2")]
    Epsilon(String),

    #[error("matrix is not unitary (max deviation {max_deviation:e})")]
    NotUnitary { max_deviation: f64 },

    #[error("state is not normalized (norm^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("basis label ({0}, {1}) is not part of the state basis")]
    UnknownLabel(usize, usize),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("simulation produced an impossible outcome: {0}")]
    Simulation(String),

    #[error("no two-query reduction is known for DW with n = {n}, k = {k}, l = {l}")]
    Unsupported { n: usize, k: usize, l: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
