use thiserror::Error;

/// Errors produced across the library.
#[derive(Debug, Error)]
pub enum HarvestError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("matrix dimension {0} is odd; phase space requires an even dimension")]
    OddDimension(usize),

    #[error("matrix is not symmetric: max asymmetry {residual:e} exceeds {tol:e}")]
    NotSymmetric { residual: f64, tol: f64 },

    #[error("unphysical value: {0}")]
    Unphysical(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("invalid mode index set: {0}")]
    InvalidIndices(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("two-mode state is not exchange symmetric: residual {0:e}")]
    AsymmetricState(f64),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T> = std::result::Result<T, HarvestError>;
