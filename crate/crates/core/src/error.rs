use thiserror::Error;

/// Errors surfaced by the core pipeline stages.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("data error: {0}")]
    Data(String),
    #[error("covariance submatrix for ({i}, {j}) is singular even after regularization; encoding is collinear")]
    SingularSubmatrix { i: usize, j: usize },
    #[error("fisher z test undefined: n={n} leaves no degrees of freedom for conditioning size {cond}")]
    TestUndefined { n: usize, cond: usize },
    #[error("orientation conflict: existing arrow out of outcome node `{0}`")]
    OrientationConflict(String),
    #[error("unknown argument `{0}`")]
    UnknownArgument(String),
    #[error("framework has {0} arguments, exceeding the exhaustive-enumeration cap of {1}")]
    SizeCap(usize, usize),
    #[error("graph contains a directed cycle")]
    Cyclic,
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
