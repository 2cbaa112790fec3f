use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate input: every rule firing strength underflows at point {point:?}")]
    DegenerateInput { point: Vec<f64> },

    #[error("length mismatch for {what}: expected {expected}, got {got}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("singular least-squares system ({0}); use a nonzero ridge_lambda")]
    SingularSystem(String),

    #[error("numerical failure at epoch {epoch}: {detail}")]
    NumericalFailure { epoch: usize, detail: String },

    #[error("{0}")]
    Metric(String),

    #[error("data error at line {line}{}: {msg}", column.as_ref().map(|c| format!(", column '{c}'")).unwrap_or_default())]
    Data {
        line: usize,
        column: Option<String>,
        msg: String,
    },

    #[error("dataset error: {0}")]
    Dataset(String),

    #[error("model file error: {0}")]
    ModelFile(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
