use std::fmt;

/// Broad failure class; each maps to its own process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad config file, flag or parameter value.
    Config,
    /// Unreadable, malformed or mismatched data / model files.
    Data,
    /// Training or evaluation produced a degenerate or non-finite result.
    Numerical,
    /// Filesystem or other runtime failure.
    Io,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            Self::Io => 1,
            Self::Config => 2,
            Self::Data => 3,
            Self::Numerical => 4,
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ErrorKind,
    /// Pipeline stage that failed, e.g. `load data` or `train anfis-ga`.
    pub stage: String,
    pub message: String,
}

impl CliError {
    pub fn new(kind: ErrorKind, stage: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            kind,
            stage: stage.into(),
            message: message.into(),
        }
    }

    pub fn config(stage: impl Into<String>, message: impl Into<String>) -> Self {
        Self::new(ErrorKind::Config, stage, message)
    }

    pub fn exit_code(&self) -> i32 {
        self.kind.exit_code()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.stage, self.message)
    }
}

impl std::error::Error for CliError {}

pub fn classify(err: &neurofuzz::Error) -> ErrorKind {
    use neurofuzz::Error as E;
    match err {
        E::InvalidParameter(_) => ErrorKind::Config,
        E::DegenerateInput { .. } | E::SingularSystem(_) | E::NumericalFailure { .. } | E::Metric(_) => {
            ErrorKind::Numerical
        }
        E::LengthMismatch { .. } | E::Data { .. } | E::Dataset(_) | E::ModelFile(_) => ErrorKind::Data,
        E::Io { .. } => ErrorKind::Io,
    }
}

/// Attaches a stage name to library errors.
pub trait Context<T> {
    fn stage(self, stage: &str) -> Result<T, CliError>;
}

impl<T> Context<T> for neurofuzz::Result<T> {
    fn stage(self, stage: &str) -> Result<T, CliError> {
        self.map_err(|e| CliError::new(classify(&e), stage, e.to_string()))
    }
}

impl<T> Context<T> for std::io::Result<T> {
    fn stage(self, stage: &str) -> Result<T, CliError> {
        self.map_err(|e| CliError::new(ErrorKind::Io, stage, e.to_string()))
    }
}
