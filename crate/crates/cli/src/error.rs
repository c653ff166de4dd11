use std::fmt;

/// Failure classes with their exit status: usage 2, numerical 3, I/O 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<spinphase::Error> for CliError {
    fn from(e: spinphase::Error) -> Self {
        use spinphase::Error::*;
        match e {
            Domain(_) | DimensionMismatch { .. } | Parse { .. } => CliError::Usage(e.to_string()),
            Eigen { .. } | InvalidState(_) => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
