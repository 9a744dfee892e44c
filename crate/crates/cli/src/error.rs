use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const USAGE: u8 = 2;
    pub const REFUSED: u8 = 3;
    pub const NUMERICAL: u8 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or arguments.
    #[error("{0}")]
    Usage(String),

    /// Unreadable or malformed input data.
    #[error("{0}")]
    Input(String),

    /// A request outside the mathematical domain of the command.
    #[error("{0}")]
    Refused(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => exit::USAGE,
            CliError::Refused(_) => exit::REFUSED,
            CliError::Numerical(_) | CliError::Io(_) => exit::NUMERICAL,
        }
    }
}

impl From<power_lindley::Error> for CliError {
    fn from(e: power_lindley::Error) -> Self {
        use power_lindley::Error as E;
        match e {
            E::Domain { .. } => CliError::Usage(e.to_string()),
            E::Table(_) => CliError::Input(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        if e.is_io_error() {
            if let csv::ErrorKind::Io(io) = e.into_kind() {
                return CliError::Io(io);
            }
            unreachable!("is_io_error implies an Io kind");
        }
        CliError::Io(std::io::Error::other(e))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        match e.io_error_kind() {
            Some(kind) => CliError::Io(kind.into()),
            None => CliError::Io(std::io::Error::other(e)),
        }
    }
}
