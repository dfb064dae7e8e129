use thiserror::Error;

use crate::config::ConfigError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Core(#[from] nucleosim_core::Error),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("usage: {0}")]
    Usage(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const VALIDATION: i32 = 3;
    pub const NUMERICAL: i32 = 4;
    pub const CALIBRATION: i32 = 5;
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use nucleosim_core::Error as E;
        match self {
            CliError::Config(ConfigError::Parse { .. }) | CliError::Usage(_) => exit::PARSE,
            CliError::Config(ConfigError::Validation(_)) => exit::VALIDATION,
            CliError::Io(_) => exit::IO,
            CliError::Core(e) => match e {
                E::Validation(_) | E::Domain(_) => exit::VALIDATION,
                E::Pole { .. } | E::Step { .. } | E::Grid(_) => exit::NUMERICAL,
                E::Calibration(_) | E::NoExtremum { .. } | E::NoVacuumPair { .. } | E::Degenerate { .. } => exit::CALIBRATION,
                E::Io(_) => exit::IO,
            },
        }
    }
}
