use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// `1 + A·φ³` is non-positive: the rational regime-2 potential has left its domain.
    #[error("pole in regime-2 potential at phi = {phi} (1 + A*phi^3 = {denominator})")]
    Pole { phi: f64, denominator: f64 },

    #[error("no extremum of dV/dphi in [{lo}, {hi}]")]
    NoExtremum { lo: f64, hi: f64 },

    #[error("need two minima to form a vacuum pair, found {found}")]
    NoVacuumPair { found: usize },

    #[error("degenerate vacua: energy gap {gap:e} is below the resolution threshold")]
    Degenerate { gap: f64 },

    #[error("calibration failed: {0}")]
    Calibration(String),

    #[error("grid error: {0}")]
    Grid(String),

    #[error("step size underflow at t = {t} (h = {h:e})")]
    Step { t: f64, h: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    Validation(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
