use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix not Hermitian: max |H - H^dagger| = {asymmetry:e}")]
    NotHermitian { asymmetry: f64 },
    #[error("non-finite potential sample at grid index {index} (x = {x})")]
    NonFinitePotential { index: usize, x: f64 },
    #[error("requested {requested} states but only {available} available")]
    TooManyStates { requested: usize, available: usize },
    #[error("singular Fourier coefficient: {0}")]
    Singular(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("eigensolver failure: {0}")]
    Eigensolver(String),
    #[error("insufficient Fock headroom: top populations {population:e} > {threshold:e}")]
    FockHeadroom { population: f64, threshold: f64 },
    #[error("at axis value {value}: {source}")]
    AtAxis { value: f64, source: Box<Error> },
    #[error("config error: {0}")]
    Config(String),
    #[error("I/O error at {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl Error {
    /// Configuration-class failures (as opposed to numeric ones).
    pub fn is_config(&self) -> bool {
        match self {
            Error::Config(_) | Error::Unsupported(_) | Error::InvalidParameter(_) => true,
            Error::AtAxis { source, .. } => source.is_config(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
