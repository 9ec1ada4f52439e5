use thiserror::Error;

/// Errors raised anywhere in the toolkit.
///
/// The variants map one-to-one onto the failure classes the CLI reports
/// (see [`Error::exit_code`]).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Configuration(String),
    #[error("not invertible: body {0:e} is below the invertibility threshold")]
    NotInvertible(f64),
    #[error("parity error: {0}")]
    Parity(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("pole: |z| = {0:e} is inside the pole threshold")]
    Pole(f64),
    #[error("extrapolation: {0}")]
    Extrapolation(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("subalgebra {0} has nonstandard invariants and admits no reduced system")]
    NotReducible(String),
    #[error("unknown subalgebra: {0}")]
    UnknownSubalgebra(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for this failure class: 2 domain/config, 3 not
    /// reducible, 4 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Configuration(_)
            | Error::Parity(_)
            | Error::Domain(_)
            | Error::Extrapolation(_)
            | Error::UnknownSubalgebra(_)
            | Error::Constraint(_) => 2,
            Error::NotReducible(_) => 3,
            Error::NotInvertible(_) | Error::Numerical(_) | Error::Pole(_) => 4,
        }
    }

    /// Short machine-readable tag used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Configuration(_) => "ConfigurationError",
            Error::NotInvertible(_) => "NotInvertible",
            Error::Parity(_) => "ParityError",
            Error::Domain(_) => "DomainError",
            Error::Numerical(_) => "NumericalError",
            Error::Pole(_) => "PoleError",
            Error::Extrapolation(_) => "ExtrapolationError",
            Error::Constraint(_) => "ConstraintError",
            Error::NotReducible(_) => "NotReducible",
            Error::UnknownSubalgebra(_) => "UnknownSubalgebra",
        }
    }
}
