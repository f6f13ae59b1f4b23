use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A physical parameter is outside its meaningful range.
    #[error("domain error: {0}")]
    Domain(String),

    /// An operation was invoked with arguments that are inconsistent with
    /// each other or with the current state.
    #[error("argument error: {0}")]
    Argument(String),

    /// A parameter file or CLI configuration failed to load or validate.
    /// Always names the offending key.
    #[error("config error: key `{key}`: {message}")]
    Config { key: String, message: String },

    /// The calibration search could not reproduce the requested targets.
    #[error("calibration failed: {message} (best residual {residual:.3e})")]
    Calibration { message: String, residual: f64 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn config(key: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
