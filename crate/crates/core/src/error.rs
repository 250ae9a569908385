//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error in {module}: {msg}")]
    Domain { module: &'static str, msg: String },

    /// A scenario or grid configuration is inconsistent.
    #[error("configuration error in {module}: {msg}")]
    Config { module: &'static str, msg: String },

    /// A numerical procedure failed to reach its tolerance.
    #[error("numerical error in {module}: {msg} (best estimate {best:e})")]
    Numerical {
        module: &'static str,
        msg: String,
        best: f64,
    },

    /// A sampled representation is too coarse for the requested quantity.
    #[error("resolution error in {module}: {msg}")]
    Resolution { module: &'static str, msg: String },
}

impl Error {
    pub(crate) fn domain(module: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain {
            module,
            msg: msg.into(),
        }
    }

    pub(crate) fn config(module: &'static str, msg: impl Into<String>) -> Self {
        Error::Config {
            module,
            msg: msg.into(),
        }
    }

    pub(crate) fn resolution(module: &'static str, msg: impl Into<String>) -> Self {
        Error::Resolution {
            module,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
