use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A run configuration failed validation.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// An eigensolver failed to converge or to factorize.
    #[error("eigensolver failure: {message}")]
    Solver {
        message: String,
        /// Best extremal estimates available when the solver gave up.
        best_estimates: Option<(f64, f64)>,
    },

    /// The Brody least-squares fit did not converge.
    #[error("Brody fit did not converge after {iterations} iterations (last residual {last_residual})")]
    Fit {
        iterations: usize,
        last_residual: f64,
        residual_trace: Vec<f64>,
    },

    /// Too many realizations failed at one disorder amplitude.
    #[error("{failed} of {total} realizations failed at h = {h}")]
    FailureQuota { h: f64, failed: usize, total: usize },

    /// Writing or reading result files failed.
    #[error("i/o error on {path}: {source} ({} files written before failure)", written.len())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
        written: Vec<PathBuf>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn solver(msg: impl Into<String>) -> Self {
        Error::Solver {
            message: msg.into(),
            best_estimates: None,
        }
    }
}
