//! Process exit classification.

use std::fmt;

/// An error tagged with the exit code it should produce.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

pub const EXIT_CONFIG: u8 = 1;
pub const EXIT_DATA: u8 = 2;
pub const EXIT_NOT_CONVERGED: u8 = 3;

pub type CliResult<T> = Result<T, Failure>;

impl Failure {
    pub fn config(msg: impl fmt::Display) -> Self {
        Failure {
            code: EXIT_CONFIG,
            error: anyhow::anyhow!("{msg}"),
        }
    }

    pub fn data(msg: impl fmt::Display) -> Self {
        Failure {
            code: EXIT_DATA,
            error: anyhow::anyhow!("{msg}"),
        }
    }

    pub fn not_converged(msg: impl fmt::Display) -> Self {
        Failure {
            code: EXIT_NOT_CONVERGED,
            error: anyhow::anyhow!("{msg}"),
        }
    }
}

impl From<awfk::Error> for Failure {
    fn from(e: awfk::Error) -> Self {
        let code = match &e {
            awfk::Error::Config(_) => EXIT_CONFIG,
            awfk::Error::InvalidInput(_) | awfk::Error::Parse { .. } | awfk::Error::Io { .. } => {
                EXIT_DATA
            }
            awfk::Error::EigenNonConvergence { .. } => EXIT_NOT_CONVERGED,
        };
        Failure {
            code,
            error: e.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.error)
    }
}
