//! CLI error type: classifies every failure into one of the documented
//! exit-code families.

use std::fmt;

/// A failure, tagged with the exit-code family it belongs to.
///
/// * `Config` — bad config file, bad flag value, or out-of-range physics
///   parameters: exit code 2.
/// * `Numerical` — an iterative kernel failed to converge: exit code 3.
/// * `Undefined` — a requested estimate has no defined value (zero
///   denominators, all-zero distributions): exit code 4.
/// * `Io` — filesystem trouble reading configs or writing artifacts:
///   exit code 1.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
    Undefined(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Undefined(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "invalid configuration: {msg}"),
            CliError::Numerical(msg) => write!(f, "numerical failure: {msg}"),
            CliError::Undefined(msg) => write!(f, "undefined estimate: {msg}"),
            CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<quasicryst_core::Error> for CliError {
    fn from(e: quasicryst_core::Error) -> Self {
        use quasicryst_core::Error as E;
        match e {
            E::NoConvergence { .. } | E::AtPhi { .. } => CliError::Numerical(e.to_string()),
            E::ZeroDistribution | E::UndefinedEstimate => CliError::Undefined(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(format!("cannot encode artifact: {e}"))
    }
}

/// A failed run plus the completion status its manifest should record:
/// `"failed"` for ordinary failures, `"incomplete"` for sweeps aborted
/// part-way through their case list.
#[derive(Debug)]
pub struct RunFailure {
    pub error: CliError,
    pub status: &'static str,
}

impl From<CliError> for RunFailure {
    fn from(error: CliError) -> Self {
        RunFailure {
            error,
            status: "failed",
        }
    }
}

impl From<quasicryst_core::Error> for RunFailure {
    fn from(e: quasicryst_core::Error) -> Self {
        RunFailure::from(CliError::from(e))
    }
}

impl From<std::io::Error> for RunFailure {
    fn from(e: std::io::Error) -> Self {
        RunFailure::from(CliError::from(e))
    }
}

impl From<serde_json::Error> for RunFailure {
    fn from(e: serde_json::Error) -> Self {
        RunFailure::from(CliError::from(e))
    }
}
