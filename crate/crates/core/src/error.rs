//! Error types shared by every module of the crate.

use std::fmt;

/// Errors raised by the numerical kernels and the physics layers on top of
/// them. Each variant carries enough context to name the violated
/// precondition in its `Display` output, which is what the CLI prints on the
/// error stream.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The two bracket endpoints do not straddle a sign change.
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    /// An iterative method hit its iteration or subdivision cap.
    NoConvergence { what: &'static str },
    /// A quadrature estimate became NaN or infinite.
    NonFinite { what: &'static str },
    /// An argument violated a domain precondition.
    Domain { what: String },
    /// A derived mode frequency was not strictly positive.
    Positivity { what: String },
    /// A truncated Fock ladder is too short for the requested tail bound.
    Truncation { what: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NoSignChange { lo, hi, f_lo, f_hi } => write!(
                f,
                "no sign change on bracket [{lo}, {hi}]: f(lo)={f_lo}, f(hi)={f_hi}"
            ),
            Error::NoConvergence { what } => write!(f, "no convergence: {what}"),
            Error::NonFinite { what } => write!(f, "non-finite estimate: {what}"),
            Error::Domain { what } => write!(f, "domain error: {what}"),
            Error::Positivity { what } => write!(f, "positivity violated: {what}"),
            Error::Truncation { what } => write!(f, "truncation too short: {what}"),
        }
    }
}

impl std::error::Error for Error {}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain { what: msg.into() }
    }

    pub fn positivity(msg: impl Into<String>) -> Self {
        Error::Positivity { what: msg.into() }
    }

    pub fn truncation(msg: impl Into<String>) -> Self {
        Error::Truncation { what: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
