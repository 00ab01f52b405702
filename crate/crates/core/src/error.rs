use core::fmt;

/// Error raised by any operation in this crate.
///
/// Every variant carries the `module::operation` name of the failing stage
/// so that front ends can report where a pipeline broke.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    Domain { op: &'static str, detail: alloc::string::String },
    /// Structurally invalid input (lengths, normalization, empty sets...).
    InvalidInput { op: &'static str, detail: alloc::string::String },
    /// Evaluation at (or numerically on top of) a pole `ξ = mω`.
    Pole { op: &'static str, m: usize, xi: f64 },
    /// An iteration did not converge within its budget.
    NonConvergence { op: &'static str, iterations: usize },
    /// An intermediate value left the representable range.
    Overflow { op: &'static str, detail: alloc::string::String },
    /// The supplied harmonic/Fourier order is too small for the request.
    InsufficientOrder { op: &'static str, needed: usize, available: usize },
    /// A truncation (Fock cutoff, grid, quadrature order) is too coarse.
    Truncation { op: &'static str, detail: alloc::string::String },
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    /// `module::operation` name of the stage that failed.
    pub fn op(&self) -> &'static str {
        match self {
            Error::Domain { op, .. }
            | Error::InvalidInput { op, .. }
            | Error::Pole { op, .. }
            | Error::NonConvergence { op, .. }
            | Error::Overflow { op, .. }
            | Error::InsufficientOrder { op, .. }
            | Error::Truncation { op, .. } => op,
        }
    }

    pub(crate) fn domain(op: &'static str, detail: impl Into<alloc::string::String>) -> Self {
        Error::Domain { op, detail: detail.into() }
    }

    pub(crate) fn invalid(op: &'static str, detail: impl Into<alloc::string::String>) -> Self {
        Error::InvalidInput { op, detail: detail.into() }
    }

    pub(crate) fn overflow(op: &'static str, detail: impl Into<alloc::string::String>) -> Self {
        Error::Overflow { op, detail: detail.into() }
    }

    pub(crate) fn truncation(op: &'static str, detail: impl Into<alloc::string::String>) -> Self {
        Error::Truncation { op, detail: detail.into() }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { op, detail } => write!(f, "{op}: domain error: {detail}"),
            Error::InvalidInput { op, detail } => write!(f, "{op}: invalid input: {detail}"),
            Error::Pole { op, m, xi } => write!(f, "{op}: pole at m = {m} (xi = {xi})"),
            Error::NonConvergence { op, iterations } => {
                write!(f, "{op}: no convergence after {iterations} iterations")
            }
            Error::Overflow { op, detail } => write!(f, "{op}: overflow: {detail}"),
            Error::InsufficientOrder { op, needed, available } => {
                write!(f, "{op}: order {needed} required but only {available} available")
            }
            Error::Truncation { op, detail } => write!(f, "{op}: truncation error: {detail}"),
        }
    }
}

impl core::error::Error for Error {}
