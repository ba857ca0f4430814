use core::fmt;

/// Result alias used throughout the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of a function.
    Domain {
        /// Function that rejected the argument.
        function: &'static str,
        /// What was wrong.
        reason: &'static str,
    },
    /// Distribution or series parameters violate their invariants.
    InvalidParameters(&'static str),
    /// An asymptotic formula was asked for outside its validity region.
    Validity(&'static str),
    /// A root could not be bracketed.
    NoBracket(&'static str),
    /// An iteration hit its cap before meeting the tolerance.
    NotConverged {
        /// Iterating routine.
        function: &'static str,
        /// Iterations performed.
        iterations: usize,
    },
}

impl Error {
    pub(crate) const fn domain(function: &'static str, reason: &'static str) -> Self {
        Error::Domain { function, reason }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { function, reason } => write!(f, "{function}: domain error: {reason}"),
            Error::InvalidParameters(reason) => write!(f, "invalid parameters: {reason}"),
            Error::Validity(reason) => write!(f, "outside validity region: {reason}"),
            Error::NoBracket(what) => write!(f, "{what}: could not bracket a root"),
            Error::NotConverged {
                function,
                iterations,
            } => write!(
                f,
                "{function}: no convergence after {iterations} iterations"
            ),
        }
    }
}

impl core::error::Error for Error {}
