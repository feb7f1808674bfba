//! Error type shared by the whole crate.
//!
//! Domain errors describe invalid caller input; internal errors signal that a
//! solver failed where the theory guarantees success, which is a bug worth a
//! diagnostic rather than a silent fallback. The CLI maps the two classes to
//! different exit codes.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("metric eigenvalues must be positive, got i1 = {i1}, i3 = {i3}")]
    NonPositiveEigenvalue { i1: f64, i3: f64 },

    #[error("pbar3 = {0} lies outside [-1, 1]")]
    PBar3OutOfRange(f64),

    #[error("covector is off the level surface 2H(p) = 1, residual {residual:.3e}")]
    OffLevelSurface { residual: f64 },

    #[error("target rotation is the identity; every covector reaches it at t = 0")]
    IdentityTarget,

    #[error("{name} = {value} is invalid, expected {expected}")]
    InvalidArgument {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("{name} = {value} is too small, need at least {min}")]
    InvalidCount {
        name: &'static str,
        value: usize,
        min: usize,
    },

    #[error(
        "no sign change of {function} found below tau = {ceiling:.6} \
         (eta = {eta}, pbar3 = {pbar3}); this violates the root bounds and is a bug"
    )]
    RootScanExhausted {
        function: &'static str,
        eta: f64,
        pbar3: f64,
        ceiling: f64,
    },

    #[error("{context}: {detail}")]
    SolverFailed { context: &'static str, detail: String },
}

impl Error {
    /// Internal errors indicate a solver bug or an exhausted search, not bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::RootScanExhausted { .. } | Error::SolverFailed { .. }
        )
    }
}
