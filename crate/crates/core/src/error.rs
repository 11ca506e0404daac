use thiserror::Error;

/// Errors produced by the lifting library.
///
/// Locations are reported as `f64` regardless of the scalar type in use.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum LiftError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not hyperbolic{}: witness {witness:e}", location.map(|t| format!(" at t = {t}")).unwrap_or_default())]
    NotHyperbolic { location: Option<f64>, witness: f64 },

    #[error("not hyperbolic at node (x = {x}, y = {y}): witness {witness:e}")]
    NotHyperbolicAtNode { x: f64, y: f64, witness: f64 },

    #[error("t = {t} outside curve interval [{a}, {b}]")]
    Domain { t: f64, a: f64, b: f64 },

    #[error("insufficient resolution: {0}")]
    InsufficientResolution(String),

    #[error("negative dominant invariant c1 = {value:e} at t = {t}")]
    NotInOrbitSpace { t: f64, value: f64 },

    #[error("invalid intervals: {0}")]
    InvalidIntervals(String),

    #[error("cannot reduce at t = {t}: c1 = {c1:e} vanishes")]
    CannotReduceAtZero { t: f64, c1: f64 },

    #[error("incompatible lifts: {0}")]
    IncompatibleLifts(String),

    #[error("function is negative: f = {value:e} at t = {t}")]
    NotNonnegative { t: f64, value: f64 },

    #[error("i/o failure: {0}")]
    Io(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl LiftError {
    /// True for failures of the numerical pipeline (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            LiftError::NotHyperbolic { .. }
                | LiftError::NotHyperbolicAtNode { .. }
                | LiftError::IncompatibleLifts(_)
                | LiftError::InsufficientResolution(_)
                | LiftError::NotInOrbitSpace { .. }
                | LiftError::CannotReduceAtZero { .. }
                | LiftError::NotNonnegative { .. }
        )
    }

    pub(crate) fn with_location(self, t: f64) -> Self {
        match self {
            LiftError::NotHyperbolic { witness, .. } => LiftError::NotHyperbolic {
                location: Some(t),
                witness,
            },
            other => other,
        }
    }
}

pub type Result<T, E = LiftError> = std::result::Result<T, E>;
