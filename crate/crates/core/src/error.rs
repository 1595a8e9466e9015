use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of the solver stack.
///
/// Variants fall into three families used by the command-line front end to
/// pick an exit code: configuration problems, numerical failures and scan
/// resolution problems. See [`Error::category`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("invalid solver settings: {0}")]
    InvalidSettings(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("amplitude collapsed to {amplitude:e} at x = {x}")]
    AmplitudeCollapse { x: f64, amplitude: f64 },

    #[error("phase stopped increasing along the integration at x = {x}")]
    PhaseNotMonotone { x: f64 },

    #[error("step size underflow at x = {x} (h = {step:e})")]
    StepUnderflow { x: f64, step: f64 },

    #[error("energy {energy} is not negative, the exterior solution does not decay")]
    NoBoundTail { energy: f64 },

    #[error("tail phase did not converge within {extent} length units (last increment {last_increment:e})")]
    TailDivergence { extent: f64, last_increment: f64 },

    #[error("energy {energy} outside the search window ({lower}, {upper})")]
    EnergyOutOfRange { energy: f64, lower: f64, upper: f64 },

    #[error("scan grid too coarse: {crossings} crossings between E = {lower} and E = {upper}, increase the number of scan points")]
    Resolution {
        lower: f64,
        upper: f64,
        crossings: usize,
    },

    #[error("total phase is not increasing between E = {lower} ({phase_lower}) and E = {upper} ({phase_upper})")]
    NonMonotonePhase {
        lower: f64,
        upper: f64,
        phase_lower: f64,
        phase_upper: f64,
    },

    #[error("finite-difference box too small: lowest eigenvalue moved by {shift:e} when padding was increased")]
    BoxTooSmall { shift: f64 },

    #[error("invalid finite-difference grid: {0}")]
    InvalidGrid(String),
}

/// Coarse grouping of errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Config,
    Numerical,
    Resolution,
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::InvalidPotential(_)
            | Error::InvalidSettings(_)
            | Error::Config(_)
            | Error::InvalidGrid(_) => ErrorCategory::Config,
            Error::Resolution { .. } | Error::NonMonotonePhase { .. } => ErrorCategory::Resolution,
            _ => ErrorCategory::Numerical,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn categories() {
        assert_eq!(Error::Config("x".into()).category(), ErrorCategory::Config);
        assert_eq!(
            Error::InvalidGrid("x".into()).category(),
            ErrorCategory::Config
        );
        assert_eq!(
            Error::Resolution {
                lower: -1.0,
                upper: -0.9,
                crossings: 2
            }
            .category(),
            ErrorCategory::Resolution
        );
        assert_eq!(
            Error::AmplitudeCollapse {
                x: 0.0,
                amplitude: -1e-3
            }
            .category(),
            ErrorCategory::Numerical
        );
        assert_eq!(
            Error::TailDivergence {
                extent: 1e4,
                last_increment: 1e-9
            }
            .category(),
            ErrorCategory::Numerical
        );
    }
}
