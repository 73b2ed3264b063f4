use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{field}` = {value} is out of range: {reason}")]
    Domain {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("state ({y}, {z}) is not strictly positive and finite")]
    NonPositiveState { y: f64, z: f64 },

    #[error("trajectory left the positive quadrant at step {step}")]
    TrajectoryEscaped { step: usize },

    #[error("denominator vanishes in {what} (value {value:e})")]
    VanishingDenominator { what: &'static str, value: f64 },

    #[error("basis matrix is singular (det = {det:e})")]
    SingularBasis { det: f64 },

    #[error("fixed point is not a saddle: |lambda1| = {lambda1_abs}, |lambda2| = {lambda2_abs}")]
    NotSaddle { lambda1_abs: f64, lambda2_abs: f64 },

    #[error("series degree caps differ ({left} vs {right})")]
    CapMismatch { left: usize, right: usize },

    #[error("series division by a series with constant term {constant:e}")]
    ZeroConstantTerm { constant: f64 },

    #[error("inner series of a composition has nonzero constant term {constant:e}")]
    NonzeroInnerConstant { constant: f64 },

    #[error("invariance equation is resonant at order {order} (affine slope {slope:e})")]
    Resonance { order: usize, slope: f64 },

    #[error("requested degree {degree} is below 2")]
    DegreeTooLow { degree: usize },

    #[error("invalid curve range: {0}")]
    InvalidRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
