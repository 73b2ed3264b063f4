//! Invariant manifolds of the rational difference equation
//! `x[n+1] = alpha + beta*x[n-1] + x[n-1]/x[n]`.
//!
//! * [`dynamics`]: the planar map, its equilibrium, period-two solutions and orbits.
//! * [`spectral`]: eigen-data and normal-form nonlinearities of `T` and `T^2`.
//! * [`manifolds`]: closed-form cubic approximations and curve tracing.
//! * [`series`] and [`oracle`]: an independent power-series solver for the
//!   invariance equations.
//! * [`verify`]: executable checks and the regression table of the worked examples.

pub mod dynamics;
pub mod error;
pub mod manifolds;
pub mod oracle;
pub mod series;
pub mod spectral;
pub mod verify;

pub use dynamics::{
    fixed_point, iterate_trajectory, periodic_partner, step_t, step_t2, validate_params, Params,
    PeriodicPair, State,
};
pub use error::{Error, Result};
pub use manifolds::{
    center_model, eval_manifold, stable_model, tangent_slope, trace_curve, unstable_model,
    CurveTrace, ManifoldKind, ManifoldModel, ManifoldTarget,
};
pub use oracle::{solve_invariance, InvarianceSolution};
pub use series::TruncatedSeries;
pub use spectral::{
    change_basis, normal_nonlinearity, normal_nonlinearity2, spectrum_t, spectrum_t2,
    BasisDirection, Mat2, SpectrumT, SpectrumT2,
};
pub use verify::{run_suite, CheckReport, Grid, Status, Summary};
