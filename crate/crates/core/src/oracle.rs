//! Order-by-order power-series solution of the invariance equations.
//!
//! The unknown graph is substituted into the normal-form nonlinearities
//! before any division, so every equation becomes a univariate truncated
//! series in the graph variable. The coefficient of `t^k` in the residual is
//! affine in the `k`-th unknown once lower orders are fixed, which lets each
//! order be solved from two residual evaluations. Nothing here uses the
//! closed-form coefficients in [`crate::manifolds`].

use crate::error::{Error, Result};
use crate::manifolds::ManifoldTarget;
use crate::series::{TruncatedSeries, DEFAULT_DEGREE_CAP};
use crate::spectral::{spectrum_t, spectrum_t2};

/// Affine slopes smaller than this are reported as resonances.
pub const RESONANCE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceSolution {
    /// Graph coefficients for `t^2, t^3, ..., t^degree`.
    pub coefficients: Vec<f64>,
    /// Affine slope of the residual coefficient at each solved order.
    pub slopes: Vec<f64>,
    /// Largest residual coefficient of orders `0..=degree` after solving.
    pub max_residual: f64,
}

/// Graph series `sum_k coeffs[k-2] t^k`.
fn graph(coeffs: &[f64], cap: usize) -> TruncatedSeries {
    let mut c = vec![0.0, 0.0];
    c.extend_from_slice(coeffs);
    TruncatedSeries::new(&c, cap)
}

/// Constant terms this small are rounding left over from quantities that
/// vanish identically at the base point.
const ORIGIN_ROUNDING: f64 = 1e-12;

/// Clears a constant term that must vanish analytically, rejecting it if it
/// is larger than rounding.
fn pinned_at_origin(mut s: TruncatedSeries) -> Result<TruncatedSeries> {
    let c0 = s.coeff(0);
    if c0.abs() > ORIGIN_ROUNDING {
        return Err(Error::NonzeroInnerConstant { constant: c0 });
    }
    s = s.offset(-c0);
    Ok(s)
}

/// Residual of the invariance equation for the graph with coefficients
/// `coeffs` (orders 2, 3, ...), truncated at `cap`:
///
/// * unstable: `phi(l1 t + f(t, phi)) - l2 phi - g(t, phi)`
/// * stable: `psi(l2 t + g(psi, t)) - l1 psi - f(psi, t)`
/// * center: `h(l01 t + f0(t, h)) - h - g0(t, h)`
pub fn residual_series(
    target: &ManifoldTarget,
    coeffs: &[f64],
    cap: usize,
) -> Result<TruncatedSeries> {
    let t = TruncatedSeries::variable(cap);
    let w = graph(coeffs, cap);
    match target {
        ManifoldTarget::Unstable(p) => {
            let s = spectrum_t(p);
            let (f, g) = saddle_nonlinearity(p.beta(), s.x_bar, s.theta, &t, &w)?;
            let inner = t.scale(s.lambda1).add(&f)?;
            w.compose(&inner)?.sub(&w.scale(s.lambda2))?.sub(&g)
        }
        ManifoldTarget::Stable(p) => {
            let s = spectrum_t(p);
            let (f, g) = saddle_nonlinearity(p.beta(), s.x_bar, s.theta, &w, &t)?;
            let inner = t.scale(s.lambda2).add(&g)?;
            w.compose(&inner)?.sub(&w.scale(s.lambda1))?.sub(&f)
        }
        ManifoldTarget::Center(pair) => {
            let s = spectrum_t2(pair);
            let (f0, g0) = period_two_nonlinearity(pair.phi(), pair.psi(), pair.beta(), &t, &w)?;
            let inner = pinned_at_origin(t.scale(s.lambda01).add(&f0)?)?;
            w.compose(&inner)?.sub(&w)?.sub(&g0)
        }
    }
}

/// `(f, g)` of the normal form of `T` on series arguments.
fn saddle_nonlinearity(
    beta: f64,
    x_bar: f64,
    theta: f64,
    xi: &TruncatedSeries,
    eta: &TruncatedSeries,
) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let sum = xi.add(eta)?;
    let num = sum
        .mul(&sum)?
        .scale(1.0 + 2.0 * beta * x_bar)
        .add(&xi.mul(xi)?.sub(&eta.mul(eta)?)?.scale(theta))?;
    let q = num.div(&sum.offset(x_bar))?;
    Ok((
        q.scale(1.0 / (theta * (theta - 1.0))),
        q.scale(1.0 / (theta * (theta + 1.0))),
    ))
}

/// `(f0, g0)` of the normal form of `T^2` on series arguments.
fn period_two_nonlinearity(
    phi: f64,
    psi: f64,
    beta: f64,
    xi: &TruncatedSeries,
    eta: &TruncatedSeries,
) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let cap = xi.cap();
    let sum = xi.add(eta)?;
    let sp = sum.offset(psi);

    let shifted_u = xi
        .scale(phi * phi / ((phi - 1.0) * psi))
        .sub(&eta.scale(phi * phi / (psi * psi)))?
        .offset(phi);
    let factor = sum.scale(beta).offset(1.0 + beta * psi);
    let zeta = sp
        .mul(&sp)?
        .div(&sp.add(&shifted_u.mul(&factor)?)?)?
        .offset(-psi / phi);

    let one = TruncatedSeries::constant(1.0, cap);
    let over_sp = one.div(&sp)?;
    let norm = psi + phi - 1.0;

    let f_inner = zeta
        .sub(&xi.scale(1.0 / (phi * psi)))?
        .sub(&eta.mul(&over_sp)?.scale((phi + psi) / phi))?
        .add(&sum.mul(xi)?.mul(&over_sp)?.scale(1.0 / (phi * (1.0 - phi))))?;
    let g_inner = zeta
        .sub(&eta.scale((phi + psi) / (phi * psi)))?
        .sub(&xi.mul(&over_sp)?.scale(1.0 / phi))?
        .add(
            &sum.mul(eta)?
                .mul(&over_sp)?
                .scale((1.0 - phi) * (phi + psi) / (phi * psi * psi)),
        )?;
    Ok((f_inner.scale((phi - 1.0) / norm), g_inner.scale(psi / norm)))
}

/// Solves the invariance equation for the graph coefficients of orders
/// `2..=degree`, one order at a time.
pub fn solve_invariance(target: &ManifoldTarget, degree: usize) -> Result<InvarianceSolution> {
    if degree < 2 {
        return Err(Error::DegreeTooLow { degree });
    }
    if let ManifoldTarget::Unstable(p) | ManifoldTarget::Stable(p) = target {
        spectrum_t(p).require_saddle()?;
    }
    let cap = degree;
    let mut coeffs: Vec<f64> = Vec::with_capacity(degree - 1);
    let mut slopes = Vec::with_capacity(degree - 1);
    for order in 2..=degree {
        coeffs.push(0.0);
        let r0 = residual_series(target, &coeffs, cap)?.coeff(order);
        *coeffs.last_mut().unwrap() = 1.0;
        let r1 = residual_series(target, &coeffs, cap)?.coeff(order);
        let slope = r1 - r0;
        if !slope.is_finite() || slope.abs() < RESONANCE_EPS {
            return Err(Error::Resonance { order, slope });
        }
        *coeffs.last_mut().unwrap() = -r0 / slope;
        slopes.push(slope);
    }
    let residual = residual_series(target, &coeffs, cap)?;
    let max_residual = residual
        .coeffs()
        .iter()
        .fold(0.0_f64, |m, c| m.max(c.abs()));
    Ok(InvarianceSolution {
        coefficients: coeffs,
        slopes,
        max_residual,
    })
}

/// Residual series of the truncated cubic graph `(c2, c3)`; its lowest
/// surviving coefficient sits at order four.
pub fn cubic_graph_residual(target: &ManifoldTarget, c2: f64, c3: f64) -> Result<TruncatedSeries> {
    residual_series(target, &[c2, c3], DEFAULT_DEGREE_CAP)
}
