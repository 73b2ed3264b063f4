//! Closed-form cubic approximations of the unstable and stable manifolds of
//! the saddle equilibrium, and of the invariant curve through a period-two
//! point, written as implicit polynomials in the original coordinates.
//!
//! Every model evaluates
//!
//! ```text
//! L(x, y) + q * B(x, y)^2 + c * B(x, y)^3
//! ```
//!
//! where `L` and `B` are linear forms in `(x - x0, y - y0)` obtained from the
//! inverse eigenbasis, and `(x0, y0)` is the base point. The zero set near
//! the base point is the manifold.

use serde::Serialize;

use crate::dynamics::{Params, PeriodicPair};
use crate::error::{Error, Result};
use crate::spectral::{spectrum_t, spectrum_t2, SpectrumT, SpectrumT2};

pub const NEWTON_TOL: f64 = 1e-12;
pub const NEWTON_MAX_ITER: usize = 50;
const MAX_HALVINGS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ManifoldKind {
    Unstable,
    Stable,
    Center,
}

impl ManifoldKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ManifoldKind::Unstable => "unstable",
            ManifoldKind::Stable => "stable",
            ManifoldKind::Center => "center",
        }
    }
}

/// Which invariant curve to build, together with the data it depends on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ManifoldTarget {
    Unstable(Params),
    Stable(Params),
    Center(PeriodicPair),
}

impl ManifoldTarget {
    pub fn kind(&self) -> ManifoldKind {
        match self {
            ManifoldTarget::Unstable(_) => ManifoldKind::Unstable,
            ManifoldTarget::Stable(_) => ManifoldKind::Stable,
            ManifoldTarget::Center(_) => ManifoldKind::Center,
        }
    }

    pub fn build(&self) -> Result<ManifoldModel> {
        match self {
            ManifoldTarget::Unstable(p) => unstable_model(p),
            ManifoldTarget::Stable(p) => stable_model(p),
            ManifoldTarget::Center(pair) => center_model(pair),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ManifoldTarget::Unstable(p) | ManifoldTarget::Stable(p) => format!(
                "{} alpha={} beta={}",
                self.kind().as_str(),
                p.alpha(),
                p.beta()
            ),
            ManifoldTarget::Center(pair) => format!(
                "center phi={} psi={:.10} beta={}",
                pair.phi(),
                pair.psi(),
                pair.beta()
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ModelSpectrum {
    T(SpectrumT),
    T2(SpectrumT2),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ManifoldModel {
    pub kind: ManifoldKind,
    pub base: [f64; 2],
    /// `(gamma1, gamma2, gamma3)` for saddle kinds, `(delta1, delta2, delta3)`
    /// for the center kind.
    pub linear_constants: [f64; 3],
    /// `a2`, `b2` or `c2`.
    pub coeff2: f64,
    /// `a3`, `b3` or `c3`.
    pub coeff3: f64,
    /// Slope of the curve at the base point as printed alongside each
    /// expansion: `dy/dx` for the unstable and center kinds, `dx/dy` for the
    /// stable kind, whose curve is a graph over `y`.
    pub tangent_slope: f64,
    pub spectrum: ModelSpectrum,
}

/// `L(x, y) + quadratic * B^2 + cubic * B^3` with
/// `L = linear[0] dx + linear[1] dy` and `B = bracket[0] dx + bracket[1] dy`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImplicitCubic {
    pub base: [f64; 2],
    pub linear: [f64; 2],
    pub bracket: [f64; 2],
    pub quadratic: f64,
    pub cubic: f64,
}

/// The implicit polynomial expanded in `x` and `y`, in the layout
/// `x_coeff*x + constant + y_coeff*y + quadratic*(bx*x + bc + by*y)^2 + cubic*(...)^3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrintedPolynomial {
    pub x_coeff: f64,
    pub constant: f64,
    pub y_coeff: f64,
    pub quadratic: f64,
    pub bracket_x: f64,
    pub bracket_constant: f64,
    pub bracket_y: f64,
    pub cubic: f64,
}

impl ImplicitCubic {
    fn forms(&self, x: f64, y: f64) -> (f64, f64) {
        let dx = x - self.base[0];
        let dy = y - self.base[1];
        (
            self.linear[0] * dx + self.linear[1] * dy,
            self.bracket[0] * dx + self.bracket[1] * dy,
        )
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let (l, b) = self.forms(x, y);
        l + b * b * (self.quadratic + self.cubic * b)
    }

    pub fn d_dy(&self, x: f64, y: f64) -> f64 {
        let (_, b) = self.forms(x, y);
        self.linear[1] + (2.0 * self.quadratic * b + 3.0 * self.cubic * b * b) * self.bracket[1]
    }

    pub fn printed(&self) -> PrintedPolynomial {
        let [x0, y0] = self.base;
        PrintedPolynomial {
            x_coeff: self.linear[0],
            constant: -(self.linear[0] * x0 + self.linear[1] * y0),
            y_coeff: self.linear[1],
            quadratic: self.quadratic,
            bracket_x: self.bracket[0],
            bracket_constant: -(self.bracket[0] * x0 + self.bracket[1] * y0),
            bracket_y: self.bracket[1],
            cubic: self.cubic,
        }
    }
}

impl ManifoldModel {
    pub fn implicit(&self) -> ImplicitCubic {
        let [c1, c2, c3] = self.linear_constants;
        let (linear, bracket, quadratic) = match self.kind {
            ManifoldKind::Unstable => ([c1, -c2], [c1, c3], self.coeff2),
            ManifoldKind::Stable => ([c1, c3], [c1, -c2], -self.coeff2),
            ManifoldKind::Center => ([c1, -c2], [c1, c3], self.coeff2),
        };
        ImplicitCubic {
            base: self.base,
            linear,
            bracket,
            quadratic,
            cubic: self.coeff3,
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        eval_manifold(self, x, y)
    }

    /// `dy/dx` of the curve at the base point.
    pub fn dy_dx_at_base(&self) -> f64 {
        match self.kind {
            ManifoldKind::Stable => 1.0 / self.tangent_slope,
            ManifoldKind::Unstable | ManifoldKind::Center => self.tangent_slope,
        }
    }

    /// Newton's method on `y -> eval(x, y)` with step halving whenever the
    /// residual grows. Returns `(y, |residual|)` on convergence.
    pub fn solve_y(&self, x: f64, seed: f64) -> Option<(f64, f64)> {
        let poly = self.implicit();
        let mut y = seed;
        let mut r = poly.eval(x, y);
        for _ in 0..NEWTON_MAX_ITER {
            if !r.is_finite() {
                return None;
            }
            if r.abs() <= NEWTON_TOL {
                return Some((y, r.abs()));
            }
            let d = poly.d_dy(x, y);
            if d == 0.0 || !d.is_finite() {
                return None;
            }
            let mut step = -r / d;
            let mut accepted = false;
            for _ in 0..MAX_HALVINGS {
                let r_new = poly.eval(x, y + step);
                if r_new.is_finite() && r_new.abs() <= r.abs() {
                    y += step;
                    r = r_new;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if !accepted {
                return None;
            }
        }
        (r.abs() <= NEWTON_TOL).then_some((y, r.abs()))
    }
}

fn saddle_spectrum(p: &Params) -> Result<SpectrumT> {
    let s = spectrum_t(p);
    s.require_saddle()?;
    Ok(s)
}

fn gammas(s: &SpectrumT) -> [f64; 3] {
    let theta = s.theta;
    [
        -(1.0 + s.params.beta() * s.x_bar) / theta,
        (theta - 1.0) / (2.0 * theta),
        (theta + 1.0) / (2.0 * theta),
    ]
}

/// Quadratic and cubic coefficients `(a2, a3)` of the unstable graph
/// `eta = a2 xi^2 + a3 xi^3` in eigen-coordinates.
pub fn unstable_coefficients(s: &SpectrumT) -> (f64, f64) {
    let (theta, x, l1, l2) = (s.theta, s.x_bar, s.lambda1, s.lambda2);
    let k = 1.0 + 2.0 * s.params.beta() * x;
    let a2 =
        (1.0 + theta + 2.0 * s.params.beta() * x) / (theta * (theta + 1.0) * (l1 * l1 - l2) * x);
    let bracket = l2 - l1 * l1 - k / (theta * x) * (1.0 / l1 + l1 / l2) - l1 / (l2 * x);
    let a3 = a2 / ((l1.powi(3) - l2) * x) * bracket;
    (a2, a3)
}

/// Quadratic and cubic coefficients `(b2, b3)` of the stable graph
/// `xi = b2 eta^2 + b3 eta^3`.
pub fn stable_coefficients(s: &SpectrumT) -> (f64, f64) {
    let (theta, x, l1, l2) = (s.theta, s.x_bar, s.lambda1, s.lambda2);
    let k = 1.0 + 2.0 * s.params.beta() * x;
    let b2 =
        (1.0 - theta + 2.0 * s.params.beta() * x) / (theta * (theta - 1.0) * (l2 * l2 - l1) * x);
    let bracket = l1 - l2 * l2 + k / (theta * x) * (1.0 / l2 + l2 / l1) - l2 / (l1 * x);
    let b3 = b2 / ((l2.powi(3) - l1) * x) * bracket;
    (b2, b3)
}

/// Quadratic and cubic coefficients `(c2, c3)` of the invariant graph
/// `eta = c2 xi^2 + c3 xi^3` at a period-two point.
pub fn center_coefficients(pair: &PeriodicPair) -> (f64, f64) {
    let phi = pair.phi();
    let psi = pair.psi();
    let sum = phi + psi - 1.0;
    let c2 = phi / ((1.0 - phi) * sum * (2.0 * phi * psi - phi - psi + 1.0));

    let psi2 = psi * psi;
    let psi3 = psi2 * psi;
    let k1 = 3.0 * psi2 - 4.0 * psi + 1.0;
    let k2 = 3.0 * psi3 - 12.0 * psi2 + 9.0 * psi - 1.0;
    let k3 = 5.0 * psi3 - 14.0 * psi2 + 6.0 * psi + 1.0;
    let k4 = 2.0 * psi3 - 4.0 * psi2 + psi + 1.0;
    let k5 = phi * phi * (3.0 * psi2 - 3.0 * psi + 1.0) - phi * (3.0 * psi2 - 5.0 * psi + 2.0)
        + (psi - 1.0) * (psi - 1.0);
    let num = phi.powi(4) * k1 + phi.powi(3) * k2 - phi * phi * k3 + k4 * phi;
    let c3 = num / (psi * sum * (1.0 - phi) * k5) * c2;
    (c2, c3)
}

pub fn unstable_model(p: &Params) -> Result<ManifoldModel> {
    let s = saddle_spectrum(p)?;
    let (a2, a3) = unstable_coefficients(&s);
    Ok(ManifoldModel {
        kind: ManifoldKind::Unstable,
        base: [s.x_bar, s.x_bar],
        linear_constants: gammas(&s),
        coeff2: a2,
        coeff3: a3,
        tangent_slope: -(1.0 + s.theta) / (2.0 * s.x_bar),
        spectrum: ModelSpectrum::T(s),
    })
}

pub fn stable_model(p: &Params) -> Result<ManifoldModel> {
    let s = saddle_spectrum(p)?;
    let (b2, b3) = stable_coefficients(&s);
    Ok(ManifoldModel {
        kind: ManifoldKind::Stable,
        base: [s.x_bar, s.x_bar],
        linear_constants: gammas(&s),
        coeff2: b2,
        coeff3: b3,
        tangent_slope: 2.0 * s.x_bar / (s.theta - 1.0),
        spectrum: ModelSpectrum::T(s),
    })
}

/// Invariant curve through `(phi, psi)`. The companion curve through
/// `(psi, phi)` is `center_model(&pair.swapped())`.
pub fn center_model(pair: &PeriodicPair) -> Result<ManifoldModel> {
    let phi = pair.phi();
    let psi = pair.psi();
    if !(phi.is_finite() && psi.is_finite() && phi > 1.0 && psi > 1.0) {
        return Err(Error::Domain {
            field: "phi",
            value: phi,
            reason: "not a valid period-two pair",
        });
    }
    let s = spectrum_t2(pair);
    let sum = phi + psi - 1.0;
    let deltas = [
        psi * psi * (phi - 1.0) / (phi * phi * sum),
        psi / sum,
        (phi - 1.0) / sum,
    ];
    let (c2, c3) = center_coefficients(pair);
    Ok(ManifoldModel {
        kind: ManifoldKind::Center,
        base: [phi, psi],
        linear_constants: deltas,
        coeff2: c2,
        coeff3: c3,
        tangent_slope: psi * (phi - 1.0) / (phi * phi),
        spectrum: ModelSpectrum::T2(s),
    })
}

pub fn eval_manifold(m: &ManifoldModel, x: f64, y: f64) -> f64 {
    m.implicit().eval(x, y)
}

pub fn tangent_slope(m: &ManifoldModel) -> f64 {
    m.tangent_slope
}

/// Zero set of a model sampled on a uniform grid in `x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveTrace {
    /// Converged `(x, y)` points in increasing `x`.
    pub points: Vec<[f64; 2]>,
    pub max_residual: f64,
    /// Grid abscissae where Newton failed.
    pub gaps: Vec<f64>,
    pub model: ManifoldModel,
}

impl CurveTrace {
    pub fn is_complete(&self) -> bool {
        self.gaps.is_empty()
    }
}

/// Traces the zero set of `m` over `n` uniformly spaced abscissae in
/// `[x_lo, x_hi]`. The solve closest to the base point is seeded from the
/// tangent line; the others continue outward from their converged
/// neighbour.
pub fn trace_curve(m: &ManifoldModel, x_lo: f64, x_hi: f64, n: usize) -> Result<CurveTrace> {
    if !(x_lo.is_finite() && x_hi.is_finite()) || x_lo >= x_hi {
        return Err(Error::InvalidRange(format!(
            "need finite x_lo < x_hi, got [{x_lo}, {x_hi}]"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidRange(format!(
            "need at least 2 samples, got {n}"
        )));
    }
    let xs: Vec<f64> = (0..n)
        .map(|i| x_lo + (x_hi - x_lo) * i as f64 / (n - 1) as f64)
        .collect();
    let [bx, by] = m.base;
    let start = xs
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - bx).abs().total_cmp(&(b.1 - bx).abs()))
        .map(|(i, _)| i)
        .unwrap_or(0);

    let mut ys: Vec<Option<(f64, f64)>> = vec![None; n];
    let tangent_seed = by + m.dy_dx_at_base() * (xs[start] - bx);
    ys[start] = m.solve_y(xs[start], tangent_seed);

    let mut seed = ys[start].map_or(tangent_seed, |(y, _)| y);
    for i in start + 1..n {
        ys[i] = m.solve_y(xs[i], seed);
        if let Some((y, _)) = ys[i] {
            seed = y;
        }
    }
    let mut seed = ys[start].map_or(tangent_seed, |(y, _)| y);
    for i in (0..start).rev() {
        ys[i] = m.solve_y(xs[i], seed);
        if let Some((y, _)) = ys[i] {
            seed = y;
        }
    }

    let mut points = Vec::with_capacity(n);
    let mut gaps = Vec::new();
    let mut max_residual: f64 = 0.0;
    for (x, sol) in xs.iter().zip(ys) {
        match sol {
            Some((y, r)) => {
                points.push([*x, y]);
                max_residual = max_residual.max(r);
            }
            None => gaps.push(*x),
        }
    }
    Ok(CurveTrace {
        points,
        max_residual,
        gaps,
        model: *m,
    })
}
