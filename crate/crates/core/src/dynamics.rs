//! The map family `T(y, z) = (z, alpha + beta*y + y/z)`, its fixed point,
//! period-two solutions and orbits.
//!
//! A state `(y, z)` stands for two consecutive terms `(x[n-1], x[n])` of the
//! scalar recurrence `x[n+1] = alpha + beta*x[n-1] + x[n-1]/x[n]`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Parameters of the map. Only constructible through [`validate_params`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Params {
    alpha: f64,
    beta: f64,
}

impl Params {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        validate_params(alpha, beta)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The unique positive equilibrium `(1 + alpha) / (1 - beta)`.
    pub fn fixed_point(&self) -> f64 {
        fixed_point(self)
    }
}

pub fn validate_params(alpha: f64, beta: f64) -> Result<Params> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::Domain {
            field: "alpha",
            value: alpha,
            reason: "must be finite and >= 0",
        });
    }
    if !beta.is_finite() || !(0.0..1.0).contains(&beta) {
        return Err(Error::Domain {
            field: "beta",
            value: beta,
            reason: "must lie in [0, 1)",
        });
    }
    Ok(Params { alpha, beta })
}

pub fn fixed_point(p: &Params) -> f64 {
    (1.0 + p.alpha) / (1.0 - p.beta)
}

/// A point of the open positive quadrant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct State {
    pub y: f64,
    pub z: f64,
}

impl State {
    pub fn new(y: f64, z: f64) -> Result<Self> {
        let s = State { y, z };
        if s.is_admissible() {
            Ok(s)
        } else {
            Err(Error::NonPositiveState { y, z })
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.y.is_finite() && self.z.is_finite() && self.y > 0.0 && self.z > 0.0
    }

    pub fn swapped(&self) -> State {
        State {
            y: self.z,
            z: self.y,
        }
    }
}

/// A period-two solution `{phi, psi, phi, psi, ...}`, which only exists for
/// `alpha = 1`. Built through [`periodic_partner`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeriodicPair {
    phi: f64,
    psi: f64,
    beta: f64,
}

impl PeriodicPair {
    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Parameters of the map that carries this cycle.
    pub fn params(&self) -> Params {
        Params {
            alpha: 1.0,
            beta: self.beta,
        }
    }

    /// The companion pair `(psi, phi)`, rebuilt from `psi` so that the
    /// partner relation holds to rounding.
    pub fn swapped(&self) -> PeriodicPair {
        periodic_partner(self.psi, self.beta).expect("partner of a valid pair is valid")
    }

    pub fn state(&self) -> State {
        State {
            y: self.phi,
            z: self.psi,
        }
    }
}

/// Threshold below which no positive partner exists: `1 / (1 - beta)`.
pub fn partner_threshold(beta: f64) -> f64 {
    1.0 / (1.0 - beta)
}

pub fn periodic_partner(phi: f64, beta: f64) -> Result<PeriodicPair> {
    if !beta.is_finite() || !(0.0..1.0).contains(&beta) {
        return Err(Error::Domain {
            field: "beta",
            value: beta,
            reason: "must lie in [0, 1)",
        });
    }
    if !phi.is_finite() || phi <= partner_threshold(beta) {
        return Err(Error::Domain {
            field: "phi",
            value: phi,
            reason: "must exceed 1/(1 - beta)",
        });
    }
    let psi = phi / ((1.0 - beta) * phi - 1.0);
    Ok(PeriodicPair { phi, psi, beta })
}

pub fn step_t(p: &Params, s: State) -> Result<State> {
    if !s.is_admissible() {
        return Err(Error::NonPositiveState { y: s.y, z: s.z });
    }
    State::new(s.z, p.alpha + p.beta * s.y + s.y / s.z)
}

/// Second iterate of `T` evaluated in closed form:
/// `T^2(y, z) = (w, alpha + beta*z + z/w)` with `w = alpha + beta*y + y/z`.
pub fn step_t2(p: &Params, s: State) -> Result<State> {
    if !s.is_admissible() {
        return Err(Error::NonPositiveState { y: s.y, z: s.z });
    }
    let w = p.alpha + p.beta * s.y + s.y / s.z;
    State::new(w, p.alpha + p.beta * s.z + s.z / w)
}

/// Orbit `s0, T(s0), ..., T^n(s0)`; fails with the index of the first
/// inadmissible iterate.
pub fn iterate_trajectory(p: &Params, s0: State, n: usize) -> Result<Vec<State>> {
    if !s0.is_admissible() {
        return Err(Error::TrajectoryEscaped { step: 0 });
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(s0);
    let mut s = s0;
    for k in 1..=n {
        s = step_t(p, s).map_err(|_| Error::TrajectoryEscaped { step: k })?;
        out.push(s);
    }
    Ok(out)
}
