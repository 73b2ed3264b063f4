//! Linearizations of `T` at the equilibrium and of `T^2` at a period-two
//! point, with the eigenbasis changes of coordinates and the nonlinear parts
//! of the resulting normal forms.

use serde::Serialize;

use crate::dynamics::{Params, PeriodicPair};
use crate::error::{Error, Result};

/// Determinants below this magnitude are treated as singular.
pub const SINGULAR_DET: f64 = 1e-14;

const DENOMINATOR_EPS: f64 = 1e-14;

/// Row-major 2x2 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub fn from_columns(c0: [f64; 2], c1: [f64; 2]) -> Self {
        Mat2([[c0[0], c1[0]], [c0[1], c1[1]]])
    }

    pub fn column(&self, j: usize) -> [f64; 2] {
        [self.0[0][j], self.0[1][j]]
    }

    pub fn det(&self) -> f64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn mul_vec(&self, w: [f64; 2]) -> [f64; 2] {
        [
            self.0[0][0] * w[0] + self.0[0][1] * w[1],
            self.0[1][0] * w[0] + self.0[1][1] * w[1],
        ]
    }

    /// Inverse via the adjugate.
    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.det();
        if !det.is_finite() || det.abs() < SINGULAR_DET {
            return Err(Error::SingularBasis { det });
        }
        let [[a, b], [c, d]] = self.0;
        Ok(Mat2([[d / det, -b / det], [-c / det, a / det]]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisDirection {
    /// `(u, v) -> (xi, eta)`: multiply by the inverse basis.
    ToNormal,
    /// `(xi, eta) -> (u, v)`: multiply by the basis.
    FromNormal,
}

pub fn change_basis(basis: &Mat2, w: [f64; 2], direction: BasisDirection) -> Result<[f64; 2]> {
    match direction {
        BasisDirection::FromNormal => {
            // Still refuse singular bases so both directions share one contract.
            basis.inverse()?;
            Ok(basis.mul_vec(w))
        }
        BasisDirection::ToNormal => Ok(basis.inverse()?.mul_vec(w)),
    }
}

/// Eigen-data of the Jacobian of `T` at `(x_bar, x_bar)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumT {
    pub params: Params,
    pub x_bar: f64,
    /// `sqrt(1 + 4 x_bar + 4 beta x_bar^2)`
    pub theta: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub v1: [f64; 2],
    pub v2: [f64; 2],
    pub basis: Mat2,
    pub jacobian: Mat2,
    /// `|lambda1| > 1 > |lambda2|`
    pub saddle: bool,
}

pub fn spectrum_t(p: &Params) -> SpectrumT {
    let x_bar = p.fixed_point();
    let beta = p.beta();
    let theta = (1.0 + 4.0 * x_bar + 4.0 * beta * x_bar * x_bar).sqrt();
    let lambda1 = (-1.0 - theta) / (2.0 * x_bar);
    let lambda2 = (-1.0 + theta) / (2.0 * x_bar);
    let v1 = [-2.0 * x_bar / (1.0 + theta), 1.0];
    let v2 = [-2.0 * x_bar / (1.0 - theta), 1.0];
    let jacobian = Mat2([[0.0, 1.0], [beta + 1.0 / x_bar, -1.0 / x_bar]]);
    SpectrumT {
        params: *p,
        x_bar,
        theta,
        lambda1,
        lambda2,
        v1,
        v2,
        basis: Mat2::from_columns(v1, v2),
        jacobian,
        saddle: lambda1.abs() > 1.0 && lambda2.abs() < 1.0,
    }
}

impl SpectrumT {
    pub fn require_saddle(&self) -> Result<()> {
        if self.saddle {
            Ok(())
        } else {
            Err(Error::NotSaddle {
                lambda1_abs: self.lambda1.abs(),
                lambda2_abs: self.lambda2.abs(),
            })
        }
    }

    /// `T` with the equilibrium moved to the origin:
    /// `F(u, v) = (v, beta*u + (u - v)/(v + x_bar))`.
    pub fn translated_map(&self, uv: [f64; 2]) -> Result<[f64; 2]> {
        let [u, v] = uv;
        let den = v + self.x_bar;
        if den.abs() < DENOMINATOR_EPS {
            return Err(Error::VanishingDenominator {
                what: "translated map",
                value: den,
            });
        }
        Ok([v, self.params.beta() * u + (u - v) / den])
    }

    /// Diagonal linear part plus `(f, g)`.
    pub fn normal_form_map(&self, w: [f64; 2]) -> Result<[f64; 2]> {
        let (f, g) = normal_nonlinearity(self, w[0], w[1])?;
        Ok([self.lambda1 * w[0] + f, self.lambda2 * w[1] + g])
    }
}

/// Nonlinear part `(f, g)` of the normal form of `T` in eigen-coordinates.
/// Both components share the numerator
/// `(1 + 2 beta x_bar)(xi + eta)^2 + theta (xi^2 - eta^2)`.
pub fn normal_nonlinearity(spec: &SpectrumT, xi: f64, eta: f64) -> Result<(f64, f64)> {
    let x_bar = spec.x_bar;
    let theta = spec.theta;
    let beta = spec.params.beta();
    let s = xi + eta;
    let shifted = s + x_bar;
    if shifted.abs() < DENOMINATOR_EPS {
        return Err(Error::VanishingDenominator {
            what: "xi + eta + x_bar",
            value: shifted,
        });
    }
    let num = (1.0 + 2.0 * beta * x_bar) * s * s + theta * (xi * xi - eta * eta);
    let f = num / (theta * (theta - 1.0) * shifted);
    let g = num / (theta * (theta + 1.0) * shifted);
    Ok((f, g))
}

/// Eigen-data of the Jacobian of `T^2` at a period-two point `(phi, psi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumT2 {
    pub pair: PeriodicPair,
    /// `(1 - 1/phi)(1 - 1/psi)`, the contracting eigenvalue.
    pub lambda01: f64,
    /// Always exactly one.
    pub lambda02: f64,
    pub v01: [f64; 2],
    pub v02: [f64; 2],
    pub basis0: Mat2,
    pub jacobian0: Mat2,
}

pub fn spectrum_t2(pair: &PeriodicPair) -> SpectrumT2 {
    let phi = pair.phi();
    let psi = pair.psi();
    let beta = pair.beta();
    let lambda01 = (1.0 - 1.0 / phi) * (1.0 - 1.0 / psi);
    let v01 = [phi * phi / ((phi - 1.0) * psi), 1.0];
    let v02 = [-phi * phi / (psi * psi), 1.0];
    let jacobian0 = Mat2([
        [beta + 1.0 / psi, -phi / (psi * psi)],
        [
            -(beta * psi + 1.0) / (phi * phi),
            beta + 1.0 / phi + 1.0 / (psi * phi),
        ],
    ]);
    SpectrumT2 {
        pair: *pair,
        lambda01,
        lambda02: 1.0,
        v01,
        v02,
        basis0: Mat2::from_columns(v01, v02),
        jacobian0,
    }
}

impl SpectrumT2 {
    /// `T^2` (at `alpha = 1`) with `(phi, psi)` moved to the origin.
    pub fn translated_map(&self, uv: [f64; 2]) -> Result<[f64; 2]> {
        let [u, v] = uv;
        let phi = self.pair.phi();
        let psi = self.pair.psi();
        let beta = self.pair.beta();
        let vp = v + psi;
        if vp.abs() < DENOMINATOR_EPS {
            return Err(Error::VanishingDenominator {
                what: "v + psi",
                value: vp,
            });
        }
        let inner = vp + (u + phi) * (1.0 + beta * v + beta * psi);
        if inner.abs() < DENOMINATOR_EPS {
            return Err(Error::VanishingDenominator {
                what: "second component of F0",
                value: inner,
            });
        }
        Ok([
            beta * u + (u + phi) / vp - phi / psi,
            beta * v + vp * vp / inner - psi / phi,
        ])
    }

    pub fn normal_form_map(&self, w: [f64; 2]) -> Result<[f64; 2]> {
        let (f0, g0) = normal_nonlinearity2(self, w[0], w[1])?;
        Ok([self.lambda01 * w[0] + f0, self.lambda02 * w[1] + g0])
    }
}

/// Nonlinear part `(f0, g0)` of the normal form of `T^2` at a period-two
/// point, built around the shared subexpression `zeta`.
pub fn normal_nonlinearity2(spec: &SpectrumT2, xi: f64, eta: f64) -> Result<(f64, f64)> {
    let phi = spec.pair.phi();
    let psi = spec.pair.psi();
    let beta = spec.pair.beta();

    let s = xi + eta;
    let sp = s + psi;
    if sp.abs() < DENOMINATOR_EPS {
        return Err(Error::VanishingDenominator {
            what: "xi + eta + psi",
            value: sp,
        });
    }
    let u_shift = phi * phi * xi / ((phi - 1.0) * psi) - phi * phi * eta / (psi * psi) + phi;
    let zeta_den = sp + u_shift * (1.0 + beta * xi + beta * eta + beta * psi);
    if zeta_den.abs() < DENOMINATOR_EPS {
        return Err(Error::VanishingDenominator {
            what: "zeta",
            value: zeta_den,
        });
    }
    let zeta = sp * sp / zeta_den - psi / phi;

    let norm = psi + phi - 1.0;
    let f0 = (phi - 1.0) / norm
        * (zeta - xi / (phi * psi) - eta * (phi + psi) / (phi * sp)
            + s * xi / (phi * (1.0 - phi) * sp));
    let g0 = psi / norm
        * (zeta - eta * (phi + psi) / (phi * psi) - xi / (phi * sp)
            + (1.0 - phi) * (phi + psi) * s * eta / (phi * psi * psi * sp));
    Ok((f0, g0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::periodic_partner;
    use approx::assert_relative_eq;

    fn params(a: f64, b: f64) -> Params {
        Params::new(a, b).unwrap()
    }

    #[test]
    fn spectrum_values() {
        // 30-digit evaluation with theta = sqrt(5.8) and sqrt(8.2).
        let s = spectrum_t(&params(0.2, 0.0));
        assert_relative_eq!(s.theta, 2.408_318_915_758_459, max_relative = 1e-12);
        assert_relative_eq!(s.lambda1, -1.420_132_881_566_024_6, max_relative = 1e-12);
        assert_relative_eq!(s.lambda2, 0.586_799_548_232_691_3, max_relative = 1e-12);
        assert_relative_eq!(1.0 / s.theta, 0.4152273992, max_relative = 1e-9);
        assert!(s.saddle);

        let s = spectrum_t(&params(0.8, 0.0));
        assert_relative_eq!(s.theta, 2.863_564_212_655_270_6, max_relative = 1e-12);
        assert_relative_eq!(1.0 / s.theta, 0.3492151478, max_relative = 1e-9);
    }

    #[test]
    fn spectrum_trace_and_determinant() {
        for &(a, b) in &[(0.0, 0.0), (0.2, 0.5), (1.7, 0.3), (4.0, 0.9)] {
            let s = spectrum_t(&params(a, b));
            let x = s.x_bar;
            assert_relative_eq!(s.lambda1 + s.lambda2, -1.0 / x, max_relative = 1e-12);
            assert_relative_eq!(s.lambda1 * s.lambda2, -(b + 1.0 / x), max_relative = 1e-12);
            assert_relative_eq!(
                s.theta * s.theta,
                1.0 + 4.0 * x + 4.0 * b * x * x,
                max_relative = 1e-12
            );
            assert_relative_eq!(
                s.jacobian.trace(),
                s.lambda1 + s.lambda2,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn eigenpair_residuals() {
        let s = spectrum_t(&params(0.3, 0.25));
        for (v, l) in [(s.v1, s.lambda1), (s.v2, s.lambda2)] {
            let jv = s.jacobian.mul_vec(v);
            assert!((jv[0] - l * v[0]).abs() < 1e-12);
            assert!((jv[1] - l * v[1]).abs() < 1e-12);
        }
        let t = spectrum_t2(&periodic_partner(2.3, 0.5).unwrap());
        for (v, l) in [(t.v01, t.lambda01), (t.v02, t.lambda02)] {
            let jv = t.jacobian0.mul_vec(v);
            assert!((jv[0] - l * v[0]).abs() < 1e-12);
            assert!((jv[1] - l * v[1]).abs() < 1e-12);
        }
    }

    #[test]
    fn saddle_grid() {
        for i in 0..10 {
            for b in [0.0, 0.25, 0.5, 0.75] {
                let s = spectrum_t(&params(i as f64 / 10.0, b));
                assert!(s.lambda1.abs() > 1.0, "alpha={i}/10 beta={b}");
                assert!(s.lambda2.abs() < 1.0 && s.lambda2.abs() > 0.0);
            }
        }
        assert!(!spectrum_t(&params(2.0, 0.0)).saddle);
        assert!(spectrum_t(&params(2.0, 0.0)).require_saddle().is_err());
    }

    #[test]
    fn basis_changes() {
        let s = spectrum_t(&params(0.2, 0.0));
        let w = [0.3, -0.7];
        let uv = change_basis(&s.basis, w, BasisDirection::FromNormal).unwrap();
        let back = change_basis(&s.basis, uv, BasisDirection::ToNormal).unwrap();
        assert!((back[0] - w[0]).abs() < 1e-13 && (back[1] - w[1]).abs() < 1e-13);

        let e = change_basis(&s.basis, s.v1, BasisDirection::ToNormal).unwrap();
        assert!((e[0] - 1.0).abs() < 1e-13 && e[1].abs() < 1e-13);

        assert_eq!(
            change_basis(&s.basis, [0.0, 0.0], BasisDirection::ToNormal).unwrap(),
            [0.0, 0.0]
        );

        let singular = Mat2([[1.0, 2.0], [2.0, 4.0]]);
        assert!(matches!(
            change_basis(&singular, w, BasisDirection::ToNormal),
            Err(Error::SingularBasis { .. })
        ));
    }

    #[test]
    fn nonlinearity_basics() {
        let s = spectrum_t(&params(0.2, 0.0));
        assert_eq!(normal_nonlinearity(&s, 0.0, 0.0).unwrap(), (0.0, 0.0));
        let (f, g) = normal_nonlinearity(&s, 0.07, -0.04).unwrap();
        assert_relative_eq!(
            f * (s.theta - 1.0),
            g * (s.theta + 1.0),
            max_relative = 1e-14
        );
        let x = s.x_bar;
        assert!(normal_nonlinearity(&s, -x, 0.0).is_err());
    }

    /// Route through the quadratic remainder `H(u, v) = (0, v(v-u)/(x_bar(v+x_bar)))`
    /// of the translated map, pulled back by the inverse basis.
    fn nonlinearity_via_remainder(s: &SpectrumT, w: [f64; 2]) -> [f64; 2] {
        let [u, v] = s.basis.mul_vec(w);
        let h = [0.0, v * (v - u) / (s.x_bar * (v + s.x_bar))];
        s.basis.inverse().unwrap().mul_vec(h)
    }

    #[test]
    fn nonlinearity_matches_remainder_route() {
        for &(a, b) in &[(0.2, 0.0), (0.6, 0.75)] {
            let s = spectrum_t(&params(a, b));
            for w in [[0.1, 0.0], [0.03, -0.08], [-0.05, 0.05]] {
                let (f, g) = normal_nonlinearity(&s, w[0], w[1]).unwrap();
                let h = nonlinearity_via_remainder(&s, w);
                assert!((f - h[0]).abs() < 1e-12, "{a} {b} {w:?}");
                assert!((g - h[1]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn nonlinearity_matches_conjugacy_route() {
        let s = spectrum_t(&params(0.2, 0.0));
        let w = [0.1, 0.0];
        let fw = s.translated_map(s.basis.mul_vec(w)).unwrap();
        let pulled = s.basis.inverse().unwrap().mul_vec(fw);
        let (f, g) = normal_nonlinearity(&s, w[0], w[1]).unwrap();
        assert!((pulled[0] - s.lambda1 * w[0] - f).abs() < 1e-12);
        assert!((pulled[1] - s.lambda2 * w[1] - g).abs() < 1e-12);
    }

    #[test]
    fn spectrum_t2_values() {
        let t = spectrum_t2(&periodic_partner(2.94, 0.0).unwrap());
        // (1 - 1/2.94)(1 - 1.94/2.94) at 30 digits.
        assert_relative_eq!(t.lambda01, 0.224_443_518_904_160_3, max_relative = 1e-12);
        assert_eq!(t.lambda02, 1.0);
        for (phi, beta) in [(2.94, 0.0), (2.3, 0.5), (5.0, 0.5), (1.2, 0.0)] {
            let t = spectrum_t2(&periodic_partner(phi, beta).unwrap());
            assert!(t.lambda01 > 0.0 && t.lambda01 < 1.0);
            assert!((t.lambda01 * t.lambda02 - t.jacobian0.det()).abs() < 1e-12);
            assert!((t.lambda01 + t.lambda02 - t.jacobian0.trace()).abs() < 1e-12);
        }
    }

    #[test]
    fn nonlinearity2_basics() {
        let t = spectrum_t2(&periodic_partner(2.94, 0.0).unwrap());
        let (f, g) = normal_nonlinearity2(&t, 0.0, 0.0).unwrap();
        assert!(f.abs() < 1e-15 && g.abs() < 1e-15);

        // Central differences: the linear part has been removed.
        let h = 1e-5;
        for &(dx, dy) in &[(h, 0.0), (0.0, h)] {
            let (fp, gp) = normal_nonlinearity2(&t, dx, dy).unwrap();
            let (fm, gm) = normal_nonlinearity2(&t, -dx, -dy).unwrap();
            assert!(((fp - fm) / (2.0 * h)).abs() < 1e-6);
            assert!(((gp - gm) / (2.0 * h)).abs() < 1e-6);
        }
    }

    #[test]
    fn nonlinearity2_matches_conjugacy_route() {
        let t = spectrum_t2(&periodic_partner(2.94, 0.0).unwrap());
        let w = [0.05, 0.02];
        let fw = t.translated_map(t.basis0.mul_vec(w)).unwrap();
        let pulled = t.basis0.inverse().unwrap().mul_vec(fw);
        let (f0, g0) = normal_nonlinearity2(&t, w[0], w[1]).unwrap();
        assert!((pulled[0] - t.lambda01 * w[0] - f0).abs() < 1e-11);
        assert!((pulled[1] - w[1] - g0).abs() < 1e-11);
    }

    #[test]
    fn translated_maps_fix_origin() {
        let s = spectrum_t(&params(0.4, 0.25));
        assert_eq!(s.translated_map([0.0, 0.0]).unwrap(), [0.0, 0.0]);
        let t = spectrum_t2(&periodic_partner(2.3, 0.5).unwrap());
        let o = t.translated_map([0.0, 0.0]).unwrap();
        assert!(o[0].abs() < 1e-14 && o[1].abs() < 1e-14);
    }
}
