//! Univariate power series truncated at a fixed degree.

use crate::error::{Error, Result};

pub const DEFAULT_DEGREE_CAP: usize = 8;

/// Divisors with a smaller constant term are rejected.
pub const MIN_DIVISOR_CONSTANT: f64 = 1e-14;

/// `c[0] + c[1] t + ... + c[D] t^D`, everything above `t^D` discarded.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<f64>,
}

impl TruncatedSeries {
    /// Coefficients beyond the cap are dropped, missing ones are zero.
    pub fn new(coeffs: &[f64], cap: usize) -> Self {
        let mut c = vec![0.0; cap + 1];
        for (dst, src) in c.iter_mut().zip(coeffs) {
            *dst = *src;
        }
        TruncatedSeries { coeffs: c }
    }

    pub fn zero(cap: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![0.0; cap + 1],
        }
    }

    pub fn constant(value: f64, cap: usize) -> Self {
        Self::new(&[value], cap)
    }

    /// The series `t`.
    pub fn variable(cap: usize) -> Self {
        Self::new(&[0.0, 1.0], cap)
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    fn check_cap(&self, other: &Self) -> Result<()> {
        if self.cap() != other.cap() {
            return Err(Error::CapMismatch {
                left: self.cap(),
                right: other.cap(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_cap(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_cap(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, op: impl Fn(f64, f64) -> f64) -> Self {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| op(*a, *b))
                .collect(),
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Adds `value` to the constant term.
    pub fn offset(&self, value: f64) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += value;
        out
    }

    /// Cauchy product truncated at the cap.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_cap(other)?;
        let d = self.cap();
        let mut c = vec![0.0; d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0.0 {
                continue;
            }
            for (j, b) in other.coeffs[..=d - i].iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Ok(TruncatedSeries { coeffs: c })
    }

    /// `self / divisor` by forward substitution on `divisor * q = self`.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        self.check_cap(divisor)?;
        let b0 = divisor.coeffs[0];
        if !b0.is_finite() || b0.abs() <= MIN_DIVISOR_CONSTANT {
            return Err(Error::ZeroConstantTerm { constant: b0 });
        }
        let d = self.cap();
        let mut q = vec![0.0; d + 1];
        for k in 0..=d {
            let acc: f64 = (1..=k).map(|j| divisor.coeffs[j] * q[k - j]).sum();
            q[k] = (self.coeffs[k] - acc) / b0;
        }
        Ok(TruncatedSeries { coeffs: q })
    }

    /// `self(inner(t))` by Horner's scheme; `inner` must vanish at zero.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_cap(inner)?;
        if inner.coeffs[0] != 0.0 {
            return Err(Error::NonzeroInnerConstant {
                constant: inner.coeffs[0],
            });
        }
        let mut acc = Self::zero(self.cap());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner)?.offset(*c);
        }
        Ok(acc)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }
}
