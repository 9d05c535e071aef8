//! Trigonometric and hyperbolic functions on a time scale.
//!
//! The four functions are defined so that the delta derivative of the
//! classical `sin`, `cos`, `sinh`, `cosh` is `cos_T`, `-sin_T`, `cosh_T` and
//! `sinh_T` respectively. At right-dense points (`μ = 0`) they reduce to the
//! classical functions. Their Pythagorean-style identities pick up a
//! defect that depends on `μ` only.

use crate::engine::limit_threshold;
use crate::error::Result;
use crate::numeric::{cosm1_over, expm1_over, sin_over};
use crate::scale::TimeScale;

pub fn sin_t_at(t: f64, mu: f64) -> f64 {
    if mu.abs() <= limit_threshold(t) {
        return t.sin();
    }
    t.sin() * sin_over(1.0, mu) - t.cos() * cosm1_over(1.0, mu)
}

pub fn cos_t_at(t: f64, mu: f64) -> f64 {
    if mu.abs() <= limit_threshold(t) {
        return t.cos();
    }
    t.sin() * cosm1_over(1.0, mu) + t.cos() * sin_over(1.0, mu)
}

pub fn sinh_t_at(t: f64, mu: f64) -> f64 {
    if mu.abs() <= limit_threshold(t) {
        return t.sinh();
    }
    0.5 * (t.exp() * expm1_over(1.0, mu) + (-t).exp() * expm1_over(-1.0, mu))
}

pub fn cosh_t_at(t: f64, mu: f64) -> f64 {
    if mu.abs() <= limit_threshold(t) {
        return t.cosh();
    }
    0.5 * (t.exp() * expm1_over(1.0, mu) - (-t).exp() * expm1_over(-1.0, mu))
}

/// `2 (1 - cos μ) / μ^2`, evaluated as `(sin(μ/2) / (μ/2))^2`.
pub fn pythagorean_rhs(mu: f64) -> f64 {
    if mu == 0.0 {
        return 1.0;
    }
    let half = 0.5 * mu;
    let r = half.sin() / half;
    r * r
}

/// `(e^μ + e^-μ - 2) / μ^2`, evaluated as `(2 sinh(μ/2) / μ)^2`.
pub fn hyperbolic_rhs(mu: f64) -> f64 {
    if mu == 0.0 {
        return 1.0;
    }
    let r = 2.0 * (0.5 * mu).sinh() / mu;
    r * r
}

pub fn sin_t(ts: &TimeScale, t: f64) -> Result<f64> {
    Ok(sin_t_at(t, ts.mu(t)?))
}

pub fn cos_t(ts: &TimeScale, t: f64) -> Result<f64> {
    Ok(cos_t_at(t, ts.mu(t)?))
}

pub fn sinh_t(ts: &TimeScale, t: f64) -> Result<f64> {
    Ok(sinh_t_at(t, ts.mu(t)?))
}

pub fn cosh_t(ts: &TimeScale, t: f64) -> Result<f64> {
    Ok(cosh_t_at(t, ts.mu(t)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    Pythagorean,
    Hyperbolic,
}

impl Identity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Identity::Pythagorean => "pythagorean",
            Identity::Hyperbolic => "hyperbolic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefectReport {
    pub identity: Identity,
    pub t: f64,
    pub mu: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    /// `t` is the left-scattered maximum, outside `T^κ`; evaluated with `μ = 0`.
    pub outside_kappa: bool,
}

impl DefectReport {
    /// Tolerance the gap is held to: `1e-12 * max(1, |rhs|)` for the
    /// trigonometric identity; for the hyperbolic one the same below
    /// `|t| <= 1` and `1e-9 * max(1, rhs) * e^(2|t|)` beyond.
    pub fn tolerance(&self) -> f64 {
        match self.identity {
            Identity::Pythagorean => 1e-12 * self.rhs.abs().max(1.0),
            Identity::Hyperbolic if self.t.abs() <= 1.0 => 1e-12 * self.rhs.abs().max(1.0),
            Identity::Hyperbolic => 1e-9 * self.rhs.max(1.0) * (2.0 * self.t.abs()).exp(),
        }
    }

    pub fn within_tolerance(&self) -> bool {
        self.gap <= self.tolerance()
    }
}

fn report(ts: &TimeScale, t: f64, identity: Identity) -> Result<DefectReport> {
    let mu = ts.mu(t)?;
    let outside_kappa = !ts.in_kappa(t)?;
    let (lhs, rhs) = match identity {
        Identity::Pythagorean => {
            let (s, c) = (sin_t_at(t, mu), cos_t_at(t, mu));
            (s * s + c * c, pythagorean_rhs(mu))
        }
        Identity::Hyperbolic => {
            let (s, c) = (sinh_t_at(t, mu), cosh_t_at(t, mu));
            (c * c - s * s, hyperbolic_rhs(mu))
        }
    };
    Ok(DefectReport { identity, t, mu, lhs, rhs, gap: (lhs - rhs).abs(), outside_kappa })
}

/// `sin_T^2 + cos_T^2` against `2 (1 - cos μ) / μ^2`.
pub fn pythagorean_defect(ts: &TimeScale, t: f64) -> Result<DefectReport> {
    report(ts, t, Identity::Pythagorean)
}

/// `cosh_T^2 - sinh_T^2` against `(e^μ + e^-μ - 2) / μ^2`.
pub fn hyperbolic_defect(ts: &TimeScale, t: f64) -> Result<DefectReport> {
    report(ts, t, Identity::Hyperbolic)
}
