//! Delta and nabla derivatives and the delta integral of real functions.
//!
//! Three independent routes to `f^Δ(t)` are available:
//!
//! * the difference quotient `(f(σ(t)) - f(t)) / μ(t)` at right-scattered points,
//! * the classical derivative at right-dense points (the `μ -> 0` limit),
//! * adaptive quadrature of `τ -> f'(t + τ μ(t))` over `[0, 1]`.
//!
//! The nabla derivative replaces `μ(t)` by `-ν(t)` throughout.

use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::pairwise_sum;
use crate::quadrature::{adaptive_gauss_legendre, adaptive_simpson, DEFAULT_BUDGET, DEFAULT_TOL};
use crate::scale::{membership_tol, TimeScale};

/// Graininess at or below `1e-8 * max(1, |t|)` is treated as zero.
pub fn limit_threshold(t: f64) -> f64 {
    1e-8 * t.abs().max(1.0)
}

/// Central-difference step `cbrt(eps) * max(1, |t|)`.
pub fn fd_step(t: f64) -> f64 {
    f64::EPSILON.cbrt() * t.abs().max(1.0)
}

/// Absolute tolerance used for dense pieces of a delta integral.
pub const INTEGRAL_TOL: f64 = 1e-11;

type Func<'a> = Box<dyn Fn(f64) -> f64 + Send + Sync + 'a>;

/// A real function together with (optionally) its classical derivative.
pub struct RealFunction<'a> {
    value: Func<'a>,
    derivative: Option<Func<'a>>,
}

impl<'a> RealFunction<'a> {
    /// A function without a known derivative; a central difference stands in.
    pub fn new(value: impl Fn(f64) -> f64 + Send + Sync + 'a) -> Self {
        Self { value: Box::new(value), derivative: None }
    }

    pub fn with_derivative(
        value: impl Fn(f64) -> f64 + Send + Sync + 'a,
        derivative: impl Fn(f64) -> f64 + Send + Sync + 'a,
    ) -> Self {
        Self { value: Box::new(value), derivative: Some(Box::new(derivative)) }
    }

    pub fn has_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    pub fn value(&self, t: f64) -> f64 {
        (self.value)(t)
    }

    /// Classical derivative at `t` and, when estimated, the step used.
    ///
    /// The estimate rejects kinks: if the one-sided difference quotients
    /// disagree by more than 1% the point is reported as non-differentiable.
    pub fn classical_derivative(&self, t: f64) -> Result<(f64, Option<f64>)> {
        if let Some(d) = &self.derivative {
            return finite(d(t), "derivative", t).map(|v| (v, None));
        }
        let h = fd_step(t);
        let (lo, mid, hi) = (self.value(t - h), self.value(t), self.value(t + h));
        let right = (hi - mid) / h;
        let left = (mid - lo) / h;
        if !(left.is_finite() && right.is_finite()) {
            return Err(Error::NonFiniteValue(format!("finite-difference derivative at {t}")));
        }
        if (right - left).abs() > 1e-2 * left.abs().max(right.abs()).max(1.0) {
            return Err(Error::NotDifferentiable { t, left, right });
        }
        Ok(((hi - lo) / (2.0 * h), Some(h)))
    }

    fn derivative_or_nan(&self, x: f64) -> f64 {
        self.classical_derivative(x).map(|(v, _)| v).unwrap_or(f64::NAN)
    }
}

impl fmt::Debug for RealFunction<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RealFunction").field("has_derivative", &self.has_derivative()).finish()
    }
}

fn finite(v: f64, what: &str, t: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteValue(format!("{what} is {v} at {t}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// A closed form from the derivative table.
    ClosedForm,
    DifferenceQuotient,
    ClassicalLimit,
    Quadrature,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::DifferenceQuotient => "difference-quotient",
            Method::ClassicalLimit => "classical-limit",
            Method::Quadrature => "quadrature",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Delta,
    Nabla,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Diagnostics {
    None,
    FiniteDifferenceStep(f64),
    QuadratureError { estimate: f64, intervals: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeReport {
    pub value: f64,
    pub method: Method,
    pub direction: Direction,
    /// Graininess actually used: `μ(t)` for delta, `ν(t)` for nabla.
    pub mu_used: f64,
    pub diagnostics: Diagnostics,
}

fn check_delta_point(ts: &TimeScale, t: f64) -> Result<()> {
    if !ts.in_kappa(t)? {
        return Err(Error::NotInKappa { t });
    }
    Ok(())
}

fn check_nabla_point(ts: &TimeScale, t: f64) -> Result<()> {
    if !ts.in_nabla_kappa(t)? {
        return Err(Error::NotInNablaKappa { t });
    }
    Ok(())
}

fn classical_report(f: &RealFunction, t: f64, step: f64, direction: Direction) -> Result<DerivativeReport> {
    let (value, h) = f.classical_derivative(t)?;
    Ok(DerivativeReport {
        value,
        method: Method::ClassicalLimit,
        direction,
        mu_used: step,
        diagnostics: h.map_or(Diagnostics::None, Diagnostics::FiniteDifferenceStep),
    })
}

/// `f^Δ(t)`: the forward difference quotient at right-scattered points and
/// the classical derivative at right-dense points.
pub fn delta_derivative(ts: &TimeScale, f: &RealFunction, t: f64) -> Result<DerivativeReport> {
    check_delta_point(ts, t)?;
    let mu = ts.mu(t)?;
    if mu <= limit_threshold(t) {
        return classical_report(f, t, mu, Direction::Delta);
    }
    let sigma = ts.sigma(t)?;
    let value = (finite(f.value(sigma), "f", sigma)? - finite(f.value(t), "f", t)?) / mu;
    Ok(DerivativeReport {
        value: finite(value, "delta derivative", t)?,
        method: Method::DifferenceQuotient,
        direction: Direction::Delta,
        mu_used: mu,
        diagnostics: Diagnostics::None,
    })
}

/// `f^∇(t)`: the backward difference quotient at left-scattered points and
/// the classical derivative at left-dense points.
pub fn nabla_derivative(ts: &TimeScale, f: &RealFunction, t: f64) -> Result<DerivativeReport> {
    check_nabla_point(ts, t)?;
    let nu = ts.nu(t)?;
    if nu <= limit_threshold(t) {
        return classical_report(f, t, nu, Direction::Nabla);
    }
    let rho = ts.rho(t)?;
    let value = (finite(f.value(t), "f", t)? - finite(f.value(rho), "f", rho)?) / nu;
    Ok(DerivativeReport {
        value: finite(value, "nabla derivative", t)?,
        method: Method::DifferenceQuotient,
        direction: Direction::Nabla,
        mu_used: nu,
        diagnostics: Diagnostics::None,
    })
}

fn integral_representation(f: &RealFunction, t: f64, step: f64, tol: f64, direction: Direction) -> Result<DerivativeReport> {
    let integrand = |tau: f64| f.derivative_or_nan(t + tau * step);
    let q = adaptive_simpson(&integrand, 0.0, 1.0, tol, DEFAULT_BUDGET)?;
    Ok(DerivativeReport {
        value: q.value,
        method: Method::Quadrature,
        direction,
        mu_used: step.abs(),
        diagnostics: Diagnostics::QuadratureError { estimate: q.error_estimate, intervals: q.intervals },
    })
}

/// `f^Δ(t) = ∫_0^1 f'(t + τ μ(t)) dτ` by adaptive Simpson to absolute
/// tolerance `tol`.
pub fn delta_derivative_quadrature(ts: &TimeScale, f: &RealFunction, t: f64, tol: f64) -> Result<DerivativeReport> {
    check_delta_point(ts, t)?;
    let mu = ts.mu(t)?;
    integral_representation(f, t, mu, tol, Direction::Delta)
}

/// `f^∇(t) = ∫_0^1 f'(t - τ ν(t)) dτ`.
pub fn nabla_derivative_quadrature(ts: &TimeScale, f: &RealFunction, t: f64, tol: f64) -> Result<DerivativeReport> {
    check_nabla_point(ts, t)?;
    let nu = ts.nu(t)?;
    integral_representation(f, t, -nu, tol, Direction::Nabla)
}

/// [`delta_derivative_quadrature`] at the default tolerance.
pub fn delta_derivative_quadrature_default(ts: &TimeScale, f: &RealFunction, t: f64) -> Result<DerivativeReport> {
    delta_derivative_quadrature(ts, f, t, DEFAULT_TOL)
}

/// `∫_a^b f(t) Δt`: `μ(t) f(t)` summed over right-scattered `t` in `[a, b)`
/// plus Gauss-Legendre quadrature over the dense pieces of `[a, b] ∩ T`
/// (panels at most `max_step` wide).
pub fn delta_integral(ts: &TimeScale, f: &RealFunction, a: f64, b: f64, max_step: f64) -> Result<f64> {
    if !(max_step.is_finite() && max_step > 0.0) {
        return Err(Error::InvalidArgument(format!("max_step must be finite and > 0, got {max_step}")));
    }
    for x in [a, b] {
        if !ts.contains(x) {
            return Err(Error::PointNotInScale { t: x });
        }
    }
    if a > b {
        return Err(Error::InvalidArgument(format!("integration bounds out of order: {a} > {b}")));
    }
    let components = ts.components(a, b)?;
    let dense_len: f64 = components.iter().map(|c| c.width()).sum();
    let value = |x: f64| f.value(x);
    let mut terms = Vec::with_capacity(components.len());
    for comp in &components {
        if !comp.is_degenerate() {
            let tol = INTEGRAL_TOL * comp.width() / dense_len;
            let q = adaptive_gauss_legendre(&value, comp.lo, comp.hi, max_step, tol, DEFAULT_BUDGET)?;
            terms.push(q.value);
        }
        let end = comp.hi;
        if end < b - membership_tol(b) {
            let mu = ts.mu(end)?;
            if mu > 0.0 {
                terms.push(mu * finite(f.value(end), "integrand", end)?);
            }
        }
    }
    finite(pairwise_sum(&terms), "delta integral", b)
}
