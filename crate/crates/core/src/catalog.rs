//! The table of twenty closed-form delta derivatives.
//!
//! Each entry carries the function, its classical derivative, and its delta
//! derivative as a function of `(t, μ)`. Two evaluations of the delta
//! derivative exist:
//!
//! * [`CatalogEntry::literal_form`] transcribes the table formula as written
//!   and cancels catastrophically for small `μ`;
//! * [`CatalogEntry::closed_form`] is an algebraically equal rewrite built
//!   from `expm1`, `-2 sin^2(x/2)` and conjugate root differences.
//!
//! [`eval_delta`] uses the rewrite above the graininess threshold and the
//! classical derivative (the exact `μ -> 0` limit) below it. Every formula
//! also holds for the nabla derivative with `μ` replaced by `-ν`; see
//! [`eval_nabla`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::engine::{delta_derivative, delta_derivative_quadrature, limit_threshold, nabla_derivative, nabla_derivative_quadrature, Direction, RealFunction};
use crate::error::{Error, Result};
use crate::numeric::{binomial, cosm1_over, expm1_over, power_difference, sin_over, MAX_POWER};
use crate::quadrature::DEFAULT_TOL;
use crate::scale::TimeScale;

macro_rules! entry_ids {
    ($($id:ident),* $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum EntryId { $($id),* }

        impl EntryId {
            pub const ALL: [EntryId; 20] = [$(EntryId::$id),*];

            pub fn as_str(&self) -> &'static str {
                match self { $(EntryId::$id => stringify!($id)),* }
            }
        }

        impl FromStr for EntryId {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s.trim().to_ascii_uppercase().as_str() {
                    $(stringify!($id) => Ok(EntryId::$id),)*
                    other => Err(Error::InvalidArgument(format!("unknown catalog id {other:?}"))),
                }
            }
        }
    };
}

entry_ids!(B01, B02, B03, B04, R01, R02, R03, L01, L02, E01, E02, T01, T02, TM01, TM02, TE01, TE02, H01, H02, H03);

impl fmt::Display for EntryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    K,
    C,
    N,
}

/// Formula parameters. `k` and `c` are real constants, `n` a positive integer.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub k: Option<f64>,
    pub c: Option<f64>,
    pub n: Option<u32>,
}

impl Params {
    pub fn new(k: f64, c: f64, n: u32) -> Self {
        Self { k: Some(k), c: Some(c), n: Some(n) }
    }

    pub fn with_k(k: f64) -> Self {
        Self { k: Some(k), ..Self::default() }
    }

    pub fn with_n(n: u32) -> Self {
        Self { n: Some(n), ..Self::default() }
    }
}

/// Parameter values after validation.
#[derive(Debug, Clone, Copy)]
struct Bound {
    k: f64,
    c: f64,
    n: u32,
}

impl Bound {
    fn ni(&self) -> i32 {
        self.n as i32
    }

    fn nf(&self) -> f64 {
        self.n as f64
    }
}

/// One row of the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: EntryId,
    pub group: &'static str,
    /// The differentiated function, in expression syntax.
    pub function: &'static str,
    pub required: &'static [Param],
}

const K: Param = Param::K;
const C: Param = Param::C;
const N: Param = Param::N;

const TABLE: [CatalogEntry; 20] = [
    CatalogEntry { id: EntryId::B01, group: "basic functions", function: "k", required: &[K] },
    CatalogEntry { id: EntryId::B02, group: "basic functions", function: "t^n", required: &[N] },
    CatalogEntry { id: EntryId::B03, group: "basic functions", function: "k^t", required: &[K] },
    CatalogEntry { id: EntryId::B04, group: "basic functions", function: "(t + k)^n", required: &[K, N] },
    CatalogEntry { id: EntryId::R01, group: "roots", function: "sqrt(t)", required: &[] },
    CatalogEntry { id: EntryId::R02, group: "roots", function: "sqrt(k + t^n)", required: &[K, N] },
    CatalogEntry { id: EntryId::R03, group: "roots", function: "t^n*sqrt(k + c*t)", required: &[K, C, N] },
    CatalogEntry { id: EntryId::L01, group: "logarithms", function: "ln(t^n)", required: &[N] },
    CatalogEntry { id: EntryId::L02, group: "logarithms", function: "ln(k*t + c)", required: &[K, C] },
    CatalogEntry { id: EntryId::E01, group: "exponentials", function: "exp(k*t)", required: &[K] },
    CatalogEntry { id: EntryId::E02, group: "exponentials", function: "t^n*exp(k*t)", required: &[K, N] },
    CatalogEntry { id: EntryId::T01, group: "trigonometric functions", function: "sin(t)", required: &[] },
    CatalogEntry { id: EntryId::T02, group: "trigonometric functions", function: "cos(t)", required: &[] },
    CatalogEntry { id: EntryId::TM01, group: "trigonometric functions and monomials", function: "t*sin(k*t)", required: &[K] },
    CatalogEntry { id: EntryId::TM02, group: "trigonometric functions and monomials", function: "t*cos(k*t)", required: &[K] },
    CatalogEntry { id: EntryId::TE01, group: "trigonometric functions and exponentials", function: "exp(k*t)*sin(c*t)", required: &[K, C] },
    CatalogEntry { id: EntryId::TE02, group: "trigonometric functions and exponentials", function: "exp(k*t)*cos(c*t)", required: &[K, C] },
    CatalogEntry { id: EntryId::H01, group: "hyperbolic functions", function: "sinh(k*t)", required: &[K] },
    CatalogEntry { id: EntryId::H02, group: "hyperbolic functions", function: "cosh(k*t)", required: &[K] },
    CatalogEntry { id: EntryId::H03, group: "hyperbolic functions", function: "sinh(k*t)*cosh(k*t)", required: &[K] },
];

/// All twenty entries in table order.
pub fn list_catalog() -> &'static [CatalogEntry] {
    &TABLE
}

impl EntryId {
    pub fn entry(&self) -> &'static CatalogEntry {
        &TABLE[*self as usize]
    }
}

impl CatalogEntry {
    fn bind(&self, p: &Params) -> Result<Bound> {
        let missing = |name: &str| Error::ParamViolation { id: self.id, detail: format!("parameter {name} is required") };
        let mut b = Bound { k: 0.0, c: 0.0, n: 1 };
        for param in self.required {
            match param {
                Param::K => b.k = p.k.ok_or_else(|| missing("k"))?,
                Param::C => b.c = p.c.ok_or_else(|| missing("c"))?,
                Param::N => b.n = p.n.ok_or_else(|| missing("n"))?,
            }
        }
        let violation = |detail: String| Err(Error::ParamViolation { id: self.id, detail });
        if !(b.k.is_finite() && b.c.is_finite()) {
            return violation(format!("parameters must be finite (k = {}, c = {})", b.k, b.c));
        }
        if self.required.contains(&Param::N) && !(1..=MAX_POWER).contains(&b.n) {
            return violation(format!("n must be a positive integer at most {MAX_POWER}, got {}", b.n));
        }
        if self.id == EntryId::B03 && b.k <= 0.0 {
            return violation(format!("k must be > 0, got {}", b.k));
        }
        Ok(b)
    }

    /// Checks the function's domain at `t` and, for entries whose formula
    /// reads the function at the neighbouring point, at `t + step`.
    /// `limit` marks evaluation of the classical derivative at `t`.
    fn check_domain(&self, b: &Bound, t: f64, step: f64, limit: bool) -> Result<()> {
        let s = t + step;
        let ok = match self.id {
            EntryId::R01 => t > 0.0 && s >= 0.0,
            EntryId::R02 => {
                let (r0, r1) = (b.k + t.powi(b.ni()), b.k + s.powi(b.ni()));
                r0 >= 0.0 && r1 >= 0.0 && (!limit || r0 > 0.0)
            }
            EntryId::R03 => {
                let (r0, r1) = (b.k + b.c * t, b.k + b.c * s);
                r0 >= 0.0 && r1 >= 0.0 && (!limit || r0 > 0.0)
            }
            EntryId::L01 => t != 0.0 && t.powi(b.ni()) > 0.0 && s.powi(b.ni()) > 0.0 && 1.0 + step / t > 0.0,
            EntryId::L02 => b.k * t + b.c > 0.0 && b.k * s + b.c > 0.0,
            _ => true,
        };
        if ok && t.is_finite() && step.is_finite() {
            Ok(())
        } else {
            Err(Error::DomainViolation {
                id: self.id,
                detail: format!("t = {t} with graininess {} is outside the domain of {}", step.abs(), self.function),
            })
        }
    }

    /// Whether `(t, μ)` is admissible for this entry under `params`.
    pub fn admissible(&self, params: &Params, t: f64, mu: f64) -> bool {
        self.bind(params)
            .and_then(|b| self.check_domain(&b, t, mu, mu.abs() <= limit_threshold(t)))
            .is_ok()
    }

    pub fn value(&self, params: &Params, t: f64) -> Result<f64> {
        let b = self.bind(params)?;
        Ok(self.value_bound(&b, t))
    }

    pub fn classical_derivative(&self, params: &Params, t: f64) -> Result<f64> {
        let b = self.bind(params)?;
        Ok(self.derivative_bound(&b, t))
    }

    /// Rewritten closed form at signed step `mu` (`mu != 0`).
    pub fn closed_form(&self, params: &Params, t: f64, mu: f64) -> Result<f64> {
        let b = self.bind(params)?;
        Ok(self.closed_bound(&b, t, mu))
    }

    /// The table formula exactly as written, evaluated naively.
    pub fn literal_form(&self, params: &Params, t: f64, mu: f64) -> Result<f64> {
        let b = self.bind(params)?;
        Ok(self.literal_bound(&b, t, mu))
    }

    fn value_bound(&self, b: &Bound, t: f64) -> f64 {
        let Bound { k, c, .. } = *b;
        match self.id {
            EntryId::B01 => k,
            EntryId::B02 => t.powi(b.ni()),
            EntryId::B03 => k.powf(t),
            EntryId::B04 => (t + k).powi(b.ni()),
            EntryId::R01 => t.sqrt(),
            EntryId::R02 => (k + t.powi(b.ni())).sqrt(),
            EntryId::R03 => t.powi(b.ni()) * (k + c * t).sqrt(),
            EntryId::L01 => t.powi(b.ni()).ln(),
            EntryId::L02 => (k * t + c).ln(),
            EntryId::E01 => (k * t).exp(),
            EntryId::E02 => t.powi(b.ni()) * (k * t).exp(),
            EntryId::T01 => t.sin(),
            EntryId::T02 => t.cos(),
            EntryId::TM01 => t * (k * t).sin(),
            EntryId::TM02 => t * (k * t).cos(),
            EntryId::TE01 => (k * t).exp() * (c * t).sin(),
            EntryId::TE02 => (k * t).exp() * (c * t).cos(),
            EntryId::H01 => (k * t).sinh(),
            EntryId::H02 => (k * t).cosh(),
            EntryId::H03 => (k * t).sinh() * (k * t).cosh(),
        }
    }

    fn derivative_bound(&self, b: &Bound, t: f64) -> f64 {
        let Bound { k, c, .. } = *b;
        let (n, nf) = (b.ni(), b.nf());
        match self.id {
            EntryId::B01 => 0.0,
            EntryId::B02 => nf * t.powi(n - 1),
            EntryId::B03 => k.ln() * k.powf(t),
            EntryId::B04 => nf * (t + k).powi(n - 1),
            EntryId::R01 => 0.5 / t.sqrt(),
            EntryId::R02 => nf * t.powi(n - 1) / (2.0 * (k + t.powi(n)).sqrt()),
            EntryId::R03 => {
                let root = (k + c * t).sqrt();
                nf * t.powi(n - 1) * root + t.powi(n) * c / (2.0 * root)
            }
            EntryId::L01 => nf / t,
            EntryId::L02 => k / (k * t + c),
            EntryId::E01 => k * (k * t).exp(),
            EntryId::E02 => (nf * t.powi(n - 1) + k * t.powi(n)) * (k * t).exp(),
            EntryId::T01 => t.cos(),
            EntryId::T02 => -t.sin(),
            EntryId::TM01 => (k * t).sin() + k * t * (k * t).cos(),
            EntryId::TM02 => (k * t).cos() - k * t * (k * t).sin(),
            EntryId::TE01 => (k * t).exp() * (k * (c * t).sin() + c * (c * t).cos()),
            EntryId::TE02 => (k * t).exp() * (k * (c * t).cos() - c * (c * t).sin()),
            EntryId::H01 => k * (k * t).cosh(),
            EntryId::H02 => k * (k * t).sinh(),
            EntryId::H03 => k * (2.0 * k * t).cosh(),
        }
    }

    fn closed_bound(&self, b: &Bound, t: f64, mu: f64) -> f64 {
        let Bound { k, c, .. } = *b;
        let n = b.n;
        match self.id {
            EntryId::B01 => 0.0,
            EntryId::B02 => power_difference(t, mu, n),
            EntryId::B03 => expm1_over(k.ln(), mu) * k.powf(t),
            EntryId::B04 => power_difference(t + k, mu, n),
            EntryId::R01 => 1.0 / ((t + mu).sqrt() + t.sqrt()),
            EntryId::R02 => {
                let denom = (k + (t + mu).powi(n as i32)).sqrt() + (k + t.powi(n as i32)).sqrt();
                if denom == 0.0 {
                    0.0
                } else {
                    power_difference(t, mu, n) / denom
                }
            }
            EntryId::R03 => {
                // (A P - B p)/mu = A (P - p)/mu + p (A - B)/mu, with
                // (A - B)/mu = c / (A + B).
                let (a, bb) = ((k + c * (t + mu)).sqrt(), (k + c * t).sqrt());
                let root_diff = if a + bb == 0.0 { 0.0 } else { c / (a + bb) };
                a * power_difference(t, mu, n) + t.powi(n as i32) * root_diff
            }
            EntryId::L01 => b.nf() * (mu / t).ln_1p() / mu,
            EntryId::L02 => (k * mu / (k * t + c)).ln_1p() / mu,
            EntryId::E01 => expm1_over(k, mu) * (k * t).exp(),
            EntryId::E02 => {
                let grow = (k * mu).exp();
                (power_difference(t, mu, n) * grow + t.powi(n as i32) * expm1_over(k, mu)) * (k * t).exp()
            }
            EntryId::T01 => t.sin() * cosm1_over(1.0, mu) + t.cos() * sin_over(1.0, mu),
            EntryId::T02 => t.cos() * cosm1_over(1.0, mu) - t.sin() * sin_over(1.0, mu),
            EntryId::TM01 => {
                let (s, co) = ((k * t).sin(), (k * t).cos());
                let shifted = s * (k * mu).cos() + co * (k * mu).sin();
                t * (s * cosm1_over(k, mu) + co * sin_over(k, mu)) + shifted
            }
            EntryId::TM02 => {
                let (s, co) = ((k * t).sin(), (k * t).cos());
                let shifted = co * (k * mu).cos() - s * (k * mu).sin();
                t * (co * cosm1_over(k, mu) - s * sin_over(k, mu)) + shifted
            }
            EntryId::TE01 => {
                let (s, co) = ((c * t).sin(), (c * t).cos());
                let trig = s * cosm1_over(c, mu) + co * sin_over(c, mu);
                (trig * (k * mu).exp() + s * expm1_over(k, mu)) * (k * t).exp()
            }
            EntryId::TE02 => {
                let (s, co) = ((c * t).sin(), (c * t).cos());
                let trig = co * cosm1_over(c, mu) - s * sin_over(c, mu);
                (trig * (k * mu).exp() + co * expm1_over(k, mu)) * (k * t).exp()
            }
            EntryId::H01 => 0.5 * ((k * t).exp() * expm1_over(k, mu) - (-k * t).exp() * expm1_over(-k, mu)),
            EntryId::H02 => 0.5 * ((k * t).exp() * expm1_over(k, mu) + (-k * t).exp() * expm1_over(-k, mu)),
            EntryId::H03 => {
                let kk = 2.0 * k;
                0.25 * ((kk * t).exp() * expm1_over(kk, mu) - (-kk * t).exp() * expm1_over(-kk, mu))
            }
        }
    }

    fn literal_bound(&self, b: &Bound, t: f64, mu: f64) -> f64 {
        let Bound { k, c, .. } = *b;
        let (n, ni) = (b.n, b.ni());
        // sum_{i=0}^{n} C(n, i) mu^(n-i) t^i
        let full_sum = |x: f64| (0..=n).map(|i| binomial(n, i) * mu.powi(ni - i as i32) * x.powi(i as i32)).sum::<f64>();
        // sum_{i=1}^{n} C(n, i-1) mu^(n-i) x^(i-1)
        let table_sum = |x: f64| (1..=n).map(|i| binomial(n, i - 1) * mu.powi(ni - i as i32) * x.powi(i as i32 - 1)).sum::<f64>();
        match self.id {
            EntryId::B01 => 0.0,
            EntryId::B02 => table_sum(t),
            EntryId::B03 => (k.powf(mu) - 1.0) / mu * k.powf(t),
            EntryId::B04 => table_sum(t + k),
            EntryId::R01 => ((t + mu).sqrt() - t.sqrt()) / mu,
            EntryId::R02 => ((k + (t + mu).powi(ni)).sqrt() - (k + t.powi(ni)).sqrt()) / mu,
            EntryId::R03 => ((k + c * (t + mu)).sqrt() * full_sum(t) - (k + c * t).sqrt() * t.powi(ni)) / mu,
            EntryId::L01 => b.nf() * (1.0 + mu / t).ln() / mu,
            EntryId::L02 => (1.0 + k * mu / (k * t + c)).ln() / mu,
            EntryId::E01 => ((k * mu).exp() - 1.0) / mu * (k * t).exp(),
            EntryId::E02 => (full_sum(t) * (k * mu).exp() - t.powi(ni)) / mu * (k * t).exp(),
            EntryId::T01 => (t.sin() * (mu.cos() - 1.0) + t.cos() * mu.sin()) / mu,
            EntryId::T02 => (t.cos() * (mu.cos() - 1.0) - t.sin() * mu.sin()) / mu,
            EntryId::TM01 => {
                ((t + mu) * ((k * t).sin() * (k * mu).cos() + (k * t).cos() * (k * mu).sin()) - t * (k * t).sin()) / mu
            }
            EntryId::TM02 => {
                ((t + mu) * ((k * t).cos() * (k * mu).cos() - (k * t).sin() * (k * mu).sin()) - t * (k * t).cos()) / mu
            }
            EntryId::TE01 => {
                (((c * t).cos() * (c * mu).sin() + (c * t).sin() * (c * mu).cos()) * (k * mu).exp() - (c * t).sin()) / mu
                    * (k * t).exp()
            }
            EntryId::TE02 => {
                (((c * t).cos() * (c * mu).cos() - (c * t).sin() * (c * mu).sin()) * (k * mu).exp() - (c * t).cos()) / mu
                    * (k * t).exp()
            }
            EntryId::H01 => {
                (((k * (t + mu)).exp() - (k * t).exp()) - ((-k * (t + mu)).exp() - (-k * t).exp())) / (2.0 * mu)
            }
            EntryId::H02 => {
                (((k * (t + mu)).exp() - (k * t).exp()) + ((-k * (t + mu)).exp() - (-k * t).exp())) / (2.0 * mu)
            }
            EntryId::H03 => {
                (((2.0 * k * (t + mu)).exp() - (2.0 * k * t).exp()) - ((-2.0 * k * (t + mu)).exp() - (-2.0 * k * t).exp()))
                    / (4.0 * mu)
            }
        }
    }

    /// A [`RealFunction`] for this entry with its exact classical derivative.
    pub fn real_function(&self, params: &Params) -> Result<RealFunction<'static>> {
        let b = self.bind(params)?;
        let entry = *self;
        Ok(RealFunction::with_derivative(
            move |t| entry.value_bound(&b, t),
            move |t| entry.derivative_bound(&b, t),
        ))
    }

    fn evaluate(&self, params: &Params, t: f64, step: f64) -> Result<f64> {
        let b = self.bind(params)?;
        let limit = step.abs() <= limit_threshold(t);
        self.check_domain(&b, t, if limit { 0.0 } else { step }, limit)?;
        let v = if limit { self.derivative_bound(&b, t) } else { self.closed_bound(&b, t, step) };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteValue(format!("{} at t = {t}, step = {step}", self.id)))
        }
    }
}

fn check_graininess(g: f64, name: &str) -> Result<()> {
    if g.is_finite() && g >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} must be finite and >= 0, got {g}")))
    }
}

/// Delta derivative of entry `id` at `t` for graininess `mu >= 0`.
pub fn eval_delta(id: EntryId, params: &Params, t: f64, mu: f64) -> Result<f64> {
    check_graininess(mu, "mu")?;
    id.entry().evaluate(params, t, mu)
}

/// Nabla derivative of entry `id` at `t` for backward graininess `nu >= 0`:
/// the same formula with `μ` replaced by `-ν`.
pub fn eval_nabla(id: EntryId, params: &Params, t: f64, nu: f64) -> Result<f64> {
    check_graininess(nu, "nu")?;
    id.entry().evaluate(params, t, -nu)
}

/// All three routes to one table derivative at a point of a scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossCheck {
    pub id: EntryId,
    pub t: f64,
    pub mu: f64,
    pub closed_form: f64,
    pub difference_quotient: f64,
    pub quadrature: f64,
    pub max_abs_gap: f64,
}

impl CrossCheck {
    /// Largest gap scaled by `max(1, |closed form|)`.
    pub fn relative_gap(&self) -> f64 {
        self.max_abs_gap / self.closed_form.abs().max(1.0)
    }
}

/// Evaluates the closed form, the difference quotient (or classical limit)
/// and the quadrature of the integral representation at `t`.
pub fn cross_check(id: EntryId, params: &Params, ts: &TimeScale, t: f64) -> Result<CrossCheck> {
    cross_check_in(Direction::Delta, id, params, ts, t)
}

/// Nabla counterpart of [`cross_check`]; `mu` in the result holds `ν(t)`.
pub fn cross_check_nabla(id: EntryId, params: &Params, ts: &TimeScale, t: f64) -> Result<CrossCheck> {
    cross_check_in(Direction::Nabla, id, params, ts, t)
}

fn cross_check_in(direction: Direction, id: EntryId, params: &Params, ts: &TimeScale, t: f64) -> Result<CrossCheck> {
    let entry = id.entry();
    let f = entry.real_function(params)?;
    let (mu, closed_form, quotient, quadrature) = match direction {
        Direction::Delta => {
            let quotient = delta_derivative(ts, &f, t)?;
            let mu = ts.mu(t)?;
            (mu, eval_delta(id, params, t, mu)?, quotient, delta_derivative_quadrature(ts, &f, t, DEFAULT_TOL)?)
        }
        Direction::Nabla => {
            let quotient = nabla_derivative(ts, &f, t)?;
            let nu = ts.nu(t)?;
            (nu, eval_nabla(id, params, t, nu)?, quotient, nabla_derivative_quadrature(ts, &f, t, DEFAULT_TOL)?)
        }
    };
    let values = [closed_form, quotient.value, quadrature.value];
    let max_abs_gap = values
        .iter()
        .flat_map(|a| values.iter().map(move |b| (a - b).abs()))
        .fold(0.0, f64::max);
    Ok(CrossCheck {
        id,
        t,
        mu,
        closed_form,
        difference_quotient: quotient.value,
        quadrature: quadrature.value,
        max_abs_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn twenty_entries_in_order() {
        let ids: Vec<&str> = list_catalog().iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids.len(), 20);
        assert_eq!(ids[0], "B01");
        assert_eq!(ids[19], "H03");
        for (i, e) in list_catalog().iter().enumerate() {
            assert_eq!(e.id as usize, i);
            assert_eq!(e.id.as_str().parse::<EntryId>().unwrap(), e.id);
        }
    }

    #[test]
    fn eval_delta_examples() {
        let p = Params::new(2.0, 3.0, 2);
        assert_eq!(eval_delta(EntryId::B01, &p, 5.0, 0.7).unwrap(), 0.0);
        assert_eq!(eval_delta(EntryId::B02, &Params::with_n(1), 4.0, 0.3).unwrap(), 1.0);
        assert_eq!(eval_delta(EntryId::B02, &p, 3.0, 1.0).unwrap(), 7.0);
        assert_eq!(eval_delta(EntryId::B03, &p, 3.0, 1.0).unwrap(), 8.0);
        assert_eq!(eval_delta(EntryId::B03, &p, 3.0, 0.0).unwrap(), 8.0 * 2f64.ln());
        assert!(close(eval_delta(EntryId::L01, &Params::with_n(1), 1.0, 1.0).unwrap(), 2f64.ln(), 1e-15));
        assert_eq!(eval_delta(EntryId::R01, &Params::default(), 4.0, 0.0).unwrap(), 0.25);
    }

    #[test]
    fn violations() {
        assert!(matches!(
            eval_delta(EntryId::R01, &Params::default(), -1.0, 0.5),
            Err(Error::DomainViolation { id: EntryId::R01, .. })
        ));
        assert!(matches!(
            eval_delta(EntryId::B03, &Params::with_k(-2.0), 1.0, 1.0),
            Err(Error::ParamViolation { id: EntryId::B03, .. })
        ));
        assert!(matches!(eval_delta(EntryId::B02, &Params::default(), 1.0, 1.0), Err(Error::ParamViolation { .. })));
        assert!(matches!(eval_delta(EntryId::B02, &Params::with_n(61), 1.0, 1.0), Err(Error::ParamViolation { .. })));
        assert!(matches!(eval_delta(EntryId::B02, &Params::with_n(0), 1.0, 1.0), Err(Error::ParamViolation { .. })));
        // ln(k t + c) must stay positive at t + mu as well.
        let p = Params { k: Some(-1.0), c: Some(2.0), n: None };
        assert!(eval_delta(EntryId::L02, &p, 1.0, 0.5).is_ok());
        assert!(matches!(eval_delta(EntryId::L02, &p, 1.0, 1.0), Err(Error::DomainViolation { .. })));
        assert!(eval_delta(EntryId::T01, &p, 1.0, -1.0).is_err());
    }

    #[test]
    fn even_power_log_accepts_negative_t() {
        // ln(t^2) on t = -3 with mu = 1: (ln 4 - ln 9)/1.
        let v = eval_delta(EntryId::L01, &Params::with_n(2), -3.0, 1.0).unwrap();
        assert!(close(v, (4f64).ln() - (9f64).ln(), 1e-14));
        assert!(eval_delta(EntryId::L01, &Params::with_n(3), -3.0, 1.0).is_err());
    }

    #[test]
    fn rewrites_match_literal_forms_at_moderate_mu() {
        let p = Params::new(0.7, 1.3, 3);
        for entry in list_catalog() {
            for &(t, mu) in &[(0.5, 0.25), (2.0, 1.0), (3.0, 0.5), (1.5, 3.0)] {
                if !entry.admissible(&p, t, mu) {
                    continue;
                }
                let lit = entry.literal_form(&p, t, mu).unwrap();
                let stable = entry.closed_form(&p, t, mu).unwrap();
                assert!(close(stable, lit, 1e-12), "{} t={t} mu={mu}: {stable} vs {lit}", entry.id);
            }
        }
    }

    #[test]
    fn nabla_substitution() {
        let p = Params::with_n(2);
        assert_eq!(eval_nabla(EntryId::B02, &p, 3.0, 1.0).unwrap(), 5.0);
        let v = eval_nabla(EntryId::E01, &Params::with_k(1.0), 0.0, 1.0).unwrap();
        assert!(close(v, 1.0 - (-1f64).exp(), 1e-15));
    }

    #[test]
    fn cross_check_examples() {
        let z = TimeScale::integers();
        let r = cross_check(EntryId::E01, &Params::with_k(1.0), &z, 0.0).unwrap();
        assert!(close(r.closed_form, std::f64::consts::E - 1.0, 1e-15));
        assert!(r.max_abs_gap <= 1e-10);
        let r = cross_check(EntryId::T01, &Params::default(), &z, 0.0).unwrap();
        assert!(close(r.closed_form, 1f64.sin(), 1e-15));
        assert!(r.max_abs_gap <= 1e-10);
        let r = cross_check(EntryId::H03, &Params::with_k(1.0), &TimeScale::reals(), 0.0).unwrap();
        assert_eq!(r.closed_form, 1.0);
        assert_eq!(r.max_abs_gap, 0.0);
    }
}
