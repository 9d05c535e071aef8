use super::{canonicalize, classical_diff, match_catalog, Expr, MatchResult};
use crate::catalog::{eval_delta, eval_nabla, EntryId};
use crate::engine::{
    delta_derivative, delta_derivative_quadrature, nabla_derivative, nabla_derivative_quadrature, DerivativeReport,
    Diagnostics, Direction, Method, RealFunction,
};
use crate::error::{Error, Result};
use crate::scale::TimeScale;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Catalog(EntryId),
    SymbolicFallback,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Differentiation {
    pub report: DerivativeReport,
    pub provenance: Provenance,
}

/// A canonical expression with its symbolic derivative and catalog match,
/// ready to be differentiated at many points.
#[derive(Debug, Clone, PartialEq)]
pub struct Compiled {
    pub expr: Expr,
    pub derivative: Expr,
    pub matched: Option<MatchResult>,
}

impl Compiled {
    pub fn new(e: &Expr) -> Self {
        let expr = canonicalize(e);
        let derivative = classical_diff(&expr);
        let matched = match_catalog(&expr);
        Self { expr, derivative, matched }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(Self::new(&super::parse(text)?))
    }

    pub fn provenance(&self) -> Provenance {
        self.matched.map_or(Provenance::SymbolicFallback, |m| Provenance::Catalog(m.id))
    }

    pub fn real_function(&self) -> RealFunction<'_> {
        RealFunction::with_derivative(|t| self.expr.eval(t), |t| self.derivative.eval(t))
    }

    fn closed_form(&self, m: &MatchResult, ts: &TimeScale, t: f64, direction: Direction) -> Result<DerivativeReport> {
        let (step, value) = match direction {
            Direction::Delta => {
                if !ts.in_kappa(t)? {
                    return Err(Error::NotInKappa { t });
                }
                let mu = ts.mu(t)?;
                (mu, eval_delta(m.id, &m.params, t, mu)?)
            }
            Direction::Nabla => {
                if !ts.in_nabla_kappa(t)? {
                    return Err(Error::NotInNablaKappa { t });
                }
                let nu = ts.nu(t)?;
                (nu, eval_nabla(m.id, &m.params, t, nu)?)
            }
        };
        Ok(DerivativeReport { value, method: Method::ClosedForm, direction, mu_used: step, diagnostics: Diagnostics::None })
    }

    fn run(&self, ts: &TimeScale, t: f64, direction: Direction) -> Result<Differentiation> {
        let report = match &self.matched {
            Some(m) => self.closed_form(m, ts, t, direction)?,
            None => {
                let f = self.real_function();
                match direction {
                    Direction::Delta => delta_derivative(ts, &f, t)?,
                    Direction::Nabla => nabla_derivative(ts, &f, t)?,
                }
            }
        };
        Ok(Differentiation { report, provenance: self.provenance() })
    }

    /// Delta derivative: the catalog closed form when the expression matches
    /// an entry, otherwise the difference quotient or classical limit.
    pub fn delta(&self, ts: &TimeScale, t: f64) -> Result<Differentiation> {
        self.run(ts, t, Direction::Delta)
    }

    pub fn nabla(&self, ts: &TimeScale, t: f64) -> Result<Differentiation> {
        self.run(ts, t, Direction::Nabla)
    }

    /// Difference quotient or classical limit, bypassing the catalog.
    pub fn quotient(&self, ts: &TimeScale, t: f64, direction: Direction) -> Result<DerivativeReport> {
        let f = self.real_function();
        match direction {
            Direction::Delta => delta_derivative(ts, &f, t),
            Direction::Nabla => nabla_derivative(ts, &f, t),
        }
    }

    /// Quadrature of the integral representation using the symbolic
    /// derivative.
    pub fn quadrature(&self, ts: &TimeScale, t: f64, tol: f64, direction: Direction) -> Result<DerivativeReport> {
        let f = self.real_function();
        match direction {
            Direction::Delta => delta_derivative_quadrature(ts, &f, t, tol),
            Direction::Nabla => nabla_derivative_quadrature(ts, &f, t, tol),
        }
    }
}

pub fn differentiate(e: &Expr, ts: &TimeScale, t: f64) -> Result<Differentiation> {
    Compiled::new(e).delta(ts, t)
}

pub fn differentiate_nabla(e: &Expr, ts: &TimeScale, t: f64) -> Result<Differentiation> {
    Compiled::new(e).nabla(ts, t)
}
