//! Adaptive quadrature.
//!
//! [`adaptive_simpson`] evaluates the integral representation of the delta
//! derivative over `[0, 1]`. [`adaptive_gauss_legendre`] integrates over
//! the dense pieces of a time scale; its nodes are interior, so the
//! integrand is never sampled at a piece endpoint (where a delta derivative
//! switches to its scattered value).

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::numeric::pairwise_sum;

/// Default tolerance for derivative quadrature.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Default subdivision budget (`2^15` subintervals).
pub const DEFAULT_BUDGET: usize = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    pub intervals: usize,
}

fn checked(f: &dyn Fn(f64) -> f64, x: f64) -> Result<f64> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::NonFiniteValue(format!("integrand is {y} at {x}")))
    }
}

struct SimpsonPiece {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

/// Initial panels for adaptive Simpson; enough that an integrand with a few
/// dozen oscillations on the interval is not aliased by the first estimate.
const SIMPSON_PANELS: usize = 64;

/// Adaptive Simpson on `[a, b]` to tolerance `tol * max(1, ∫|f|)`
/// (absolute for integrands of order one, relative beyond), starting from
/// `SIMPSON_PANELS` panels and splitting at most `budget` times in total.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, budget: usize) -> Result<Quadrature> {
    if a == b {
        return Ok(Quadrature { value: 0.0, error_estimate: 0.0, intervals: 0 });
    }
    let span = b - a;
    let panels = SIMPSON_PANELS.min(budget.max(1));
    let edges: Vec<f64> = (0..=panels)
        .map(|i| if i == panels { b } else { a + span * (i as f64 / panels as f64) })
        .collect();
    let values = edges.iter().map(|&x| checked(f, x)).collect::<Result<Vec<_>>>()?;
    let mut stack = Vec::with_capacity(panels);
    for i in (0..panels).rev() {
        let (lo, hi) = (edges[i], edges[i + 1]);
        let fm = checked(f, 0.5 * (lo + hi))?;
        let whole = (hi - lo) * (values[i] + 4.0 * fm + values[i + 1]) / 6.0;
        stack.push(SimpsonPiece { a: lo, b: hi, fa: values[i], fm, fb: values[i + 1], whole });
    }
    let magnitude: Vec<f64> = stack.iter().map(|p| p.whole.abs()).collect();
    let tol = tol * pairwise_sum(&magnitude).max(1.0);
    let mut accepted = Vec::new();
    let mut error = 0.0;
    let mut intervals = panels;

    while let Some(p) = stack.pop() {
        let m = 0.5 * (p.a + p.b);
        let h = p.b - p.a;
        let flm = checked(f, 0.5 * (p.a + m))?;
        let frm = checked(f, 0.5 * (m + p.b))?;
        let left = h * (p.fa + 4.0 * flm + p.fm) / 12.0;
        let right = h * (p.fm + 4.0 * frm + p.fb) / 12.0;
        let diff = left + right - p.whole;
        let local_tol = tol * (h / span).abs();
        if diff.abs() <= 15.0 * local_tol || m == p.a || m == p.b {
            accepted.push(left + right + diff / 15.0);
            error += diff.abs() / 15.0;
            continue;
        }
        intervals += 1;
        if intervals > budget {
            return Err(Error::QuadratureNoConvergence { budget, estimate: error + diff.abs() / 15.0 });
        }
        // Push right first so the left half is refined first.
        stack.push(SimpsonPiece { a: m, b: p.b, fa: p.fm, fm: frm, fb: p.fb, whole: right });
        stack.push(SimpsonPiece { a: p.a, b: m, fa: p.fa, fm: flm, fb: p.fm, whole: left });
    }
    Ok(Quadrature { value: pairwise_sum(&accepted), error_estimate: error, intervals })
}

const GL_ORDER: usize = 10;

/// Nodes and weights of the `GL_ORDER`-point Gauss-Legendre rule on
/// `[-1, 1]`, by Newton iteration on the Legendre polynomial. Nodes are
/// symmetric and the weights sum to exactly 2, so constants integrate
/// without rounding drift.
fn gauss_legendre_rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_ORDER;
        let mut rule = Vec::with_capacity(n);
        for i in 0..n / 2 {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let k = k as f64;
                    let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            rule.push((x, w));
            rule.push((-x, w));
        }
        let total = |rule: &[(f64, f64)]| pairwise_sum(&rule.iter().map(|r| r.1).collect::<Vec<_>>());
        for _ in 0..8 {
            let residual = 2.0 - total(&rule);
            if residual == 0.0 {
                break;
            }
            rule[0].1 += residual;
        }
        rule
    })
}

fn gl_panel(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> Result<f64> {
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    let terms = gauss_legendre_rule()
        .iter()
        .map(|&(x, w)| checked(f, mid + half * x).map(|y| w * y))
        .collect::<Result<Vec<_>>>()?;
    Ok(half * pairwise_sum(&terms))
}

/// Adaptive Gauss-Legendre over `[a, b]`: the interval is first cut into
/// panels no wider than `max_panel`, then each panel is bisected until the
/// one-panel and two-panel estimates agree to the panel's share of
/// `tol * max(1, |first estimate|)`.
pub fn adaptive_gauss_legendre(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    max_panel: f64,
    tol: f64,
    budget: usize,
) -> Result<Quadrature> {
    if a == b {
        return Ok(Quadrature { value: 0.0, error_estimate: 0.0, intervals: 0 });
    }
    let span = b - a;
    let panels = (span / max_panel).ceil().max(1.0);
    if panels > budget as f64 {
        return Err(Error::QuadratureNoConvergence { budget, estimate: f64::INFINITY });
    }
    let panels = panels as usize;
    let edges: Vec<f64> = (0..=panels)
        .map(|i| if i == panels { b } else { a + span * (i as f64 / panels as f64) })
        .collect();

    let mut stack = Vec::with_capacity(panels);
    for w in edges.windows(2).rev() {
        stack.push((w[0], w[1], gl_panel(f, w[0], w[1])?));
    }
    let first: Vec<f64> = stack.iter().map(|p| p.2).collect();
    let tol = tol * pairwise_sum(&first).abs().max(1.0);
    let mut accepted = Vec::new();
    let mut error = 0.0;
    let mut intervals = panels;
    while let Some((lo, hi, whole)) = stack.pop() {
        let m = 0.5 * (lo + hi);
        let left = gl_panel(f, lo, m)?;
        let right = gl_panel(f, m, hi)?;
        let diff = (left + right - whole).abs();
        let local_tol = tol * ((hi - lo) / span);
        if diff <= local_tol || m == lo || m == hi {
            accepted.push(left + right);
            error += diff;
            continue;
        }
        intervals += 1;
        if intervals > budget {
            return Err(Error::QuadratureNoConvergence { budget, estimate: error + diff });
        }
        stack.push((m, hi, right));
        stack.push((lo, m, left));
    }
    Ok(Quadrature { value: pairwise_sum(&accepted), error_estimate: error, intervals })
}
