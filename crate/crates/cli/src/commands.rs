use rayon::prelude::*;
use timescales::catalog::cross_check;
use timescales::engine::{delta_integral, Direction, RealFunction};
use timescales::special::{hyperbolic_defect, pythagorean_defect, DefectReport};
use timescales::{Compiled, EntryId, Error, Kind, Params, Provenance, Result, TimeScale};

use crate::output::{Field, Record};

/// Records of one command plus the error messages behind any failed record.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub records: Vec<Record>,
    pub messages: Vec<String>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.failed).count()
    }

    pub fn ok(&self) -> bool {
        self.failures() == 0
    }

    fn push(&mut self, (record, message): (Record, Option<String>)) {
        self.records.push(record);
        self.messages.extend(message);
    }
}

fn map_points<T: Send>(points: &[f64], parallel: bool, f: impl Fn(f64) -> T + Sync + Send) -> Vec<T> {
    if parallel {
        points.par_iter().map(|&t| f(t)).collect()
    } else {
        points.iter().map(|&t| f(t)).collect()
    }
}

/// Explicit points, or every sampled point of the window.
pub fn resolve_points(ts: &TimeScale, points: &[f64], window: Option<(f64, f64)>, max_step: f64) -> Result<Vec<f64>> {
    match window {
        Some((a, b)) => {
            let mut out = points.to_vec();
            out.extend(ts.sample(a, b, max_step)?);
            Ok(out)
        }
        None if points.is_empty() => Err(Error::InvalidArgument("no points given; use --points or --window".into())),
        None => Ok(points.to_vec()),
    }
}

fn kind_name(ts: &TimeScale) -> &'static str {
    match ts.kind() {
        Kind::Reals => "reals",
        Kind::Lattice { .. } => "lattice",
        Kind::QLattice { .. } => "q-lattice",
        Kind::Finite(_) => "finite",
        Kind::Union(_) => "union",
        Kind::Cantor { .. } => "cantor",
    }
}

fn bound(x: Option<f64>) -> Field {
    x.map_or(Field::text("unbounded"), Field::Num)
}

pub fn cmd_scale(ts: &TimeScale, points: &[f64]) -> Report {
    let scale = ts.to_string();
    let mut report = Report::default();
    if points.is_empty() {
        report.records.push(
            Record::new()
                .with("scale", Field::text(&scale))
                .with("kind", Field::text(kind_name(ts)))
                .with("inf", bound(ts.inf()))
                .with("sup", bound(ts.sup())),
        );
        return report;
    }
    for &t in points {
        let row = Record::new().with("scale", Field::text(&scale)).with("t", Field::num(t));
        let computed = (|| -> Result<Record> {
            Ok(row
                .clone()
                .with("sigma", Field::num(ts.sigma(t)?))
                .with("rho", Field::num(ts.rho(t)?))
                .with("mu", Field::num(ts.mu(t)?))
                .with("nu", Field::num(ts.nu(t)?))
                .with("class", Field::text(ts.classify(t)?.label()))
                .with("in_kappa", Field::Bool(ts.in_kappa(t)?))
                .with("in_nabla_kappa", Field::Bool(ts.in_nabla_kappa(t)?)))
        })();
        report.push(match computed {
            Ok(r) => (r, None),
            Err(e) => {
                let r = ["sigma", "rho", "mu", "nu", "class", "in_kappa", "in_nabla_kappa"]
                    .into_iter()
                    .fold(row, |r, name| r.with(name, Field::Error));
                (r, Some(format!("t = {t}: {e}")))
            }
        });
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiffMethod {
    /// Closed form when the expression matches a catalog entry, otherwise
    /// the difference quotient; cross-checked against the other routes.
    #[default]
    Auto,
    Quotient,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffOptions {
    pub method: DiffMethod,
    pub nabla: bool,
    /// Quadrature tolerance.
    pub tol: f64,
    /// Largest cross-check gap accepted, relative to `max(1, |value|)`.
    pub gap_tol: f64,
    pub parallel: bool,
}

impl Default for DiffOptions {
    fn default() -> Self {
        Self {
            method: DiffMethod::Auto,
            nabla: false,
            tol: timescales::quadrature::DEFAULT_TOL,
            gap_tol: 1e-8,
            parallel: false,
        }
    }
}

fn provenance(p: Provenance) -> String {
    match p {
        Provenance::Catalog(id) => format!("catalog:{id}"),
        Provenance::SymbolicFallback => "fallback".into(),
    }
}

fn diff_point(c: &Compiled, ts: &TimeScale, t: f64, opts: &DiffOptions) -> (Record, Option<String>) {
    let direction = if opts.nabla { Direction::Nabla } else { Direction::Delta };
    let head = Record::new()
        .with("expr", Field::text(c.expr.to_string()))
        .with("scale", Field::text(ts.to_string()))
        .with("t", Field::num(t))
        .with("direction", Field::text(if opts.nabla { "nabla" } else { "delta" }));
    let computed = (|| -> Result<Record> {
        let primary = match opts.method {
            DiffMethod::Auto => match direction {
                Direction::Delta => c.delta(ts, t)?.report,
                Direction::Nabla => c.nabla(ts, t)?.report,
            },
            DiffMethod::Quotient => c.quotient(ts, t, direction)?,
            DiffMethod::Quadrature => c.quadrature(ts, t, opts.tol, direction)?,
        };
        let mut r = head
            .clone()
            .with("mu", Field::num(primary.mu_used))
            .with("value", Field::num(primary.value))
            .with("method", Field::text(primary.method.as_str()))
            .with("provenance", Field::text(provenance(c.provenance())));
        if opts.method == DiffMethod::Auto {
            let quotient = c.quotient(ts, t, direction)?.value;
            let quadrature = c.quadrature(ts, t, opts.tol, direction)?.value;
            let values = [primary.value, quotient, quadrature];
            let gap = values.iter().flat_map(|a| values.iter().map(move |b| (a - b).abs())).fold(0.0, f64::max);
            r = r
                .with("difference_quotient", Field::num(quotient))
                .with("quadrature", Field::num(quadrature))
                .with("gap", Field::num(gap));
            r.failed |= gap > opts.gap_tol * primary.value.abs().max(1.0);
        }
        Ok(r)
    })();
    match computed {
        Ok(r) => {
            let breach = r.failed.then(|| format!("t = {t}: cross-check gap above {}", opts.gap_tol));
            (r, breach)
        }
        Err(e) => {
            let mut names = vec!["mu", "value", "method", "provenance"];
            if opts.method == DiffMethod::Auto {
                names.extend(["difference_quotient", "quadrature", "gap"]);
            }
            (names.into_iter().fold(head, |r, n| r.with(n, Field::Error)), Some(format!("t = {t}: {e}")))
        }
    }
}

/// Derivative of `expr` at each point. Fails only if `expr` does not parse.
pub fn cmd_diff(expr: &str, ts: &TimeScale, points: &[f64], opts: &DiffOptions) -> Result<Report> {
    let c = Compiled::parse(expr)?;
    let mut report = Report::default();
    for row in map_points(points, opts.parallel, |t| diff_point(&c, ts, t, opts)) {
        report.push(row);
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrateOptions {
    /// Widest quadrature panel on dense pieces.
    pub max_step: f64,
    pub check_ftc: bool,
    /// Largest accepted `|∫ f^Δ - (f(b) - f(a))| / max(1, |f(b) - f(a)|)`.
    pub ftc_tol: f64,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        Self { max_step: 0.25, check_ftc: false, ftc_tol: 1e-6 }
    }
}

/// `∫_a^b f Δt`, and with `check_ftc` the residual of the fundamental
/// theorem for `f`.
pub fn cmd_integrate(expr: &str, ts: &TimeScale, a: f64, b: f64, opts: &IntegrateOptions) -> Result<Report> {
    let c = Compiled::parse(expr)?;
    let head = Record::new()
        .with("expr", Field::text(c.expr.to_string()))
        .with("scale", Field::text(ts.to_string()))
        .with("a", Field::num(a))
        .with("b", Field::num(b));
    let f = c.real_function();
    let computed = (|| -> Result<Record> {
        let mut r = head.clone().with("integral", Field::num(delta_integral(ts, &f, a, b, opts.max_step)?));
        if opts.check_ftc {
            let derivative = RealFunction::new(|t| c.delta(ts, t).map_or(f64::NAN, |d| d.report.value));
            let integral = delta_integral(ts, &derivative, a, b, opts.max_step)?;
            let expected = f.value(b) - f.value(a);
            let residual = (integral - expected).abs();
            let relative = residual / expected.abs().max(1.0);
            r = r
                .with("ftc_integral", Field::num(integral))
                .with("expected", Field::num(expected))
                .with("residual", Field::num(residual))
                .with("relative_residual", Field::num(relative));
            r.failed |= relative.is_nan() || relative > opts.ftc_tol;
        }
        Ok(r)
    })();
    let mut report = Report::default();
    report.push(match computed {
        Ok(r) => {
            let breach = r.failed.then(|| format!("fundamental theorem residual above {}", opts.ftc_tol));
            (r, breach)
        }
        Err(e) => {
            let mut names = vec!["integral"];
            if opts.check_ftc {
                names.extend(["ftc_integral", "expected", "residual", "relative_residual"]);
            }
            (names.into_iter().fold(head, |r, n| r.with(n, Field::Error)), Some(e.to_string()))
        }
    });
    Ok(report)
}

fn table_row(id: EntryId, params: &Params, ts: &TimeScale, t: f64, gap_tol: f64) -> (Record, Option<String>) {
    let head = Record::new().with("id", Field::text(id.as_str())).with("t", Field::num(t));
    match cross_check(id, params, ts, t) {
        Ok(c) => {
            let mut r = head
                .with("mu", Field::num(c.mu))
                .with("closed_form", Field::num(c.closed_form))
                .with("difference_quotient", Field::num(c.difference_quotient))
                .with("quadrature", Field::num(c.quadrature))
                .with("max_abs_gap", Field::num(c.max_abs_gap));
            r.failed |= c.relative_gap() > gap_tol;
            let breach = r.failed.then(|| format!("{id} at t = {t}: gap {} above {gap_tol}", c.max_abs_gap));
            (r, breach)
        }
        Err(e) => {
            let names = ["mu", "closed_form", "difference_quotient", "quadrature", "max_abs_gap"];
            (names.into_iter().fold(head, |r, n| r.with(n, Field::Error)), Some(format!("{id} at t = {t}: {e}")))
        }
    }
}

/// Every catalog entry at every point: closed form, difference quotient and
/// quadrature side by side.
pub fn cmd_table(ts: &TimeScale, points: &[f64], params: &Params, gap_tol: f64, parallel: bool) -> Report {
    let rows = map_points(points, parallel, |t| {
        EntryId::ALL.iter().map(|&id| table_row(id, params, ts, t, gap_tol)).collect::<Vec<_>>()
    });
    let mut report = Report::default();
    for row in rows.into_iter().flatten() {
        report.push(row);
    }
    report
}

fn defect_row(scale: &str, t: f64, d: Result<DefectReport>, name: &str) -> (Record, Option<String>) {
    let head = Record::new().with("scale", Field::text(scale)).with("t", Field::num(t));
    match d {
        Ok(d) => {
            let mut r = head
                .with("mu", Field::num(d.mu))
                .with("identity", Field::text(d.identity.as_str()))
                .with("lhs", Field::num(d.lhs))
                .with("rhs", Field::num(d.rhs))
                .with("gap", Field::num(d.gap));
            r.failed |= !d.within_tolerance();
            let breach = r.failed.then(|| format!("{name} at t = {t}: gap {} above {}", d.gap, d.tolerance()));
            (r, breach)
        }
        Err(e) => {
            let r = head
                .with("mu", Field::Error)
                .with("identity", Field::text(name))
                .with("lhs", Field::Error)
                .with("rhs", Field::Error)
                .with("gap", Field::Error);
            (r, Some(format!("{name} at t = {t}: {e}")))
        }
    }
}

/// Both defect identities at every sampled point of `[a, b]`.
pub fn cmd_identity_check(ts: &TimeScale, a: f64, b: f64, max_step: f64, parallel: bool) -> Result<Report> {
    let points = ts.sample(a, b, max_step)?;
    let scale = ts.to_string();
    let rows = map_points(&points, parallel, |t| {
        [
            defect_row(&scale, t, pythagorean_defect(ts, t), "pythagorean"),
            defect_row(&scale, t, hyperbolic_defect(ts, t), "hyperbolic"),
        ]
    });
    let mut report = Report::default();
    for row in rows.into_iter().flatten() {
        report.push(row);
    }
    Ok(report)
}
