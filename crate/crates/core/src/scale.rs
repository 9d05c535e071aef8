//! Time scales: nonempty closed subsets of the real line.
//!
//! A [`TimeScale`] is one of a handful of concrete shapes (the reals, a
//! uniform lattice `hZ + offset`, the q-numbers `{q^k : k >= 0}`, a finite
//! point set, a finite union of closed intervals, or a finite stage of the
//! Cantor construction). Unbounded lattices are never materialized: every
//! operator works from closed-form index arithmetic.
//!
//! Membership comparisons use the tolerance `1e-9 * max(1, |t|)`, so that
//! points produced by floating arithmetic (`0.1 * 3`, `2.0_f64.powi(9)`)
//! are still recognised as lattice points.

use std::fmt;

use crate::error::{Error, Result};

/// Deepest Cantor construction stage accepted by [`TimeScale::cantor`].
pub const MAX_CANTOR_DEPTH: u32 = 20;

/// Upper bound on the number of points a window query may produce.
pub const MAX_WINDOW_POINTS: usize = 10_000_000;

/// Membership tolerance used for lattice indices and interval endpoints.
pub fn membership_tol(t: f64) -> f64 {
    1e-9 * t.abs().max(1.0)
}

/// Closed interval `[lo, hi]`; `lo == hi` is an isolated point, `lo` may be
/// `-inf` and `hi` may be `+inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn point(p: f64) -> Self {
        Self { lo: p, hi: p }
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Kind {
    Reals,
    /// `{offset + i * step : i in Z}`.
    Lattice { step: f64, offset: f64 },
    /// `{ratio^k : k in N_0}`.
    QLattice { ratio: f64 },
    /// Strictly increasing finite point set.
    Finite(Vec<f64>),
    /// Sorted, pairwise disjoint, non-adjacent closed intervals.
    Union(Vec<Interval>),
    /// Stage `depth` of the middle-thirds construction on `[0, 1]`.
    Cantor { depth: u32, intervals: Vec<Interval> },
}

/// An immutable time scale. Construct through the validating constructors
/// or [`TimeScale::parse`] / [`TimeScale::from_json`].
#[derive(Debug, Clone, PartialEq)]
pub struct TimeScale {
    kind: Kind,
}

/// Which side(s) of a point the scale accumulates on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PointClass {
    pub right_scattered: bool,
    pub left_scattered: bool,
}

impl PointClass {
    pub fn is_right_dense(&self) -> bool {
        !self.right_scattered
    }

    pub fn is_left_dense(&self) -> bool {
        !self.left_scattered
    }

    pub fn is_isolated(&self) -> bool {
        self.left_scattered && self.right_scattered
    }

    pub fn is_dense(&self) -> bool {
        !self.left_scattered && !self.right_scattered
    }

    /// Short label: `isolated`, `dense`, or the two one-sided tags.
    pub fn label(&self) -> &'static str {
        match (self.left_scattered, self.right_scattered) {
            (true, true) => "isolated",
            (false, false) => "dense",
            (false, true) => "left-dense, right-scattered",
            (true, false) => "left-scattered, right-dense",
        }
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Where a member point sits inside the representation.
#[derive(Debug, Clone, Copy)]
enum Loc {
    Dense,
    Lattice,
    QLattice(i64),
    Finite(usize),
    /// Interval index plus whether `t` sits on its lower / upper endpoint.
    Interval { idx: usize, at_lo: bool, at_hi: bool },
}

impl TimeScale {
    pub fn reals() -> Self {
        Self { kind: Kind::Reals }
    }

    pub fn integers() -> Self {
        Self::lattice(1.0, 0.0).expect("unit lattice is valid")
    }

    pub fn lattice(step: f64, offset: f64) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::BadScaleSpec(format!("lattice step must be finite and > 0, got {step}")));
        }
        if !offset.is_finite() {
            return Err(Error::BadScaleSpec(format!("lattice offset must be finite, got {offset}")));
        }
        Ok(Self { kind: Kind::Lattice { step, offset } })
    }

    pub fn qlattice(ratio: f64) -> Result<Self> {
        if !(ratio.is_finite() && ratio > 1.0) {
            return Err(Error::BadScaleSpec(format!("q-lattice ratio must be finite and > 1, got {ratio}")));
        }
        Ok(Self { kind: Kind::QLattice { ratio } })
    }

    pub fn finite(points: impl IntoIterator<Item = f64>) -> Result<Self> {
        let mut points: Vec<f64> = points.into_iter().collect();
        if points.is_empty() {
            return Err(Error::BadScaleSpec("finite set must be nonempty".into()));
        }
        if let Some(p) = points.iter().find(|p| !p.is_finite()) {
            return Err(Error::BadScaleSpec(format!("finite set point {p} is not finite")));
        }
        points.sort_by(f64::total_cmp);
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::BadScaleSpec(format!("duplicate point {}", w[0])));
        }
        Ok(Self { kind: Kind::Finite(points) })
    }

    /// Builds an interval union. Overlapping or touching intervals are merged.
    pub fn union(intervals: impl IntoIterator<Item = Interval>) -> Result<Self> {
        let mut intervals: Vec<Interval> = intervals.into_iter().collect();
        if intervals.is_empty() {
            return Err(Error::BadScaleSpec("interval union must be nonempty".into()));
        }
        for iv in &intervals {
            if iv.lo.is_nan() || iv.hi.is_nan() || iv.lo > iv.hi || iv.lo == f64::INFINITY || iv.hi == f64::NEG_INFINITY {
                return Err(Error::BadScaleSpec(format!("invalid interval [{}, {}]", iv.lo, iv.hi)));
            }
        }
        intervals.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        let mut merged: Vec<Interval> = Vec::with_capacity(intervals.len());
        for iv in intervals {
            match merged.last_mut() {
                Some(last) if iv.lo <= last.hi => last.hi = last.hi.max(iv.hi),
                _ => merged.push(iv),
            }
        }
        Ok(Self { kind: Kind::Union(merged) })
    }

    /// The `2^depth` closed intervals of width `3^-depth` left after `depth`
    /// middle-third removals from `[0, 1]`.
    pub fn cantor(depth: u32) -> Result<Self> {
        if depth > MAX_CANTOR_DEPTH {
            return Err(Error::BadScaleSpec(format!(
                "cantor depth {depth} exceeds the supported maximum {MAX_CANTOR_DEPTH}"
            )));
        }
        let denom = 3u64.pow(depth) as f64;
        // Left endpoints are m / 3^depth where m has only digits 0 and 2 in base 3.
        let mut numerators = vec![0u64];
        for _ in 0..depth {
            numerators = numerators.iter().flat_map(|&m| [3 * m, 3 * m + 2]).collect();
        }
        let intervals = numerators
            .into_iter()
            .map(|m| Interval::new(m as f64 / denom, (m + 1) as f64 / denom))
            .collect();
        Ok(Self { kind: Kind::Cantor { depth, intervals } })
    }

    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    fn intervals(&self) -> Option<&[Interval]> {
        match &self.kind {
            Kind::Union(ivs) | Kind::Cantor { intervals: ivs, .. } => Some(ivs),
            _ => None,
        }
    }

    /// `inf T` when finite.
    pub fn inf(&self) -> Option<f64> {
        match &self.kind {
            Kind::Reals | Kind::Lattice { .. } => None,
            Kind::QLattice { .. } => Some(1.0),
            Kind::Finite(points) => points.first().copied(),
            Kind::Union(ivs) | Kind::Cantor { intervals: ivs, .. } => {
                Some(ivs[0].lo).filter(|lo| lo.is_finite())
            }
        }
    }

    /// `sup T` when finite.
    pub fn sup(&self) -> Option<f64> {
        match &self.kind {
            Kind::Reals | Kind::Lattice { .. } | Kind::QLattice { .. } => None,
            Kind::Finite(points) => points.last().copied(),
            Kind::Union(ivs) | Kind::Cantor { intervals: ivs, .. } => {
                ivs.last().map(|iv| iv.hi).filter(|hi| hi.is_finite())
            }
        }
    }

    fn locate(&self, t: f64) -> Option<Loc> {
        if !t.is_finite() {
            return None;
        }
        let tol = membership_tol(t);
        match &self.kind {
            Kind::Reals => Some(Loc::Dense),
            Kind::Lattice { step, offset } => {
                let idx = ((t - offset) / step).round();
                let p = offset + idx * step;
                ((p - t).abs() <= tol && idx.abs() < 9.0e15).then_some(Loc::Lattice)
            }
            Kind::QLattice { ratio } => {
                if t <= 0.0 {
                    return None;
                }
                let k = (t.ln() / ratio.ln()).round();
                if k < 0.0 || k > i32::MAX as f64 {
                    return None;
                }
                let p = ratio.powi(k as i32);
                ((p - t).abs() <= tol).then_some(Loc::QLattice(k as i64))
            }
            Kind::Finite(points) => {
                let i = points.partition_point(|&p| p < t - tol);
                (i < points.len() && (points[i] - t).abs() <= tol).then_some(Loc::Finite(i))
            }
            Kind::Union(ivs) | Kind::Cantor { intervals: ivs, .. } => {
                let i = ivs.partition_point(|iv| iv.hi < t - tol);
                let iv = ivs.get(i)?;
                if t < iv.lo - tol {
                    return None;
                }
                Some(Loc::Interval {
                    idx: i,
                    at_lo: (t - iv.lo).abs() <= tol,
                    at_hi: (t - iv.hi).abs() <= tol,
                })
            }
        }
    }

    fn require(&self, t: f64) -> Result<Loc> {
        self.locate(t).ok_or(Error::PointNotInScale { t })
    }

    pub fn contains(&self, t: f64) -> bool {
        self.locate(t).is_some()
    }

    /// Forward jump operator `sigma(t) = inf {s in T : s > t}`, clamped to
    /// `t` at a finite supremum.
    pub fn sigma(&self, t: f64) -> Result<f64> {
        Ok(match (self.require(t)?, &self.kind) {
            (Loc::Dense, _) => t,
            (Loc::Lattice, Kind::Lattice { step, .. }) => t + step,
            (Loc::QLattice(_), Kind::QLattice { ratio }) => ratio * t,
            (Loc::Finite(i), Kind::Finite(points)) => points.get(i + 1).copied().unwrap_or(t),
            (Loc::Interval { idx, at_hi, .. }, _) => {
                let ivs = self.intervals().expect("interval location");
                match ivs.get(idx + 1) {
                    Some(next) if at_hi => next.lo,
                    _ => t,
                }
            }
            _ => unreachable!("location does not match scale kind"),
        })
    }

    /// Backward jump operator `rho(t) = sup {s in T : s < t}`, clamped to
    /// `t` at a finite infimum.
    pub fn rho(&self, t: f64) -> Result<f64> {
        Ok(match (self.require(t)?, &self.kind) {
            (Loc::Dense, _) => t,
            (Loc::Lattice, Kind::Lattice { step, .. }) => t - step,
            (Loc::QLattice(k), Kind::QLattice { ratio }) => {
                if k == 0 {
                    t
                } else {
                    t / ratio
                }
            }
            (Loc::Finite(i), Kind::Finite(points)) => {
                if i == 0 {
                    t
                } else {
                    points[i - 1]
                }
            }
            (Loc::Interval { idx, at_lo, .. }, _) => {
                let ivs = self.intervals().expect("interval location");
                if at_lo && idx > 0 {
                    ivs[idx - 1].hi
                } else {
                    t
                }
            }
            _ => unreachable!("location does not match scale kind"),
        })
    }

    /// Forward graininess `mu(t) = sigma(t) - t`.
    pub fn mu(&self, t: f64) -> Result<f64> {
        match &self.kind {
            Kind::Reals => self.require(t).map(|_| 0.0),
            Kind::Lattice { step, .. } => self.require(t).map(|_| *step),
            Kind::QLattice { ratio } => self.require(t).map(|_| (ratio - 1.0) * t),
            _ => Ok(self.sigma(t)? - t),
        }
    }

    /// Backward graininess `nu(t) = t - rho(t)`.
    pub fn nu(&self, t: f64) -> Result<f64> {
        match (&self.kind, self.require(t)?) {
            (Kind::Reals, _) => Ok(0.0),
            (Kind::Lattice { step, .. }, _) => Ok(*step),
            (Kind::QLattice { .. }, Loc::QLattice(0)) => Ok(0.0),
            (Kind::QLattice { ratio }, _) => Ok((1.0 - 1.0 / ratio) * t),
            _ => Ok(t - self.rho(t)?),
        }
    }

    pub fn classify(&self, t: f64) -> Result<PointClass> {
        Ok(PointClass {
            right_scattered: self.mu(t)? > 0.0,
            left_scattered: self.nu(t)? > 0.0,
        })
    }

    /// Membership in `T^kappa`: everything except a finite, left-scattered
    /// maximum.
    pub fn in_kappa(&self, t: f64) -> Result<bool> {
        let left_scattered = self.nu(t)? > 0.0;
        let at_sup = self.sup().is_some_and(|s| (t - s).abs() <= membership_tol(t));
        Ok(!(at_sup && left_scattered))
    }

    /// Membership in `T_kappa`: everything except a finite, right-scattered
    /// minimum. This is the domain of the nabla derivative.
    pub fn in_nabla_kappa(&self, t: f64) -> Result<bool> {
        let right_scattered = self.mu(t)? > 0.0;
        let at_inf = self.inf().is_some_and(|s| (t - s).abs() <= membership_tol(t));
        Ok(!(at_inf && right_scattered))
    }

    /// Connected components of `T ∩ [a, b]` in increasing order. Isolated
    /// points come back as degenerate intervals.
    pub fn components(&self, a: f64, b: f64) -> Result<Vec<Interval>> {
        if !(a.is_finite() && b.is_finite()) || a > b {
            return Err(Error::InvalidArgument(format!("window [{a}, {b}] must be finite with a <= b")));
        }
        let (tol_a, tol_b) = (membership_tol(a), membership_tol(b));
        let too_large = || Error::WindowTooLarge { a, b, limit: MAX_WINDOW_POINTS };
        let out: Vec<Interval> = match &self.kind {
            Kind::Reals => vec![Interval::new(a, b)],
            Kind::Lattice { step, offset } => {
                let lo = ((a - offset - tol_a) / step).ceil();
                let hi = ((b - offset + tol_b) / step).floor();
                if hi - lo + 1.0 > MAX_WINDOW_POINTS as f64 {
                    return Err(too_large());
                }
                let (lo, hi) = (lo as i64, hi as i64);
                (lo..=hi).map(|i| Interval::point(offset + i as f64 * step)).collect()
            }
            Kind::QLattice { ratio } => {
                let mut out = Vec::new();
                let mut k = if a <= 1.0 { 0 } else { (a.ln() / ratio.ln()).floor().max(0.0) as i32 };
                while ratio.powi(k) < a - tol_a {
                    k += 1;
                }
                loop {
                    let p = ratio.powi(k);
                    if p > b + tol_b || !p.is_finite() {
                        break;
                    }
                    out.push(Interval::point(p));
                    if out.len() > MAX_WINDOW_POINTS {
                        return Err(too_large());
                    }
                    k += 1;
                }
                out
            }
            Kind::Finite(points) => points
                .iter()
                .filter(|&&p| p >= a - tol_a && p <= b + tol_b)
                .map(|&p| Interval::point(p))
                .collect(),
            Kind::Union(ivs) | Kind::Cantor { intervals: ivs, .. } => ivs
                .iter()
                .filter_map(|iv| {
                    if iv.is_degenerate() {
                        (iv.lo >= a - tol_a && iv.lo <= b + tol_b).then_some(*iv)
                    } else {
                        let lo = iv.lo.max(a);
                        let hi = iv.hi.min(b);
                        if lo <= hi {
                            Some(Interval::new(lo, hi))
                        } else if iv.hi >= a - tol_a && iv.hi < a {
                            Some(Interval::point(iv.hi))
                        } else if iv.lo <= b + tol_b && iv.lo > b {
                            Some(Interval::point(iv.lo))
                        } else {
                            None
                        }
                    }
                })
                .collect(),
        };
        if out.is_empty() {
            return Err(Error::EmptyWindow { a, b });
        }
        Ok(out)
    }

    /// Every scattered point of `T ∩ [a, b]` plus fill points spaced at
    /// most `max_step` apart across each dense piece.
    pub fn sample(&self, a: f64, b: f64, max_step: f64) -> Result<Vec<f64>> {
        if !(max_step.is_finite() && max_step > 0.0) {
            return Err(Error::InvalidArgument(format!("max_step must be finite and > 0, got {max_step}")));
        }
        let mut out = Vec::new();
        for comp in self.components(a, b)? {
            if comp.is_degenerate() {
                out.push(comp.lo);
                continue;
            }
            let n = (comp.width() / max_step).ceil().max(1.0);
            if out.len() as f64 + n > MAX_WINDOW_POINTS as f64 {
                return Err(Error::WindowTooLarge { a, b, limit: MAX_WINDOW_POINTS });
            }
            let n = n as usize;
            out.extend((0..n).map(|i| comp.lo + comp.width() * (i as f64 / n as f64)));
            out.push(comp.hi);
        }
        Ok(out)
    }
}

fn fmt_bound(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x}")
    }
}

/// Renders the compact scale string accepted by [`TimeScale::parse`].
impl fmt::Display for TimeScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Reals => f.write_str("R"),
            Kind::Lattice { step, offset } if *step == 1.0 && *offset == 0.0 => f.write_str("Z"),
            Kind::Lattice { step, offset } if *offset == 0.0 => write!(f, "hZ:{step}"),
            Kind::Lattice { step, offset } => write!(f, "hZ:{step}@{offset}"),
            Kind::QLattice { ratio } => write!(f, "q:{ratio}"),
            Kind::Finite(points) => {
                let inner: Vec<String> = points.iter().map(|p| format!("{p}")).collect();
                write!(f, "set:{{{}}}", inner.join(","))
            }
            Kind::Union(ivs) => {
                let parts: Vec<String> = ivs
                    .iter()
                    .map(|iv| {
                        if iv.is_degenerate() {
                            format!("{{{}}}", fmt_bound(iv.lo))
                        } else {
                            format!("[{},{}]", fmt_bound(iv.lo), fmt_bound(iv.hi))
                        }
                    })
                    .collect();
                write!(f, "union:{}", parts.join("+"))
            }
            Kind::Cantor { depth, .. } => write!(f, "cantor:{depth}"),
        }
    }
}
