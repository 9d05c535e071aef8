//! Textual descriptions of time scales.
//!
//! Compact form (CLI flags):
//!
//! ```text
//! R | Z | hZ:<h>[@<offset>] | q:<q> | set:{p1,p2,...}
//!   | union:<piece>+<piece>+...   piece = [a,b] | {p1,...}   (a, b may be inf / -inf)
//!   | cantor:<depth>
//! ```
//!
//! JSON form: `{"kind": "reals" | "lattice" | "qlattice" | "finite" | "union" | "cantor", ...}`
//! with the kind-specific fields `h`, `offset`, `q`, `points`, `intervals`, `depth`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scale::{Interval, Kind, TimeScale};

fn bad(msg: impl Into<String>) -> Error {
    Error::BadScaleSpec(msg.into())
}

fn parse_num(s: &str) -> Result<f64> {
    let s = s.trim();
    match s {
        "inf" | "+inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        _ => s
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| bad(format!("not a number: {s:?}"))),
    }
}

fn parse_braced_set(s: &str) -> Result<Vec<f64>> {
    let inner = s
        .trim()
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| bad(format!("expected {{...}}, got {s:?}")))?;
    inner.split(',').map(parse_num).collect()
}

impl TimeScale {
    /// Parses the compact scale string.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        match spec {
            "R" => return Ok(Self::reals()),
            "Z" => return Ok(Self::integers()),
            _ => {}
        }
        let (head, body) = spec
            .split_once(':')
            .ok_or_else(|| bad(format!("unrecognised scale {spec:?}")))?;
        match head.trim() {
            "hZ" => {
                let (h, offset) = match body.split_once('@') {
                    Some((h, off)) => (parse_num(h)?, parse_num(off)?),
                    None => (parse_num(body)?, 0.0),
                };
                Self::lattice(h, offset)
            }
            "q" => Self::qlattice(parse_num(body)?),
            "set" => Self::finite(parse_braced_set(body)?),
            "union" => {
                let mut intervals = Vec::new();
                for piece in body.split('+').map(str::trim) {
                    if piece.starts_with('{') {
                        intervals.extend(parse_braced_set(piece)?.into_iter().map(Interval::point));
                    } else {
                        let inner = piece
                            .strip_prefix('[')
                            .and_then(|r| r.strip_suffix(']'))
                            .ok_or_else(|| bad(format!("expected [a,b] or {{p}}, got {piece:?}")))?;
                        let (a, b) = inner
                            .split_once(',')
                            .ok_or_else(|| bad(format!("interval needs two bounds: {piece:?}")))?;
                        intervals.push(Interval::new(parse_num(a)?, parse_num(b)?));
                    }
                }
                Self::union(intervals)
            }
            "cantor" => {
                let depth = body
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| bad(format!("cantor depth must be a non-negative integer, got {body:?}")))?;
                Self::cantor(depth)
            }
            other => Err(bad(format!("unknown scale kind {other:?}"))),
        }
    }

    /// Parses the JSON scale description.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ScaleFile = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        file.build()
    }

    pub fn to_json(&self) -> Value {
        fn bound(x: f64) -> Value {
            if x == f64::INFINITY {
                json!("inf")
            } else if x == f64::NEG_INFINITY {
                json!("-inf")
            } else {
                json!(x)
            }
        }
        match self.kind() {
            Kind::Reals => json!({"kind": "reals"}),
            Kind::Lattice { step, offset } => json!({"kind": "lattice", "h": step, "offset": offset}),
            Kind::QLattice { ratio } => json!({"kind": "qlattice", "q": ratio}),
            Kind::Finite(points) => json!({"kind": "finite", "points": points}),
            Kind::Union(ivs) => json!({
                "kind": "union",
                "intervals": ivs.iter().map(|iv| json!([bound(iv.lo), bound(iv.hi)])).collect::<Vec<_>>(),
            }),
            Kind::Cantor { depth, .. } => json!({"kind": "cantor", "depth": depth}),
        }
    }
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(untagged)]
enum Bound {
    Num(f64),
    Text(String),
}

impl Bound {
    fn value(&self) -> Result<f64> {
        match self {
            Bound::Num(x) => Ok(*x),
            Bound::Text(s) => parse_num(s),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScaleFile {
    kind: String,
    h: Option<f64>,
    offset: Option<f64>,
    q: Option<f64>,
    points: Option<Vec<f64>>,
    intervals: Option<Vec<[Bound; 2]>>,
    depth: Option<u32>,
}

impl ScaleFile {
    fn build(self) -> Result<TimeScale> {
        let missing = |field: &str| bad(format!("kind {:?} requires field {field:?}", self.kind));
        match self.kind.as_str() {
            "reals" => Ok(TimeScale::reals()),
            "lattice" => TimeScale::lattice(self.h.ok_or_else(|| missing("h"))?, self.offset.unwrap_or(0.0)),
            "qlattice" => TimeScale::qlattice(self.q.ok_or_else(|| missing("q"))?),
            "finite" => TimeScale::finite(self.points.clone().ok_or_else(|| missing("points"))?),
            "union" => {
                let raw = self.intervals.as_ref().ok_or_else(|| missing("intervals"))?;
                let intervals = raw
                    .iter()
                    .map(|[a, b]| Ok(Interval::new(a.value()?, b.value()?)))
                    .collect::<Result<Vec<_>>>()?;
                TimeScale::union(intervals)
            }
            "cantor" => TimeScale::cantor(self.depth.ok_or_else(|| missing("depth"))?),
            other => Err(bad(format!("unknown scale kind {other:?}"))),
        }
    }
}
