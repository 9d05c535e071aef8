//! Recognition of catalog entries in canonical trees.

use super::{canonicalize, Expr, Func};
use crate::catalog::{EntryId, Params};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchResult {
    pub id: EntryId,
    pub params: Params,
}

/// `t` or `t^n` with `n >= 1`.
fn monomial(e: &Expr) -> Option<u32> {
    match e {
        Expr::Var => Some(1),
        Expr::PowInt(b, n) if **b == Expr::Var && *n >= 1 => Some(*n as u32),
        _ => None,
    }
}

/// `t` or `k*t`; returns `k`.
fn scaled(e: &Expr) -> Option<f64> {
    match e {
        Expr::Var => Some(1.0),
        Expr::Mul(a, b) if **b == Expr::Var => match **a {
            Expr::Const(k) => Some(k),
            _ => None,
        },
        _ => None,
    }
}

/// `a*t + b` in canonical shape; returns `(a, b)`.
fn linear(e: &Expr) -> Option<(f64, f64)> {
    if let Some(a) = scaled(e) {
        return Some((a, 0.0));
    }
    match e {
        Expr::Add(c, rest) => match **c {
            Expr::Const(b) => scaled(rest).map(|a| (a, b)),
            _ => None,
        },
        _ => None,
    }
}

fn call(e: &Expr, f: Func) -> Option<&Expr> {
    match e {
        Expr::Call(g, arg) if *g == f => Some(arg),
        _ => None,
    }
}

fn product(e: &Expr) -> Option<(&Expr, &Expr)> {
    match e {
        Expr::Mul(a, b) => Some((a, b)),
        _ => None,
    }
}

fn p(k: Option<f64>, c: Option<f64>, n: Option<u32>) -> Params {
    Params { k, c, n }
}

/// Templates in priority order.
fn candidates(e: &Expr) -> Option<MatchResult> {
    use EntryId::*;
    let hit = |id, params| Some(MatchResult { id, params });

    if let Expr::Const(k) = e {
        return hit(B01, Params::with_k(*k));
    }
    if let Some(n) = monomial(e) {
        return hit(B02, Params::with_n(n));
    }
    if let Expr::ConstPow(k, x) = e {
        if **x == Expr::Var {
            return hit(B03, Params::with_k(*k));
        }
    }
    if let Some((x, ln_k)) = call(e, Func::Exp).and_then(product) {
        if let (Expr::Var, Some(Expr::Const(k))) = (x, call(ln_k, Func::Ln)) {
            return hit(B03, Params::with_k(*k));
        }
    }
    if let Expr::PowInt(base, n) = e {
        if let Expr::Add(c, x) = &**base {
            if let (Expr::Const(k), Expr::Var, true) = (&**c, &**x, *n >= 1) {
                return hit(B04, p(Some(*k), None, Some(*n as u32)));
            }
        }
    }
    if let Some(arg) = call(e, Func::Sqrt) {
        if *arg == Expr::Var {
            return hit(R01, Params::default());
        }
        if let Some(n) = monomial(arg) {
            return hit(R02, p(Some(0.0), None, Some(n)));
        }
        if let Expr::Add(c, x) = arg {
            if let (Expr::Const(k), Some(n)) = (&**c, monomial(x)) {
                return hit(R02, p(Some(*k), None, Some(n)));
            }
        }
    }
    if let Some((m, s)) = product(e) {
        if let (Some(n), Some((c, k))) = (monomial(m), call(s, Func::Sqrt).and_then(linear)) {
            return hit(R03, p(Some(k), Some(c), Some(n)));
        }
    }
    if let Some(arg) = call(e, Func::Ln) {
        if let Some(n) = monomial(arg) {
            return hit(L01, Params::with_n(n));
        }
        if let Some((k, c)) = linear(arg) {
            return hit(L02, p(Some(k), Some(c), None));
        }
    }
    if let Some(k) = call(e, Func::Exp).and_then(scaled) {
        return hit(E01, Params::with_k(k));
    }
    if let Some((m, x)) = product(e) {
        if let (Some(n), Some(k)) = (monomial(m), call(x, Func::Exp).and_then(scaled)) {
            return hit(E02, p(Some(k), None, Some(n)));
        }
    }
    if call(e, Func::Sin) == Some(&Expr::Var) {
        return hit(T01, Params::default());
    }
    if call(e, Func::Cos) == Some(&Expr::Var) {
        return hit(T02, Params::default());
    }
    if let Some((Expr::Var, x)) = product(e) {
        if let Some(k) = call(x, Func::Sin).and_then(scaled) {
            return hit(TM01, Params::with_k(k));
        }
        if let Some(k) = call(x, Func::Cos).and_then(scaled) {
            return hit(TM02, Params::with_k(k));
        }
    }
    if let Some((x, y)) = product(e) {
        if let Some(k) = call(x, Func::Exp).and_then(scaled) {
            if let Some(c) = call(y, Func::Sin).and_then(scaled) {
                return hit(TE01, p(Some(k), Some(c), None));
            }
            if let Some(c) = call(y, Func::Cos).and_then(scaled) {
                return hit(TE02, p(Some(k), Some(c), None));
            }
        }
        let pair = (call(x, Func::Sinh).and_then(scaled), call(y, Func::Cosh).and_then(scaled));
        if let (Some(k1), Some(k2)) = pair {
            if k1 == k2 {
                return hit(H03, Params::with_k(k1));
            }
        }
    }
    if let Some(k) = call(e, Func::Sinh).and_then(scaled) {
        return hit(H01, Params::with_k(k));
    }
    if let Some(k) = call(e, Func::Cosh).and_then(scaled) {
        return hit(H02, Params::with_k(k));
    }
    None
}

/// Matches a canonical tree against the catalog; bindings that violate the
/// entry's parameter constraints do not match.
pub fn match_catalog(e: &Expr) -> Option<MatchResult> {
    let m = candidates(e)?;
    m.id.entry().value(&m.params, 0.0).ok().map(|_| m)
}

fn lin(a: f64, b: f64) -> Expr {
    Expr::add(Expr::Const(b), Expr::mul(Expr::Const(a), Expr::Var))
}

fn kt(k: f64) -> Expr {
    Expr::mul(Expr::Const(k), Expr::Var)
}

/// The entry's function with parameters substituted, canonicalized.
pub fn instantiate(id: EntryId, params: &Params) -> Expr {
    use EntryId::*;
    let k = params.k.unwrap_or(0.0);
    let c = params.c.unwrap_or(0.0);
    let n = params.n.unwrap_or(1) as i32;
    let tn = || Expr::pow(Expr::Var, n);
    let f = |func, arg| Expr::call(func, arg);
    let e = match id {
        B01 => Expr::Const(k),
        B02 => tn(),
        B03 => Expr::const_pow(k, Expr::Var),
        B04 => Expr::pow(Expr::add(Expr::Const(k), Expr::Var), n),
        R01 => f(Func::Sqrt, Expr::Var),
        R02 => f(Func::Sqrt, Expr::add(Expr::Const(k), tn())),
        R03 => Expr::mul(tn(), f(Func::Sqrt, lin(c, k))),
        L01 => f(Func::Ln, tn()),
        L02 => f(Func::Ln, lin(k, c)),
        E01 => f(Func::Exp, kt(k)),
        E02 => Expr::mul(tn(), f(Func::Exp, kt(k))),
        T01 => f(Func::Sin, Expr::Var),
        T02 => f(Func::Cos, Expr::Var),
        TM01 => Expr::mul(Expr::Var, f(Func::Sin, kt(k))),
        TM02 => Expr::mul(Expr::Var, f(Func::Cos, kt(k))),
        TE01 => Expr::mul(f(Func::Exp, kt(k)), f(Func::Sin, kt(c))),
        TE02 => Expr::mul(f(Func::Exp, kt(k)), f(Func::Cos, kt(c))),
        H01 => f(Func::Sinh, kt(k)),
        H02 => f(Func::Cosh, kt(k)),
        H03 => Expr::mul(f(Func::Sinh, kt(k)), f(Func::Cosh, kt(k))),
    };
    canonicalize(&e)
}
