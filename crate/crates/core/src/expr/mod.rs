//! A small expression language over the variable `t`.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := '-' unary | power
//! power    := primary ('^' exponent)?
//! exponent := '-' exponent | power
//! primary  := number | 't' | func '(' expr ')' | '(' expr ')'
//! func     := sqrt | ln | exp | sin | cos | sinh | cosh
//! ```
//!
//! Exponents must be integers (`|n| <= 60`) unless the base is a positive
//! constant, which yields the exponential shape `k^t`.

use std::cmp::Ordering;
use std::fmt;

mod canon;
mod diff;
mod differentiate;
mod format;
mod matcher;
mod parse;

pub use canon::canonicalize;
pub use diff::classical_diff;
pub use differentiate::{differentiate, differentiate_nabla, Compiled, Differentiation, Provenance};
pub use format::format;
pub use matcher::{instantiate, match_catalog, MatchResult};
pub use parse::parse;

/// Largest `|n|` accepted in `e^n`.
pub const MAX_EXPONENT: i32 = 60;
/// Deepest tree accepted by the parser.
pub const MAX_DEPTH: usize = 64;
/// Longest input accepted by the parser, in bytes.
pub const MAX_INPUT_LEN: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Sqrt,
    Ln,
    Exp,
    Sin,
    Cos,
    Sinh,
    Cosh,
}

impl Func {
    pub const ALL: [Func; 7] = [Func::Sqrt, Func::Ln, Func::Exp, Func::Sin, Func::Cos, Func::Sinh, Func::Cosh];

    pub fn name(&self) -> &'static str {
        match self {
            Func::Sqrt => "sqrt",
            Func::Ln => "ln",
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn apply(&self, x: f64) -> f64 {
        match self {
            Func::Sqrt => x.sqrt(),
            Func::Ln => x.ln(),
            Func::Exp => x.exp(),
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Sinh => x.sinh(),
            Func::Cosh => x.cosh(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    PowInt(Box<Expr>, i32),
    /// `base^exponent` for a constant `base > 0`.
    ConstPow(f64, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Div(Box::new(a), Box::new(b))
    }

    pub fn pow(base: Expr, n: i32) -> Expr {
        Expr::PowInt(Box::new(base), n)
    }

    pub fn const_pow(base: f64, exponent: Expr) -> Expr {
        Expr::ConstPow(base, Box::new(exponent))
    }

    pub fn call(f: Func, arg: Expr) -> Expr {
        Expr::Call(f, Box::new(arg))
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Expr::Const(v) => *v,
            Expr::Var => t,
            Expr::Add(a, b) => a.eval(t) + b.eval(t),
            Expr::Sub(a, b) => a.eval(t) - b.eval(t),
            Expr::Mul(a, b) => a.eval(t) * b.eval(t),
            Expr::Div(a, b) => a.eval(t) / b.eval(t),
            Expr::PowInt(a, n) => a.eval(t).powi(*n),
            Expr::ConstPow(k, e) => k.powf(e.eval(t)),
            Expr::Call(f, a) => f.apply(a.eval(t)),
        }
    }

    /// Value of a `t`-free subtree.
    pub fn const_value(&self) -> Option<f64> {
        (!self.has_var()).then(|| self.eval(0.0))
    }

    pub fn has_var(&self) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var => true,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.has_var() || b.has_var(),
            Expr::PowInt(a, _) | Expr::ConstPow(_, a) | Expr::Call(_, a) => a.has_var(),
        }
    }

    pub fn depth(&self) -> usize {
        1 + match self {
            Expr::Const(_) | Expr::Var => 0,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.depth().max(b.depth()),
            Expr::PowInt(a, _) | Expr::ConstPow(_, a) | Expr::Call(_, a) => a.depth(),
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Expr::Const(_) => 0,
            Expr::Var => 1,
            Expr::PowInt(..) => 2,
            Expr::ConstPow(..) => 3,
            Expr::Add(..) => 4,
            Expr::Sub(..) => 5,
            Expr::Mul(..) => 6,
            Expr::Div(..) => 7,
            Expr::Call(..) => 8,
        }
    }

    /// Total order used to sort sum terms and product factors.
    pub fn canonical_cmp(&self, other: &Expr) -> Ordering {
        use Expr::*;
        match (self, other) {
            (Const(a), Const(b)) => a.total_cmp(b),
            (Var, Var) => Ordering::Equal,
            (PowInt(a, m), PowInt(b, n)) => a.canonical_cmp(b).then(m.cmp(n)),
            (ConstPow(k1, a), ConstPow(k2, b)) => k1.total_cmp(k2).then_with(|| a.canonical_cmp(b)),
            (Add(a1, b1), Add(a2, b2))
            | (Sub(a1, b1), Sub(a2, b2))
            | (Mul(a1, b1), Mul(a2, b2))
            | (Div(a1, b1), Div(a2, b2)) => a1.canonical_cmp(a2).then_with(|| b1.canonical_cmp(b2)),
            (Call(f, a), Call(g, b)) => f.cmp(g).then_with(|| a.canonical_cmp(b)),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(self))
    }
}
