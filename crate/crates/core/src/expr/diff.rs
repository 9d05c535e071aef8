use super::{canonicalize, Expr, Func};

fn d(e: &Expr) -> Expr {
    use Expr::*;
    match e {
        Const(_) => Const(0.0),
        Var => Const(1.0),
        Add(a, b) => Expr::add(d(a), d(b)),
        Sub(a, b) => Expr::sub(d(a), d(b)),
        Mul(a, b) => Expr::add(Expr::mul(d(a), (**b).clone()), Expr::mul((**a).clone(), d(b))),
        Div(a, b) => Expr::div(
            Expr::sub(Expr::mul(d(a), (**b).clone()), Expr::mul((**a).clone(), d(b))),
            Expr::pow((**b).clone(), 2),
        ),
        PowInt(u, n) => Expr::mul(Expr::mul(Const(*n as f64), Expr::pow((**u).clone(), n - 1)), d(u)),
        ConstPow(k, u) => Expr::mul(Expr::mul(Expr::call(Func::Ln, Const(*k)), e.clone()), d(u)),
        Call(f, u) => {
            let u0 = (**u).clone();
            let outer = match f {
                Func::Sqrt => Expr::div(Const(1.0), Expr::mul(Const(2.0), e.clone())),
                Func::Ln => Expr::div(Const(1.0), u0),
                Func::Exp => e.clone(),
                Func::Sin => Expr::call(Func::Cos, u0),
                Func::Cos => Expr::mul(Const(-1.0), Expr::call(Func::Sin, u0)),
                Func::Sinh => Expr::call(Func::Cosh, u0),
                Func::Cosh => Expr::call(Func::Sinh, u0),
            };
            Expr::mul(outer, d(u))
        }
    }
}

/// Symbolic classical derivative `d e / d t`, canonicalized.
pub fn classical_diff(e: &Expr) -> Expr {
    canonicalize(&d(e))
}
