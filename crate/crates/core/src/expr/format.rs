use super::Expr;

const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const NEGATIVE: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => SUM,
        Expr::Mul(..) | Expr::Div(..) => PRODUCT,
        Expr::Const(v) if v.is_sign_negative() && *v != 0.0 => NEGATIVE,
        Expr::PowInt(..) | Expr::ConstPow(..) => POWER,
        Expr::Const(_) | Expr::Var | Expr::Call(..) => ATOM,
    }
}

fn number(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v:?}")
    }
}

fn wrapped(e: &Expr, paren: bool, out: &mut String) {
    if paren {
        out.push('(');
        write(e, out);
        out.push(')');
    } else {
        write(e, out);
    }
}

fn write(e: &Expr, out: &mut String) {
    match e {
        Expr::Const(v) => out.push_str(&number(*v)),
        Expr::Var => out.push('t'),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            let (level, op) = match e {
                Expr::Add(..) => (SUM, " + "),
                Expr::Sub(..) => (SUM, " - "),
                Expr::Mul(..) => (PRODUCT, "*"),
                _ => (PRODUCT, "/"),
            };
            wrapped(a, precedence(a) < level, out);
            out.push_str(op);
            // Both operators are left-associative.
            wrapped(b, precedence(b) <= level, out);
        }
        Expr::PowInt(base, n) => {
            wrapped(base, precedence(base) <= POWER, out);
            out.push('^');
            out.push_str(&n.to_string());
        }
        Expr::ConstPow(k, exponent) => {
            out.push_str(&number(*k));
            out.push('^');
            wrapped(exponent, precedence(exponent) < POWER, out);
        }
        Expr::Call(f, arg) => {
            out.push_str(f.name());
            wrapped(arg, true, out);
        }
    }
}

/// Prints `e` with the fewest parentheses that parse back to the same tree.
pub fn format(e: &Expr) -> String {
    let mut out = String::new();
    write(e, &mut out);
    out
}
