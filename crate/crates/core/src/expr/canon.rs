//! Canonical form.
//!
//! Sums and products are flattened into left-leaning chains with the
//! constant first and the remaining operands sorted by
//! [`Expr::canonical_cmp`]. `Sub` never survives. Equal product bases merge
//! into one `PowInt` when the combined exponent stays within bounds.
//! `ln` of a constant is left symbolic so `exp(ln(k)*t)` keeps its shape.

use super::{Expr, Func, MAX_EXPONENT};

pub fn canonicalize(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) | Expr::Var => e.clone(),
        Expr::Add(..) | Expr::Sub(..) => canon_sum(e),
        Expr::Mul(..) => canon_product(e),
        Expr::Div(a, b) => canon_div(canonicalize(a), canonicalize(b)),
        Expr::PowInt(a, n) => canon_pow(canonicalize(a), *n),
        Expr::ConstPow(k, a) => {
            let a = canonicalize(a);
            match a.const_value().map(|v| k.powf(v)) {
                Some(v) if v.is_finite() => Expr::Const(v),
                _ => Expr::ConstPow(*k, Box::new(a)),
            }
        }
        Expr::Call(f, a) => match canonicalize(a) {
            Expr::Const(v) if *f != Func::Ln && f.apply(v).is_finite() => Expr::Const(f.apply(v)),
            a => Expr::Call(*f, Box::new(a)),
        },
    }
}

fn collect_terms(e: &Expr, negative: bool, out: &mut Vec<Expr>) {
    match e {
        Expr::Add(a, b) => {
            collect_terms(a, negative, out);
            collect_terms(b, negative, out);
        }
        Expr::Sub(a, b) => {
            collect_terms(a, negative, out);
            collect_terms(b, !negative, out);
        }
        leaf => {
            let term = if negative {
                canonicalize(&Expr::mul(Expr::Const(-1.0), leaf.clone()))
            } else {
                canonicalize(leaf)
            };
            match term {
                Expr::Add(..) => flatten_add(term, out),
                other => out.push(other),
            }
        }
    }
}

/// Splits an already canonical sum into its terms.
fn flatten_add(e: Expr, out: &mut Vec<Expr>) {
    match e {
        Expr::Add(a, b) => {
            flatten_add(*a, out);
            out.push(*b);
        }
        other => out.push(other),
    }
}

fn canon_sum(e: &Expr) -> Expr {
    let mut terms = Vec::new();
    collect_terms(e, false, &mut terms);
    let mut constant = 0.0;
    let mut rest = Vec::with_capacity(terms.len());
    for t in terms {
        match t {
            Expr::Const(v) => constant += v,
            other => rest.push(other),
        }
    }
    rest.sort_by(Expr::canonical_cmp);
    if constant != 0.0 || rest.is_empty() {
        rest.insert(0, Expr::Const(constant));
    }
    chain(rest, Expr::add)
}

fn collect_factors(e: &Expr, out: &mut Vec<Expr>) {
    match e {
        Expr::Mul(a, b) => {
            collect_factors(a, out);
            collect_factors(b, out);
        }
        leaf => match canonicalize(leaf) {
            f @ Expr::Mul(..) => flatten_mul(f, out),
            other => out.push(other),
        },
    }
}

fn flatten_mul(e: Expr, out: &mut Vec<Expr>) {
    match e {
        Expr::Mul(a, b) => {
            flatten_mul(*a, out);
            out.push(*b);
        }
        other => out.push(other),
    }
}

fn split_power(e: Expr) -> (Expr, i32) {
    match e {
        Expr::PowInt(base, n) => (*base, n),
        other => (other, 1),
    }
}

fn canon_product(e: &Expr) -> Expr {
    let mut factors = Vec::new();
    collect_factors(e, &mut factors);
    let mut constant = 1.0;
    // Base with the exponents of every factor sharing it.
    let mut groups: Vec<(Expr, Vec<i32>)> = Vec::new();
    for f in factors {
        if let Expr::Const(v) = f {
            constant *= v;
            continue;
        }
        let (base, n) = split_power(f);
        match groups.iter_mut().find(|(b, _)| *b == base) {
            Some((_, ns)) => ns.push(n),
            None => groups.push((base, vec![n])),
        }
    }
    if constant == 0.0 {
        return Expr::Const(0.0);
    }
    let mut rest = Vec::new();
    for (base, ns) in groups {
        let total: i64 = ns.iter().map(|&n| n as i64).sum();
        if total.abs() <= MAX_EXPONENT as i64 {
            match total {
                0 => {}
                1 => rest.push(base),
                n => rest.push(Expr::pow(base, n as i32)),
            }
        } else {
            rest.extend(ns.into_iter().map(|n| if n == 1 { base.clone() } else { Expr::pow(base.clone(), n) }));
        }
    }
    rest.sort_by(Expr::canonical_cmp);
    if constant != 1.0 || rest.is_empty() {
        rest.insert(0, Expr::Const(constant));
    }
    chain(rest, Expr::mul)
}

fn canon_div(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) if (x / y).is_finite() => Expr::Const(x / y),
        (a, Expr::Const(1.0)) => a,
        (Expr::Const(0.0), _) => Expr::Const(0.0),
        (a, b) => Expr::div(a, b),
    }
}

fn canon_pow(base: Expr, n: i32) -> Expr {
    match (base, n) {
        (_, 0) => Expr::Const(1.0),
        (b, 1) => b,
        (Expr::Const(v), n) if v.powi(n).is_finite() => Expr::Const(v.powi(n)),
        (Expr::PowInt(inner, m), n) if (m as i64 * n as i64).abs() <= MAX_EXPONENT as i64 => canon_pow(*inner, m * n),
        (b, n) => Expr::pow(b, n),
    }
}

fn chain(mut items: Vec<Expr>, join: fn(Expr, Expr) -> Expr) -> Expr {
    let rest = items.split_off(1);
    let first = items.pop().expect("chain of at least one operand");
    rest.into_iter().fold(first, join)
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn canon(s: &str) -> Expr {
        canonicalize(&parse(s).unwrap())
    }

    #[test]
    fn documented_examples() {
        assert_eq!(canon("t*t"), Expr::pow(Expr::Var, 2));
        assert_eq!(canon("2*3*t"), Expr::mul(Expr::Const(6.0), Expr::Var));
        assert_eq!(canon("exp(t)*t^2"), Expr::mul(Expr::pow(Expr::Var, 2), Expr::call(Func::Exp, Expr::Var)));
    }

    #[test]
    fn sums_fold_and_sort() {
        assert_eq!(canon("t + 1 + 2"), Expr::add(Expr::Const(3.0), Expr::Var));
        assert_eq!(canon("t - t + 0"), Expr::add(Expr::Var, Expr::mul(Expr::Const(-1.0), Expr::Var)));
        assert_eq!(canon("1 - 1"), Expr::Const(0.0));
        assert_eq!(canon("2*t + 3"), canon("3 + t*2"));
        assert_eq!(canon("(t + 1) + (t^2 + 2)"), canon("3 + t + t^2"));
    }

    #[test]
    fn products_merge_powers() {
        assert_eq!(canon("t^2*t^-2"), Expr::Const(1.0));
        assert_eq!(canon("(t^2)^3"), Expr::pow(Expr::Var, 6));
        assert_eq!(canon("t^40*t^30"), Expr::mul(Expr::pow(Expr::Var, 30), Expr::pow(Expr::Var, 40)));
        assert_eq!(canon("0*sin(t)"), Expr::Const(0.0));
        assert_eq!(canon("t/1"), Expr::Var);
    }

    #[test]
    fn ln_of_constant_stays_symbolic() {
        let e = canon("exp(t*ln(2))");
        assert_eq!(e, Expr::call(Func::Exp, Expr::mul(Expr::Var, Expr::call(Func::Ln, Expr::Const(2.0)))));
        assert_eq!(canon("sqrt(4)"), Expr::Const(2.0));
        assert_eq!(canon("2^3"), Expr::Const(8.0));
    }

    #[test]
    fn idempotent_on_examples() {
        for s in ["t^3*exp(2*t)", "-(t+1)*(t-1)", "t^40*t^30*t^-20", "1/(t+1) - 2/(1+t)", "sinh(2*t)*cosh(2*t)"] {
            let once = canon(s);
            assert_eq!(canonicalize(&once), once, "{s}");
        }
    }
}
