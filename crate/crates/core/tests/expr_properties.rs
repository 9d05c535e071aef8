mod common;

use common::rel;
use proptest::prelude::*;
use timescales::expr::{canonicalize, classical_diff, format, instantiate, match_catalog, parse, Compiled, Expr, Func};
use timescales::{Direction, EntryId, Params, TimeScale};

fn constant() -> impl Strategy<Value = f64> {
    prop_oneof![(-12i32..=12).prop_map(|i| i as f64 * 0.25), -1e3f64..1e3]
}

fn func() -> impl Strategy<Value = Func> {
    prop::sample::select(Func::ALL.to_vec())
}

fn any_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![Just(Expr::Var), constant().prop_map(Expr::Const)];
    leaf.prop_recursive(4, 40, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::sub(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::mul(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::div(a, b)),
            (inner.clone(), -4i32..=4).prop_map(|(a, n)| Expr::pow(a, n)),
            (0.1f64..5.0, inner.clone()).prop_map(|(k, a)| Expr::const_pow(k, a)),
            (func(), inner).prop_map(|(f, a)| Expr::call(f, a)),
        ]
    })
}

fn divides_by_zero(e: &Expr) -> bool {
    match e {
        Expr::Const(_) | Expr::Var => false,
        Expr::Div(a, b) => b.const_value() == Some(0.0) || divides_by_zero(a) || divides_by_zero(b),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => divides_by_zero(a) || divides_by_zero(b),
        Expr::PowInt(a, _) | Expr::ConstPow(_, a) | Expr::Call(_, a) => divides_by_zero(a),
    }
}

/// `1 + x^2`, positive for every real `x`.
fn positive(x: Expr) -> Expr {
    Expr::add(Expr::Const(1.0), Expr::pow(x, 2))
}

/// Expressions that are smooth for every real `t`.
fn smooth_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![Just(Expr::Var), (-3.0f64..3.0).prop_map(Expr::Const)];
    leaf.prop_recursive(3, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::sub(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::mul(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::div(a, positive(b))),
            (inner.clone(), 0i32..=3).prop_map(|(a, n)| Expr::pow(a, n)),
            (0.5f64..3.0, inner.clone()).prop_map(|(k, a)| Expr::const_pow(k, a)),
            inner.clone().prop_map(|a| Expr::call(Func::Sqrt, positive(a))),
            inner.clone().prop_map(|a| Expr::call(Func::Ln, positive(a))),
            (prop::sample::select(vec![Func::Exp, Func::Sin, Func::Cos, Func::Sinh, Func::Cosh]), inner)
                .prop_map(|(f, a)| Expr::call(f, a)),
        ]
    })
}

/// Central difference with one Richardson step: error `O(h^4)`.
fn numeric_derivative(e: &Expr, t: f64) -> f64 {
    let central = |h: f64| (e.eval(t + h) - e.eval(t - h)) / (2.0 * h);
    let h = 1e-3;
    (4.0 * central(0.5 * h) - central(h)) / 3.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn canonical_trees_round_trip_through_text(e in any_expr()) {
        let c = canonicalize(&e);
        prop_assume!(!divides_by_zero(&c));
        prop_assert_eq!(&canonicalize(&c), &c, "canonicalize is not idempotent");
        let text = format(&c);
        let reparsed = parse(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(canonicalize(&reparsed), c, "{}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn symbolic_derivative_matches_central_differences(e in smooth_expr(), t in 0.5f64..2.0) {
        let c = canonicalize(&e);
        let values = [t - 1e-3, t, t + 1e-3].map(|x| c.eval(x));
        prop_assume!(values.iter().all(|v| v.is_finite() && v.abs() < 1e4));
        let symbolic = classical_diff(&c).eval(t);
        let numeric = numeric_derivative(&c, t);
        prop_assume!(symbolic.is_finite() && symbolic.abs() < 1e6);
        prop_assert!(rel(numeric, symbolic) <= 1e-6, "{}: symbolic {} vs numeric {}", format(&c), symbolic, numeric);
    }

    #[test]
    fn catalog_route_agrees_with_difference_quotient(
        id in prop::sample::select(EntryId::ALL.to_vec()),
        k in -1.5f64..1.5,
        c in -1.5f64..1.5,
        n in 1u32..=5,
    ) {
        let params = if id == EntryId::B03 { Params::new(k.abs() + 0.1, c, n) } else { Params::new(k, c, n) };
        let compiled = Compiled::new(&instantiate(id, &params));
        prop_assume!(compiled.matched.is_some());
        let scales = [("Z", (-6.0, 6.0)), ("hZ:0.5", (-3.0, 3.0)), ("q:2", (1.0, 64.0)), ("union:[0,1]+{2}+[3,4]", (0.0, 4.0))];
        for (spec, (a, b)) in scales {
            let ts = TimeScale::parse(spec).unwrap();
            for t in ts.sample(a, b, 0.25).unwrap() {
                if !(ts.in_kappa(t).unwrap() && ts.mu(t).unwrap() > 0.0) {
                    continue;
                }
                let Ok(catalog) = compiled.delta(&ts, t) else { continue };
                let quotient = compiled.quotient(&ts, t, Direction::Delta).unwrap();
                prop_assert!(
                    rel(catalog.report.value, quotient.value) <= 1e-10,
                    "{} on {} at {}: {} vs {}", format(&compiled.expr), spec, t, catalog.report.value, quotient.value
                );
            }
        }
    }

    #[test]
    fn instantiated_templates_match_back(
        id in prop::sample::select(EntryId::ALL.to_vec()),
        k in 0.25f64..3.0,
        c in 0.25f64..3.0,
        n in 2u32..=6,
    ) {
        // Distinct k and c keep the two-parameter shapes apart.
        prop_assume!((k - c).abs() > 1e-3 && k != 1.0 && c != 1.0);
        let params = Params::new(k, c, n);
        let e = instantiate(id, &params);
        let m = match_catalog(&e).unwrap();
        prop_assert_eq!(m.id, id);
        prop_assert_eq!(instantiate(m.id, &m.params), e);
    }
}

#[test]
fn representative_expressions_match_their_entries() {
    let cases = [
        ("2", EntryId::B01),
        ("t^3", EntryId::B02),
        ("2^t", EntryId::B03),
        ("(t + 2)^3", EntryId::B04),
        ("sqrt(t)", EntryId::R01),
        ("sqrt(2 + t^3)", EntryId::R02),
        ("t^3*sqrt(2 + 3*t)", EntryId::R03),
        ("ln(t^3)", EntryId::L01),
        ("ln(2*t + 3)", EntryId::L02),
        ("exp(2*t)", EntryId::E01),
        ("t^3*exp(2*t)", EntryId::E02),
        ("sin(t)", EntryId::T01),
        ("cos(t)", EntryId::T02),
        ("t*sin(2*t)", EntryId::TM01),
        ("t*cos(2*t)", EntryId::TM02),
        ("exp(2*t)*sin(3*t)", EntryId::TE01),
        ("exp(2*t)*cos(3*t)", EntryId::TE02),
        ("sinh(2*t)", EntryId::H01),
        ("cosh(2*t)", EntryId::H02),
        ("sinh(2*t)*cosh(2*t)", EntryId::H03),
    ];
    for (text, id) in cases {
        let m = match_catalog(&canonicalize(&parse(text).unwrap()));
        assert_eq!(m.map(|m| m.id), Some(id), "{text}");
    }
}
