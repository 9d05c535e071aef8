mod common;

use common::{params, rel, test_scales};
use proptest::prelude::*;
use timescales::catalog::EntryId;
use timescales::engine::limit_threshold;
use timescales::special::{cos_t_at, sin_t_at};
use timescales::{cross_check, delta_derivative, eval_delta, Params};

#[test]
fn closed_form_matches_quotient_and_quadrature_on_reference_scales() {
    let p = params();
    for ts in test_scales() {
        for id in EntryId::ALL {
            let points = ts.admissible(id, &p);
            assert!(points.len() >= 10, "{id} on {}: only {} admissible points", ts.name, points.len());
            for t in points {
                let c = cross_check(id, &p, &ts.scale, t).unwrap();
                let scale = c.closed_form.abs().max(1.0);
                assert!(
                    (c.closed_form - c.difference_quotient).abs() <= 1e-10 * scale,
                    "{id} on {} at {t}: closed {} vs quotient {}",
                    ts.name,
                    c.closed_form,
                    c.difference_quotient
                );
                assert!(
                    (c.closed_form - c.quadrature).abs() <= 1e-8 * scale,
                    "{id} on {} at {t}: closed {} vs quadrature {}",
                    ts.name,
                    c.closed_form,
                    c.quadrature
                );
            }
        }
    }
}

/// The delta derivative at graininess `μ` is `f' + μ f''/2 + O(μ^2)`; the
/// stable forms must track that model with no cancellation blow-up down to
/// `μ = 1e-12`.
#[test]
fn graininess_sweep_converges_to_classical_derivative() {
    let p = params();
    for id in EntryId::ALL {
        let entry = id.entry();
        for t in [0.5, 1.0, 2.5] {
            let exact = entry.classical_derivative(&p, t).unwrap();
            let h = 1e-5;
            let curvature = (entry.classical_derivative(&p, t + h).unwrap()
                - entry.classical_derivative(&p, t - h).unwrap())
                / (2.0 * h);
            let mut previous = f64::INFINITY;
            for m in 1..=12 {
                let mu = 10f64.powi(-m);
                let v = eval_delta(id, &p, t, mu).unwrap();
                assert!(v.is_finite(), "{id} at t = {t}, mu = {mu}");
                let err = rel(v, exact);
                if mu <= limit_threshold(t) {
                    assert_eq!(v, exact, "{id} at t = {t}: the limit branch is exact");
                } else if m >= 6 {
                    let model = exact + 0.5 * mu * curvature;
                    assert!(rel(v, model) <= 1e-9, "{id} at t = {t}, mu = {mu}: {v} vs model {model}");
                }
                if m >= 6 {
                    assert!(err <= previous + 1e-12, "{id} at t = {t}: error rose to {err} at mu = {mu}");
                }
                previous = err;
            }
            assert!(previous <= 1e-10, "{id} at t = {t}: error {previous} at mu = 1e-12");
        }
    }
}

#[test]
fn limits_at_zero_graininess() {
    let v = eval_delta(EntryId::B03, &Params::with_k(2.0), 3.0, 0.0).unwrap();
    assert_eq!(v, 8.0 * 2f64.ln());
    assert_eq!(eval_delta(EntryId::R01, &Params::default(), 4.0, 0.0).unwrap(), 0.25);
    for (id, p, t, exact) in [(EntryId::B03, Params::with_k(2.0), 3.0, v), (EntryId::R01, Params::default(), 4.0, 0.25)] {
        for m in 6..=12 {
            let d = eval_delta(id, &p, t, 10f64.powi(-m)).unwrap();
            assert!(rel(d, exact) <= 1e-6, "{id} at mu = 1e-{m}: {d}");
        }
    }
}

#[test]
fn delta_derivative_of_entry_functions_matches_table_on_integers() {
    let z = timescales::TimeScale::integers();
    let p = params();
    for id in EntryId::ALL {
        let f = id.entry().real_function(&p).unwrap();
        for t in [1.0, 2.0, 3.0] {
            let a = delta_derivative(&z, &f, t).unwrap().value;
            let b = eval_delta(id, &p, t, 1.0).unwrap();
            assert!(rel(a, b) <= 1e-12, "{id} at {t}: {a} vs {b}");
        }
    }
}

proptest! {
    #[test]
    fn shifted_power_with_zero_shift_is_a_power(t in -5.0f64..5.0, mu in 0.0f64..3.0, n in 1u32..=12) {
        let a = eval_delta(EntryId::B04, &Params { k: Some(0.0), n: Some(n), c: None }, t, mu).unwrap();
        let b = eval_delta(EntryId::B02, &Params::with_n(n), t, mu).unwrap();
        prop_assert!(rel(a, b) <= 1e-12, "{a} vs {b}");
    }

    #[test]
    fn hyperbolic_entries_have_parity_in_k(t in -3.0f64..3.0, mu in 0.0f64..2.0, k in -2.0f64..2.0) {
        let at = |id, k: f64| eval_delta(id, &Params::with_k(k), t, mu).unwrap();
        let (sinh_k, sinh_neg) = (at(EntryId::H01, k), at(EntryId::H01, -k));
        let (cosh_k, cosh_neg) = (at(EntryId::H02, k), at(EntryId::H02, -k));
        prop_assert!((sinh_k + sinh_neg).abs() <= 1e-12 * sinh_k.abs().max(1.0), "{sinh_k} vs {sinh_neg}");
        prop_assert!((cosh_k - cosh_neg).abs() <= 1e-12 * cosh_k.abs().max(1.0), "{cosh_k} vs {cosh_neg}");
    }

    #[test]
    fn trig_entries_are_the_time_scale_functions(t in -5.0f64..5.0, mu in 0.0f64..3.0) {
        let none = Params::default();
        let sin_d = eval_delta(EntryId::T01, &none, t, mu).unwrap();
        let cos_d = eval_delta(EntryId::T02, &none, t, mu).unwrap();
        prop_assert!((sin_d - cos_t_at(t, mu)).abs() <= 1e-12 * sin_d.abs().max(1.0));
        prop_assert!((cos_d + sin_t_at(t, mu)).abs() <= 1e-12 * cos_d.abs().max(1.0));
    }
}
