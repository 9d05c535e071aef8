mod common;

use common::test_scales;
use timescales::special::{cos_t, cosh_t, hyperbolic_defect, pythagorean_defect, sin_t, sinh_t};
use timescales::{delta_derivative, RealFunction, TimeScale};

#[test]
fn classical_functions_differentiate_to_time_scale_functions() {
    type Special = fn(&TimeScale, f64) -> timescales::Result<f64>;
    let neg_sin_t: Special = |ts, t| sin_t(ts, t).map(|v| -v);
    let cases: [(&str, RealFunction, Special); 4] = [
        ("sin", RealFunction::with_derivative(f64::sin, f64::cos), cos_t),
        ("cos", RealFunction::with_derivative(f64::cos, |t: f64| -t.sin()), neg_sin_t),
        ("sinh", RealFunction::with_derivative(f64::sinh, f64::cosh), cosh_t),
        ("cosh", RealFunction::with_derivative(f64::cosh, f64::sinh), sinh_t),
    ];
    for ts in test_scales() {
        for (name, f, special) in &cases {
            for t in ts.kappa_points() {
                // Beyond e^709 the hyperbolic functions overflow.
                if ts.scale.sigma(t).unwrap() > 700.0 {
                    continue;
                }
                let d = delta_derivative(&ts.scale, f, t).unwrap().value;
                let s = special(&ts.scale, t).unwrap();
                assert!((d - s).abs() <= 1e-12 * s.abs().max(1.0), "{name} on {} at {t}: {d} vs {s}", ts.name);
            }
        }
    }
}

#[test]
fn defect_identities_hold_on_reference_scales() {
    for ts in test_scales() {
        for t in ts.points().into_iter().filter(|t| t.abs() <= 5.0) {
            let p = pythagorean_defect(&ts.scale, t).unwrap();
            assert!(p.gap <= 1e-12 * p.rhs.abs().max(1.0), "pythagorean on {} at {t}: gap {}", ts.name, p.gap);
            let h = hyperbolic_defect(&ts.scale, t).unwrap();
            let bound = if t.abs() <= 1.0 { 1e-12 * h.rhs.abs().max(1.0) } else { 1e-9 };
            assert!(h.gap <= bound, "hyperbolic on {} at {t}: gap {}", ts.name, h.gap);
            assert!(h.within_tolerance() && p.within_tolerance());
            if ts.name == "R" {
                assert_eq!((p.rhs, h.rhs), (1.0, 1.0));
            }
        }
    }
}

#[test]
fn defect_right_hand_sides_depend_on_graininess_only() {
    let z = TimeScale::integers();
    let h = TimeScale::lattice(1.0, 0.25).unwrap();
    let q = TimeScale::qlattice(2.0).unwrap();
    let base = pythagorean_defect(&z, 0.0).unwrap().rhs;
    for t in [-7.0, 3.0, 40.0] {
        assert_eq!(pythagorean_defect(&z, t).unwrap().rhs, base);
        assert_eq!(hyperbolic_defect(&z, t).unwrap().rhs, hyperbolic_defect(&z, 0.0).unwrap().rhs);
    }
    assert_eq!(pythagorean_defect(&h, 2.25).unwrap().rhs, base);
    // On q:2 the point 1 has graininess 1.
    assert_eq!(pythagorean_defect(&q, 1.0).unwrap().rhs, base);
    assert_eq!(hyperbolic_defect(&q, 1.0).unwrap().rhs, hyperbolic_defect(&z, 5.0).unwrap().rhs);
}
