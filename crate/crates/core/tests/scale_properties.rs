use proptest::prelude::*;
use timescales::{Interval, Kind, TimeScale};

fn scales() -> impl Strategy<Value = TimeScale> {
    prop_oneof![
        Just(TimeScale::reals()),
        (0.05f64..3.0, -1.0f64..1.0).prop_map(|(h, o)| TimeScale::lattice(h, o).unwrap()),
        (1.1f64..4.0).prop_map(|q| TimeScale::qlattice(q).unwrap()),
        prop::collection::btree_set(-1000i32..1000, 1..20)
            .prop_map(|s| TimeScale::finite(s.into_iter().map(|i| i as f64 * 0.01)).unwrap()),
        prop::collection::vec((-10.0f64..10.0, 0.0f64..2.0), 1..6).prop_map(|v| {
            TimeScale::union(v.into_iter().map(|(lo, w)| if w < 0.5 { Interval::point(lo) } else { Interval::new(lo, lo + w) }))
                .unwrap()
        }),
        (0u32..7).prop_map(|d| TimeScale::cantor(d).unwrap()),
    ]
}

/// Sample points from the first ten units of `ts`, starting at its infimum
/// when bounded below and at `-5` otherwise.
fn points(ts: &TimeScale) -> Vec<f64> {
    let lo = ts.inf().filter(|x| x.is_finite()).unwrap_or(-5.0);
    let hi = ts.sup().filter(|x| x.is_finite()).unwrap_or(f64::INFINITY).min(lo + 10.0);
    ts.sample(lo, hi, 0.37).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn jump_operators_are_monotone_and_closed(ts in scales()) {
        for t in points(&ts) {
            prop_assert!(ts.contains(t), "{ts}: sampled {t} not contained");
            let (s, r) = (ts.sigma(t).unwrap(), ts.rho(t).unwrap());
            prop_assert!(s >= t && r <= t);
            prop_assert!(ts.mu(t).unwrap() >= 0.0 && ts.nu(t).unwrap() >= 0.0);
            prop_assert!(ts.contains(s) && ts.contains(r), "{ts}: jumps of {t} left the scale");
        }
    }

    #[test]
    fn backward_jump_inverts_forward_jump(ts in scales()) {
        for t in points(&ts) {
            let s = ts.sigma(t).unwrap();
            if s > t {
                let back = ts.rho(s).unwrap();
                prop_assert!((back - t).abs() <= 1e-9 * t.abs().max(1.0), "{ts}: rho(sigma({t})) = {back}");
            }
        }
    }

    #[test]
    fn classification_matches_graininess(ts in scales()) {
        for t in points(&ts) {
            let c = ts.classify(t).unwrap();
            prop_assert_eq!(c.right_scattered, ts.mu(t).unwrap() > 0.0);
            prop_assert_eq!(c.left_scattered, ts.nu(t).unwrap() > 0.0);
        }
    }

    #[test]
    fn lattices_have_constant_graininess(h in 0.01f64..5.0, offset in -3.0f64..3.0, i in -1000i64..1000) {
        let ts = TimeScale::lattice(h, offset).unwrap();
        let t = offset + i as f64 * h;
        prop_assert!((ts.mu(t).unwrap() - h).abs() <= 1e-9 * t.abs().max(1.0));
        prop_assert!((ts.nu(t).unwrap() - h).abs() <= 1e-9 * t.abs().max(1.0));
    }

    #[test]
    fn q_lattice_closed_forms(q in 1.05f64..5.0, k in 1i32..40) {
        let ts = TimeScale::qlattice(q).unwrap();
        let t = q.powi(k);
        prop_assert_eq!(ts.sigma(t).unwrap(), q * t);
        prop_assert_eq!(ts.mu(t).unwrap(), (q - 1.0) * t);
        prop_assert!((ts.rho(t).unwrap() - t / q).abs() <= 1e-12 * t);
        prop_assert!((ts.nu(t).unwrap() - (1.0 - 1.0 / q) * t).abs() <= 1e-12 * t);
    }

    #[test]
    fn reals_are_dense_everywhere(t in -1e6f64..1e6) {
        let r = TimeScale::reals();
        prop_assert_eq!(r.sigma(t).unwrap(), t);
        prop_assert_eq!(r.rho(t).unwrap(), t);
        prop_assert_eq!((r.mu(t).unwrap(), r.nu(t).unwrap()), (0.0, 0.0));
    }

    #[test]
    fn compact_strings_round_trip(ts in scales()) {
        let again = TimeScale::parse(&ts.to_string()).unwrap();
        prop_assert_eq!(again.to_string(), ts.to_string());
        let json = TimeScale::from_json(&ts.to_json().to_string()).unwrap();
        prop_assert_eq!(json.to_string(), ts.to_string());
    }
}

#[test]
fn cantor_normalization() {
    for d in 0..=10u32 {
        let ts = TimeScale::cantor(d).unwrap();
        let Kind::Cantor { intervals, .. } = ts.kind() else { panic!("not a Cantor kind") };
        assert_eq!(intervals.len(), 1 << d);
        let measure: f64 = intervals.iter().map(|iv| iv.width()).sum();
        assert!((measure - (2.0f64 / 3.0).powi(d as i32)).abs() < 1e-12);
        let scale = 3f64.powi(d as i32);
        for iv in intervals {
            for x in [iv.lo, iv.hi] {
                assert!((x * scale - (x * scale).round()).abs() < 1e-6, "{x} is not a triadic rational of depth {d}");
            }
        }
    }
}

#[test]
fn point_taxonomy_on_reference_scales() {
    let h = TimeScale::lattice(0.5, 0.0).unwrap();
    let q = TimeScale::qlattice(2.0).unwrap();
    for i in -10..10 {
        let t = i as f64 * 0.5;
        assert_eq!((h.sigma(t).unwrap(), h.rho(t).unwrap()), (t + 0.5, t - 0.5));
        assert_eq!((h.mu(t).unwrap(), h.nu(t).unwrap()), (0.5, 0.5));
    }
    for k in 1..=20 {
        let t = 2f64.powi(k);
        assert_eq!(q.sigma(t).unwrap(), 2.0 * t);
        assert_eq!(q.rho(t).unwrap(), 0.5 * t);
        assert_eq!(q.mu(t).unwrap(), t);
        assert_eq!(q.nu(t).unwrap(), 0.5 * t);
    }
    assert_eq!((q.rho(1.0).unwrap(), q.nu(1.0).unwrap()), (1.0, 0.0));
}
