use loewner::curve::JordanCurve;
use loewner::energy::{chordal_energy, dirichlet_energy, energy_report, loop_energy_via_chord, ReportCurve, ReportParams, Route};
use loewner::grunsky::energy_via_grunsky_curve;
use loewner::liouville::{liouville_energy, MapMethod};
use loewner::{solve_forward, DrivingFunction, HalfPlaneTrace};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn linear_chord() -> HalfPlaneTrace {
    solve_forward(&DrivingFunction::linear(1.0, 1.0).unwrap(), 400).unwrap()
}

#[test]
fn chordal_energy_of_the_vertical_segment_vanishes() {
    let pts: Vec<_> = (0..400).map(|k| c(0.0, 2.0 * (k as f64 / 399.0).sqrt())).collect();
    let e = chordal_energy(&HalfPlaneTrace::new(pts, None).unwrap()).unwrap();
    assert!(e.abs() < 1e-3, "{e}");
}

#[test]
fn chordal_energy_recovers_the_driving_energy() {
    let chord = linear_chord();
    let e = chordal_energy(&chord).unwrap();
    assert!((e - 0.5).abs() < 0.02 * 0.5, "{e}");
    let scaled = chordal_energy(&chord.affine(3.0, 0.0).unwrap()).unwrap();
    assert!((scaled - e).abs() < 0.02 * e, "{scaled} vs {e}");
}

#[test]
fn squared_chord_has_the_chordal_energy() {
    let chord = linear_chord();
    let eta: Vec<_> = chord.points().iter().map(|z| z * z).collect();
    let loop_energy = loop_energy_via_chord(&eta).unwrap().finest();
    let chordal = chordal_energy(&chord).unwrap();
    assert!((loop_energy - chordal).abs() < 0.02 * chordal, "{loop_energy} vs {chordal}");
}

#[test]
fn right_angle_wedge_is_flagged_divergent() {
    let eta: Vec<_> = std::iter::once(c(0.0, 0.0))
        .chain((-4..=4).map(|k| c(0.0, 2f64.powi(k))))
        .collect();
    let e = loop_energy_via_chord(&eta).unwrap();
    assert!(!e.converged);
    assert!(e.value().is_none());
    assert!(e.levels.windows(2).all(|p| p[1] > p[0]), "{:?}", e.levels);
}

#[test]
fn report_on_the_unit_circle() {
    let k = JordanCurve::circle(c(0.0, 0.0), 1.0).unwrap();
    let rep = energy_report(&ReportCurve::Closed(k), &ReportParams::default());
    assert!(rep.liouville.value().unwrap().abs() < 1e-6);
    assert!(rep.grunsky.value().unwrap().abs() < 1e-6);
    assert!(rep.dirichlet.value().unwrap().abs() < 1e-3, "{:?}", rep.dirichlet);
    assert_eq!(rep.discrepancies.len(), 3);
}

#[test]
fn report_on_the_ellipse_agrees_across_series_routes() {
    let k = JordanCurve::joukowski(0.3).unwrap();
    let params = ReportParams {
        routes: vec![Route::Liouville, Route::Grunsky],
        ..ReportParams::default()
    };
    let rep = energy_report(&ReportCurve::Closed(k), &params);
    assert!(rep.discrepancies["liouville-grunsky"] < 1e-4, "{:?}", rep.discrepancies);
    assert!(rep.liouville.value().unwrap() > 1.0);
    assert!(rep.grunsky.value().unwrap() > 1.0);
    let json = serde_json::to_value(&rep).unwrap();
    for key in ["dirichlet", "liouville", "grunsky", "discrepancies", "params", "timings_ms"] {
        assert!(json.get(key).is_some(), "missing {key}");
    }
    assert_eq!(json["dirichlet"]["status"], "absent");
}

#[test]
fn perturbed_circles_agree_within_cross_method_tolerance() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3 {
        let mut coeffs = vec![(1, c(1.0, 0.0))];
        for k in [-3i64, -2, -1, 2, 3] {
            let r = rng.random_range(0.0..0.05);
            let a = rng.random_range(0.0..std::f64::consts::TAU);
            coeffs.push((k, Complex64::from_polar(r, a)));
        }
        let k = JordanCurve::trig(c(0.0, 0.0), coeffs).unwrap();
        let rep = energy_report(&ReportCurve::Closed(k), &ReportParams::default());
        assert!(rep.failures().is_empty(), "{rep:?}");
        assert!(rep.max_discrepancy().unwrap() < 1e-3, "{:?}", rep.discrepancies);
    }
}

#[test]
fn orientation_reversal_leaves_series_routes_unchanged() {
    let k = JordanCurve::trig(c(0.2, -0.1), vec![(1, c(1.0, 0.0)), (-2, c(0.1, 0.05)), (3, c(0.0, 0.03))]).unwrap();
    let r = k.reversed();
    let a = liouville_energy(&k, 128, MapMethod::Auto).unwrap().energy;
    let b = liouville_energy(&r, 128, MapMethod::Auto).unwrap().energy;
    assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    let a = energy_via_grunsky_curve(&k, 32).unwrap().energy;
    let b = energy_via_grunsky_curve(&r, 32).unwrap().energy;
    assert!((a - b).abs() < 1e-9, "{a} vs {b}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dirichlet_energy_is_scale_invariant_and_nonnegative(
        increments in prop::collection::vec((0.01f64..1.0, -2.0f64..2.0), 1..12),
        lambda in 0.1f64..10.0,
    ) {
        let mut knots = vec![(0.0, 0.0)];
        for (dt, dw) in increments {
            let (t, w) = *knots.last().unwrap();
            knots.push((t + dt, w + dw));
        }
        let w = DrivingFunction::from_knots(&knots).unwrap();
        let e = dirichlet_energy(&w);
        prop_assert!(e >= 0.0);
        let scaled = dirichlet_energy(&w.rescaled(lambda).unwrap());
        prop_assert!((scaled - e).abs() <= 1e-12 * e.max(1e-300));
        // Shifting by 3 rounds each knot value by up to one ulp of the shifted value.
        let delta = 2.0 * f64::EPSILON * knots.iter().map(|k| k.1.abs() + 3.0).fold(0.0, f64::max);
        let rounding: f64 = knots
            .windows(2)
            .map(|p| ((p[1].1 - p[0].1).abs() * delta + delta * delta) / (p[1].0 - p[0].0))
            .sum();
        prop_assert!((dirichlet_energy(&w.translated(3.0)) - e).abs() <= rounding + 1e-15 * e);
    }
}
