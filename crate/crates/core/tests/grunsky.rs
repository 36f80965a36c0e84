use loewner::curve::JordanCurve;
use loewner::grunsky::{energy_via_grunsky, energy_via_grunsky_curve, grunsky_coefficients, log_det_one_minus_gstar_g};
use loewner::liouville::{liouville_energy, ExteriorMapSeries, MapMethod};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Exterior series padded with zeros to 16 terms.
fn series(leading: Complex64, constant: Complex64, coeffs: &[Complex64]) -> ExteriorMapSeries {
    let mut padded = coeffs.to_vec();
    padded.resize(16.max(coeffs.len()), c(0.0, 0.0));
    ExteriorMapSeries::new(leading, constant, padded).unwrap()
}

fn closed_form(cc: f64) -> f64 {
    -12.0 * (1..100).map(|n| (1.0 - cc.powi(2 * n)).ln()).sum::<f64>()
}

#[test]
fn translation_gives_the_zero_operator() {
    let g = grunsky_coefficients(&series(c(1.0, 0.0), c(2.0, -1.0), &[]), 8).unwrap();
    assert!(g.to_triples().iter().all(|t| t[2] == 0.0 && t[3] == 0.0));
}

#[test]
fn diagonal_determinant_is_a_product() {
    let mut coeffs = vec![c(0.0, 0.0); 12];
    coeffs[0] = c(0.3, 0.0);
    let g = grunsky_coefficients(&series(c(1.0, 0.0), c(0.0, 0.0), &coeffs), 12).unwrap();
    let expected: f64 = (1..=12).map(|n| (1.0 - 0.09f64.powi(n)).ln()).sum();
    let got = log_det_one_minus_gstar_g(&g).unwrap().value;
    assert!((got - expected).abs() < 1e-14, "{got} vs {expected}");
}

#[test]
fn joukowski_energies_match_the_closed_form() {
    for (cc, approx) in [(0.3, 1.239), (0.1, 0.121)] {
        let e = energy_via_grunsky_curve(&JordanCurve::joukowski(cc).unwrap(), 32).unwrap();
        assert!(e.converged);
        assert!((e.energy - closed_form(cc)).abs() < 1e-8, "{} vs {}", e.energy, closed_form(cc));
        assert!((e.energy - approx).abs() < 1e-3);
    }
}

#[test]
fn coefficients_ignore_scaling_and_translation() {
    let coeffs = [c(0.2, 0.05), c(-0.03, 0.02), c(0.01, 0.0), c(0.0, -0.004)];
    let base = grunsky_coefficients(&series(c(1.0, 0.0), c(0.0, 0.0), &coeffs), 10).unwrap();
    let scaled: Vec<_> = coeffs.iter().map(|b| b * 3.5).collect();
    let moved = grunsky_coefficients(&series(c(3.5, 0.0), c(-1.0, 4.0), &scaled), 10).unwrap();
    for m in 1..=10 {
        for n in 1..=10 {
            assert!((base.get(m, n) - moved.get(m, n)).norm() < 1e-10);
        }
    }
    let e = energy_via_grunsky(&series(c(1.0, 0.0), c(0.0, 0.0), &coeffs), 10).unwrap();
    let f = energy_via_grunsky(&series(c(3.5, 0.0), c(-1.0, 4.0), &scaled), 10).unwrap();
    assert!((e - f).abs() < 1e-10);
}

#[test]
fn circle_rigidity() {
    let circle = JordanCurve::circle(c(1.0, 2.0), 0.7).unwrap();
    let e = energy_via_grunsky_curve(&circle, 32).unwrap();
    assert!(e.energy < 1e-10);
    let ellipse = JordanCurve::joukowski(0.05).unwrap();
    let e = energy_via_grunsky_curve(&ellipse, 32).unwrap();
    assert!(e.energy > 1e-10);
}

#[test]
fn agrees_with_the_liouville_route() {
    let corpus = [
        JordanCurve::joukowski(0.2).unwrap(),
        JordanCurve::trig(c(0.0, 0.0), vec![(1, c(1.0, 0.0)), (-2, c(0.15, 0.05))]).unwrap(),
        JordanCurve::trig(c(0.3, 0.3), vec![(1, c(1.0, 0.0)), (2, c(0.1, 0.0)), (-1, c(0.0, 0.2))]).unwrap(),
    ];
    for k in &corpus {
        let a = energy_via_grunsky_curve(k, 32).unwrap().energy;
        let b = liouville_energy(k, 128, MapMethod::Auto).unwrap().energy;
        assert!((a - b).abs() < 1e-3, "{a} vs {b}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn log_det_is_nonincreasing_in_the_truncation(
        raw in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..6),
    ) {
        // sum n |b_n| < 1 keeps the map univalent
        let coeffs: Vec<_> = raw.iter().enumerate().map(|(k, &(re, im))| {
            c(re, im) * 0.12 / ((k + 1) * (k + 1)) as f64
        }).collect();
        let g = grunsky_coefficients(&series(c(1.0, 0.0), c(0.0, 0.0), &coeffs), 16).unwrap();
        let mut prev = 0.0;
        for k in 1..=16 {
            let v = log_det_one_minus_gstar_g(&g.leading_block(k)).unwrap().value;
            prop_assert!(v <= prev + 1e-12);
            prop_assert!(v <= 1e-12);
            prev = v;
        }
        for m in 1..=16 {
            for n in 1..=16 {
                prop_assert_eq!(g.get(m, n), g.get(n, m));
            }
        }
    }
}
