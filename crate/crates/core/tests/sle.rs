use loewner::energy::dirichlet_energy;
use loewner::sle::{central_charge, sample_driving, sample_trace, schilder_estimate, LdpEstimate, SchilderParams, SleConfig};
use loewner::DrivingFunction;
use num_complex::Complex64;

fn endpoint(kappa: f64, horizon: f64, dt: f64, seed: u64) -> f64 {
    sample_driving(&SleConfig::new(kappa, horizon, dt, seed).unwrap()).unwrap().end_value()
}

/// Asymptotic two-sample Kolmogorov-Smirnov p-value.
fn ks_p_value(mut a: Vec<f64>, mut b: Vec<f64>) -> f64 {
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n, m) = (a.len(), b.len());
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < n && j < m {
        if a[i] <= b[j] {
            i += 1;
        } else {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    let ne = (n * m) as f64 / (n + m) as f64;
    let lambda = (ne.sqrt() + 0.12 + 0.11 / ne.sqrt()) * d;
    let q: f64 = (1..100)
        .map(|k| {
            let k = k as f64;
            2.0 * (-1f64).powf(k - 1.0) * (-2.0 * k * k * lambda * lambda).exp()
        })
        .sum();
    q.clamp(0.0, 1.0)
}

#[test]
fn endpoint_variance_is_kappa_t() {
    let samples: Vec<f64> = (0..10_000).map(|s| endpoint(2.0, 1.0, 1e-3, s)).collect();
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (samples.len() - 1) as f64;
    assert!((var - 2.0).abs() < 0.05 * 2.0, "{var}");
}

#[test]
fn brownian_scaling_preserves_the_endpoint_law() {
    let lambda = 2.0;
    let direct: Vec<f64> = (0..10_000).map(|s| endpoint(2.0, 1.0, 1e-2, s)).collect();
    let scaled: Vec<f64> = (10_000..20_000)
        .map(|s| lambda * endpoint(2.0, 1.0 / (lambda * lambda), 1e-2 / (lambda * lambda), s))
        .collect();
    let p = ks_p_value(direct, scaled);
    assert!(p > 0.01, "{p}");
}

#[test]
fn ks_oracle_rejects_a_different_law() {
    let a: Vec<f64> = (0..10_000).map(|s| endpoint(2.0, 1.0, 1e-2, s)).collect();
    let b: Vec<f64> = (10_000..20_000).map(|s| endpoint(3.0, 1.0, 1e-2, s)).collect();
    assert!(ks_p_value(a, b) < 1e-6);
}

#[test]
fn zero_kappa_trace_is_the_vertical_segment() {
    let trace = sample_trace(&SleConfig::new(0.0, 1.0, 1e-3, 5).unwrap()).unwrap();
    for (z, t) in trace.points().iter().zip(trace.capacities().unwrap()) {
        assert!((z - Complex64::new(0.0, 2.0 * t.sqrt())).norm() < 1e-3);
    }
}

#[test]
fn traces_are_reproducible_and_stay_in_the_half_plane() {
    let cfg = SleConfig::new(2.0, 1.0, 1e-3, 7).unwrap();
    let a = sample_trace(&cfg).unwrap();
    let b = sample_trace(&cfg).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.points()[0], Complex64::new(0.0, 0.0));
    assert!(a.points().iter().all(|z| z.im >= 0.0));
}

#[test]
fn sampled_energy_grows_like_one_over_dt() {
    let mean_energy = |dt: f64| {
        (0..1000)
            .map(|s| dirichlet_energy(&sample_driving(&SleConfig::new(1.5, 1.0, dt, s).unwrap()).unwrap()))
            .sum::<f64>()
            / 1000.0
    };
    let (coarse, fine) = (mean_energy(1e-2), mean_energy(5e-3));
    // E I = kappa T / (2 dt)
    assert!((coarse - 1.5 * 0.5 / 1e-2).abs() < 0.2 * coarse);
    let ratio = fine / coarse;
    assert!((ratio - 2.0).abs() < 0.2 * 2.0, "{ratio}");
}

#[test]
fn central_charge_near_zero_kappa() {
    let c = central_charge(0.01).unwrap();
    assert!(c.small_kappa_ratio > 0.95 && c.small_kappa_ratio < 1.05);
}

fn estimate(w: &DrivingFunction, kappas: &[f64], eps: f64, samples: usize) -> LdpEstimate {
    let params = SchilderParams { eps, samples, seed: 3, steps: 200 };
    schilder_estimate(w, kappas, &params).unwrap()
}

#[test]
fn importance_sampling_is_consistent_when_the_event_is_likely() {
    let w = DrivingFunction::linear(1.0, 1.0).unwrap();
    let est = estimate(&w, &[0.25, 0.5], 8.0, 20_000);
    for row in &est.rows {
        let p = (-row.rate_estimate / row.kappa).exp();
        assert!(p > 0.95 && p < 1.05, "kappa {}: {p}", row.kappa);
        assert!(row.hits <= row.samples);
    }
}

#[test]
fn zero_target_has_small_decreasing_rates() {
    let w = DrivingFunction::constant(0.0, 1.0).unwrap();
    let est = estimate(&w, &[1.0, 0.5, 0.25], 1.0, 20_000);
    assert_eq!(est.target, 0.0);
    let rates: Vec<f64> = est.rows.iter().map(|r| r.rate_estimate).collect();
    assert!(rates.windows(2).all(|p| p[1] < p[0]), "{rates:?}");
    assert!(rates[2] < 0.05, "{rates:?}");
}

#[test]
fn doubling_eps_does_not_increase_rates() {
    let w = DrivingFunction::linear(1.0, 1.0).unwrap();
    let narrow = estimate(&w, &[1.0, 0.5], 0.4, 20_000);
    let wide = estimate(&w, &[1.0, 0.5], 0.8, 20_000);
    for (a, b) in narrow.rows.iter().zip(&wide.rows) {
        assert!(b.rate_estimate <= a.rate_estimate, "{} vs {}", b.rate_estimate, a.rate_estimate);
        assert!(b.hits >= a.hits);
    }
}

#[test]
fn schilder_is_independent_of_thread_count() {
    let w = DrivingFunction::linear(1.0, 1.0).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| estimate(&w, &[1.0, 0.5], 0.4, 5_000).to_csv())
    };
    assert_eq!(run(1), run(3));
}
