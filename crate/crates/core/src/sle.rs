//! SLE driving functions and traces, the central charge, and a Monte-Carlo probe
//! of Schilder's large deviations for `sqrt(kappa) B`.
//!
//! Every random path is drawn from its own ChaCha8 stream selected by
//! `(seed, index)`, so results do not depend on sampling order or thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{LoewnerError, Result};
use crate::evolution::{trace_of_chain, DrivingFunction, HalfPlaneTrace, SlitKind, SlitMapChain, SlitStep};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SleConfig {
    pub kappa: f64,
    pub horizon: f64,
    pub dt: f64,
    pub seed: u64,
    /// Permit traces for `kappa > 4`, where the hull is no longer a simple curve.
    #[serde(default)]
    pub allow_large_kappa: bool,
}

impl SleConfig {
    pub fn new(kappa: f64, horizon: f64, dt: f64, seed: u64) -> Result<Self> {
        let c = Self {
            kappa,
            horizon,
            dt,
            seed,
            allow_large_kappa: false,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.kappa >= 0.0) || !self.kappa.is_finite() {
            return Err(LoewnerError::InvalidInput("kappa must be a nonnegative number".into()));
        }
        if !(self.horizon > 0.0) || !self.horizon.is_finite() {
            return Err(LoewnerError::InvalidInput("horizon must be positive".into()));
        }
        if !(self.dt > 0.0) || self.dt > self.horizon {
            return Err(LoewnerError::InvalidInput("dt must lie in (0, horizon]".into()));
        }
        Ok(())
    }

    /// Number of increments: the smallest `n` with `horizon / n <= dt`.
    pub fn steps(&self) -> usize {
        ((self.horizon / self.dt) * (1.0 - 1e-12)).ceil().max(1.0) as usize
    }
}

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Standard Brownian increments with variance `h`.
fn increments(rng: &mut ChaCha8Rng, n: usize, h: f64) -> impl Iterator<Item = f64> + '_ {
    let sd = h.sqrt();
    (0..n).map(move |_| {
        let z: f64 = StandardNormal.sample(rng);
        sd * z
    })
}

/// `sqrt(kappa) B` on the uniform grid of [`SleConfig::steps`] intervals.
pub fn sample_driving(config: &SleConfig) -> Result<DrivingFunction> {
    sample_driving_indexed(config, 0)
}

/// As [`sample_driving`], drawing from stream `index` of the seed.
pub fn sample_driving_indexed(config: &SleConfig, index: u64) -> Result<DrivingFunction> {
    config.validate()?;
    let n = config.steps();
    let h = config.horizon / n as f64;
    let mut rng = stream(config.seed, index);
    let scale = config.kappa.sqrt();
    let mut values = Vec::with_capacity(n + 1);
    let mut w = 0.0;
    values.push(w);
    for db in increments(&mut rng, n, h) {
        w += scale * db;
        values.push(w);
    }
    let times = (0..=n).map(|k| config.horizon * k as f64 / n as f64).collect();
    DrivingFunction::new(times, values)
}

/// Trace of [`sample_driving`], one vertical slit per increment at the mid-step value.
pub fn sample_trace(config: &SleConfig) -> Result<HalfPlaneTrace> {
    if config.kappa > 4.0 && !config.allow_large_kappa {
        return Err(LoewnerError::InvalidInput(
            "traces need kappa <= 4 (set allow_large_kappa to override)".into(),
        ));
    }
    let w = sample_driving(config)?;
    let mut steps = Vec::with_capacity(w.len() - 1);
    let mut current = 0.0;
    for (t, v) in w.times().windows(2).zip(w.values().windows(2)) {
        let mid = 0.5 * (v[0] + v[1]);
        steps.push(SlitStep {
            capacity: t[1] - t[0],
            drift: mid - current,
            kind: SlitKind::VerticalSlit,
        });
        current = mid;
    }
    trace_of_chain(&SlitMapChain::new(0.0, steps)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CentralCharge {
    pub value: f64,
    /// `kappa c(kappa) / (-24)`, which tends to 1 as `kappa -> 0`.
    pub small_kappa_ratio: f64,
}

/// `c(kappa) = (6 - kappa)(3 kappa - 8) / (2 kappa)`.
pub fn central_charge(kappa: f64) -> Result<CentralCharge> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(LoewnerError::DomainError(format!(
            "central charge needs kappa > 0, got {kappa}"
        )));
    }
    let value = (6.0 - kappa) * (3.0 * kappa - 8.0) / (2.0 * kappa);
    Ok(CentralCharge {
        value,
        small_kappa_ratio: kappa * value / -24.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchilderParams {
    pub eps: f64,
    pub samples: usize,
    pub seed: u64,
    /// Grid intervals per path; the tube condition is monitored on the grid.
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LdpRow {
    pub kappa: f64,
    pub hits: usize,
    pub samples: usize,
    /// `-kappa log P`.
    pub rate_estimate: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LdpEstimate {
    /// `I(w)` of the target driving function.
    pub target: f64,
    pub eps: f64,
    pub rows: Vec<LdpRow>,
}

impl LdpEstimate {
    /// `kappa,hits,samples,rate_estimate,stderr` with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("kappa,hits,samples,rate_estimate,stderr\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.kappa, r.hits, r.samples, r.rate_estimate, r.stderr
            ));
        }
        out
    }
}

/// Summary of one Brownian path for the tube event and the Girsanov weight.
struct PathSummary {
    sup: f64,
    /// `sum w'_k dB_k`.
    drift_pairing: f64,
}

/// Deterministic pairwise sum.
fn pairwise_sum(x: &[f64]) -> f64 {
    if x.len() <= 8 {
        return x.iter().sum();
    }
    let (a, b) = x.split_at(x.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// Monte-Carlo estimate of `-kappa log P(sup |sqrt(kappa) B - w| < eps)` for each kappa.
///
/// Paths are drawn around `w` (Cameron-Martin shift) and reweighted by
/// `exp(-(1/sqrt(kappa)) int w' dB - I(w)/kappa)`, where `B` is the Brownian
/// motion of the shifted path. The event becomes `sup |sqrt(kappa) B| < eps`, so
/// the same paths serve every kappa.
pub fn schilder_estimate(w: &DrivingFunction, kappas: &[f64], params: &SchilderParams) -> Result<LdpEstimate> {
    if !(params.eps > 0.0) {
        return Err(LoewnerError::InvalidInput("eps must be positive".into()));
    }
    if params.samples == 0 || params.steps == 0 {
        return Err(LoewnerError::InvalidInput("samples and steps must be positive".into()));
    }
    if let Some(k) = kappas.iter().find(|k| !(**k > 0.0)) {
        return Err(LoewnerError::InvalidInput(format!("kappa must be positive, got {k}")));
    }
    let n = params.steps;
    let t0 = w.times()[0];
    let h = (w.horizon() - t0) / n as f64;
    // slope of the shift on each grid interval and the discrete energy
    let slopes: Vec<f64> = (0..n)
        .map(|k| (w.eval(t0 + (k + 1) as f64 * h) - w.eval(t0 + k as f64 * h)) / h)
        .collect();
    let energy: f64 = slopes.iter().map(|s| 0.5 * s * s * h).sum();

    let paths: Vec<PathSummary> = (0..params.samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(params.seed, i);
            let (mut b, mut sup, mut pairing) = (0.0f64, 0.0f64, 0.0);
            for (db, s) in increments(&mut rng, n, h).zip(&slopes) {
                pairing += s * db;
                b += db;
                sup = sup.max(b.abs());
            }
            PathSummary {
                sup,
                drift_pairing: pairing,
            }
        })
        .collect();

    let mut rows = Vec::with_capacity(kappas.len());
    for &kappa in kappas {
        let root = kappa.sqrt();
        let log_w: Vec<f64> = paths
            .iter()
            .map(|p| {
                if root * p.sup < params.eps {
                    -p.drift_pairing / root - energy / kappa
                } else {
                    f64::NEG_INFINITY
                }
            })
            .collect();
        let hits = log_w.iter().filter(|l| l.is_finite()).count();
        if hits == 0 {
            return Err(LoewnerError::ZeroHits { kappa });
        }
        let shift = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let scaled: Vec<f64> = log_w.iter().map(|l| (l - shift).exp()).collect();
        let squares: Vec<f64> = scaled.iter().map(|x| x * x).collect();
        let m = params.samples as f64;
        let mean = pairwise_sum(&scaled) / m;
        let var = (pairwise_sum(&squares) / m - mean * mean).max(0.0) * m / (m - 1.0).max(1.0);
        let log_p = mean.ln() + shift;
        rows.push(LdpRow {
            kappa,
            hits,
            samples: params.samples,
            rate_estimate: -kappa * log_p,
            // delta method: sd(-kappa log P) = kappa sd(P) / P
            stderr: kappa * (var / m).sqrt() / mean,
        });
    }
    Ok(LdpEstimate {
        target: crate::energy::dirichlet_energy(w),
        eps: params.eps,
        rows,
    })
}
