use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::series::{DiskMapSeries, ExteriorMapSeries};
use crate::error::{LoewnerError, Result};

/// Circle homeomorphism sampled on an equispaced grid: `phi[j]` is the lifted
/// image of `theta[j] = 2 pi j / M`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeldingMap {
    pub theta: Vec<f64>,
    pub phi: Vec<f64>,
}

impl WeldingMap {
    /// Samples of a lift `phi` on the equispaced grid; checks strict increase and degree one.
    pub fn new(phi: Vec<f64>) -> Result<Self> {
        let m = phi.len();
        if m < 4 {
            return Err(LoewnerError::InvalidInput("welding grid needs at least 4 points".into()));
        }
        for j in 0..m {
            let next = if j + 1 < m { phi[j + 1] } else { phi[0] + 2.0 * PI };
            if !(next > phi[j]) {
                return Err(LoewnerError::MonotonicityViolation { index: j });
            }
        }
        if !(phi[m - 1] - phi[0] < 2.0 * PI) {
            return Err(LoewnerError::MonotonicityViolation { index: m - 1 });
        }
        let theta = (0..m).map(|j| 2.0 * PI * j as f64 / m as f64).collect();
        Ok(Self { theta, phi })
    }

    pub fn from_fn(m: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new((0..m).map(|j| f(2.0 * PI * j as f64 / m as f64)).collect())
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }

    /// Lifted value at grid index `j` for any integer `j`.
    fn lifted(&self, j: i64) -> f64 {
        let m = self.phi.len() as i64;
        let wraps = j.div_euclid(m);
        self.phi[j.rem_euclid(m) as usize] + 2.0 * PI * wraps as f64
    }
}

/// Angle `phi` with `g(e^{i phi})` closest to `w`, by Gauss-Newton from the
/// nearest of the `samples`; returns the angle and the residual distance.
pub fn project_onto_exterior(g: &ExteriorMapSeries, w: Complex64, samples: &[Complex64]) -> (f64, f64) {
    let m = samples.len();
    let j = (0..m)
        .min_by(|&a, &b| (samples[a] - w).norm().total_cmp(&(samples[b] - w).norm()))
        .unwrap_or(0);
    let mut phi = 2.0 * PI * j as f64 / m as f64;
    for _ in 0..50 {
        let z = Complex64::from_polar(1.0, phi);
        let r = g.eval(z) - w;
        let tangent = Complex64::new(0.0, 1.0) * z * g.derivative(z);
        let step = (r.conj() * tangent).re / tangent.norm_sqr();
        phi -= step;
        if step.abs() < 1e-15 {
            break;
        }
    }
    let dist = (g.eval(Complex64::from_polar(1.0, phi)) - w).norm();
    (phi, dist)
}

/// Largest distance from `f(S^1)` to `g(S^1)` over `m` points.
pub fn boundary_mismatch(f: &DiskMapSeries, g: &ExteriorMapSeries, m: usize) -> f64 {
    let fb = f.boundary(m);
    let gb = g.boundary((4 * m).max(4 * g.truncation + 8));
    fb.iter()
        .map(|&w| project_onto_exterior(g, w, &gb).1)
        .fold(0.0, f64::max)
}

/// `phi = g^{-1} o f` on an `m`-point grid.
pub fn welding_map(f: &DiskMapSeries, g: &ExteriorMapSeries, m: usize) -> Result<WeldingMap> {
    let fb = f.boundary(m);
    let gb = g.boundary((4 * m).max(4 * g.truncation + 8));
    let mut phi = Vec::with_capacity(m);
    for w in &fb {
        phi.push(project_onto_exterior(g, *w, &gb).0);
    }
    // lift so consecutive increments lie in (-pi, pi]
    for j in 1..m {
        let mut d = phi[j] - phi[j - 1];
        d -= 2.0 * PI * (d / (2.0 * PI)).round();
        phi[j] = phi[j - 1] + d;
    }
    WeldingMap::new(phi)
}

/// Largest symmetric quotient `(phi(theta + t) - phi(theta)) / (phi(theta) - phi(theta - t))`
/// (or its inverse) over the grid and dyadic `t` in `(0, pi)`.
pub fn qs_constant_estimate(phi: &WeldingMap) -> f64 {
    let m = phi.len() as i64;
    let mut worst: f64 = 1.0;
    let mut step = 1;
    while 2 * step < m {
        for j in 0..m {
            let a = phi.lifted(j + step) - phi.lifted(j);
            let b = phi.lifted(j) - phi.lifted(j - step);
            worst = worst.max(a / b).max(b / a);
        }
        step *= 2;
    }
    worst
}
