//! Theodorsen's conjugate-function iteration for curves star-shaped about a base point.
//!
//! Writing the boundary as `w0 + rho(theta) e^{i theta}`, the map of the disk
//! sends `e^{is}` to `w0 + rho(theta(s)) e^{i theta(s)}` where
//! `theta(s) = s + K[log rho(theta(s))]` and `K` is the periodic conjugate function.
//!
//! The plain fixed-point iteration contracts only when `eps = sup |d log rho / d theta| < 1`.
//! Its linearization `K (eps-weighted)` has a spectrum close to the imaginary axis,
//! so relaxing with weight `1 / (1 + eps^2)` contracts for every `eps`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{LoewnerError, Result};
use crate::numerics::fourier;

pub(crate) type Boundary<'a> = dyn Fn(f64) -> (Complex64, Complex64) + Sync + 'a;

const TOL: f64 = 1e-13;
const MAX_ITER: usize = 5000;

/// Radial description of a star-shaped curve about `w0`.
struct Radial<'a> {
    curve: &'a Boundary<'a>,
    w0: Complex64,
    /// Direction of traversal (`-1` when the parametrization runs clockwise).
    sign: f64,
    grid_t: Vec<f64>,
    grid_theta: Vec<f64>,
    /// Largest `|d log rho / d theta|` on the grid.
    eps: f64,
}

impl<'a> Radial<'a> {
    fn new(curve: &'a Boundary<'a>, w0: Complex64, grid: usize) -> Result<Self> {
        let mut r = Self {
            curve,
            w0,
            sign: 1.0,
            grid_t: Vec::new(),
            grid_theta: Vec::new(),
            eps: 0.0,
        };
        let (total, monotone) = r.build(grid);
        if (total + 2.0 * PI).abs() < 1e-6 {
            r.sign = -1.0;
            let (total, monotone) = r.build(grid);
            if (total - 2.0 * PI).abs() > 1e-6 || !monotone {
                return Err(LoewnerError::NotStarShaped);
            }
        } else if (total - 2.0 * PI).abs() > 1e-6 || !monotone {
            return Err(LoewnerError::NotStarShaped);
        }
        Ok(r)
    }

    fn point(&self, t: f64) -> (Complex64, Complex64) {
        let (z, dz) = (self.curve)(self.sign * t);
        (z - self.w0, dz * self.sign)
    }

    /// Unwrapped argument on the grid; returns total increase and monotonicity.
    fn build(&mut self, grid: usize) -> (f64, bool) {
        self.grid_t = (0..=grid).map(|l| 2.0 * PI * l as f64 / grid as f64).collect();
        self.grid_theta = Vec::with_capacity(grid + 1);
        let mut prev = self.point(0.0).0;
        let mut theta = prev.arg();
        self.grid_theta.push(theta);
        let mut monotone = true;
        self.eps = 0.0;
        for l in 1..=grid {
            let (u, du) = self.point(self.grid_t[l]);
            let d = du / u;
            self.eps = self.eps.max((d.re / d.im).abs());
            let step = (u / prev).arg();
            // a ray from w0 that meets the curve twice shows up as a backward step
            monotone &= step > 0.0;
            theta += step;
            self.grid_theta.push(theta);
            prev = u;
        }
        let total = theta - self.grid_theta[0];
        (total, monotone)
    }

    /// Radius of the curve in direction `theta`.
    fn rho(&self, theta: f64) -> f64 {
        let th0 = self.grid_theta[0];
        let wraps = ((theta - th0) / (2.0 * PI)).floor();
        let target = theta - 2.0 * PI * wraps;
        let l = (self.grid_theta.partition_point(|&v| v <= target).max(1) - 1)
            .min(self.grid_t.len() - 2);
        let (mut lo, mut hi) = (self.grid_t[l], self.grid_t[l + 1]);
        let (th_l, u_l) = (self.grid_theta[l], self.point(self.grid_t[l]).0);
        let residual = |t: f64| {
            let (u, du) = self.point(t);
            (th_l + (u / u_l).arg() - target, (du / u).im, u.norm())
        };
        let mut t = lo + (hi - lo) * ((target - th_l) / (self.grid_theta[l + 1] - th_l)).clamp(0.0, 1.0);
        let mut r = 0.0;
        for _ in 0..60 {
            let (f, df, radius) = residual(t);
            r = radius;
            if f.abs() < 1e-15 {
                break;
            }
            if f > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let newton = t - f / df;
            t = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
            if hi - lo < 1e-16 {
                break;
            }
        }
        r
    }
}

/// Boundary values `f(e^{2 pi i k / m})` of the conformal map of the disk onto
/// the interior of the curve with `f(0) = w0`, `f'(0) > 0`.
pub(crate) fn boundary_values(
    curve: &Boundary<'_>,
    w0: Complex64,
    m: usize,
    grid: usize,
) -> Result<Vec<Complex64>> {
    let radial = Radial::new(curve, w0, grid)?;
    let s: Vec<f64> = (0..m).map(|k| 2.0 * PI * k as f64 / m as f64).collect();
    let mut theta = s.clone();
    let mut log_rho: Vec<f64> = theta.iter().map(|&th| radial.rho(th).ln()).collect();
    let relax = 1.0 / (1.0 + radial.eps * radial.eps);
    let mut converged = false;
    for _ in 0..MAX_ITER {
        let conj = fourier::conjugate_function(&log_rho);
        let mut residual: f64 = 0.0;
        for k in 0..m {
            let step = s[k] + conj[k] - theta[k];
            residual = residual.max(step.abs());
            theta[k] += relax * step;
        }
        log_rho = theta.iter().map(|&th| radial.rho(th).ln()).collect();
        if residual < TOL {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(LoewnerError::NoConvergence(format!(
            "conjugate-function iteration did not reach {TOL:e} in {MAX_ITER} steps"
        )));
    }
    Ok(theta
        .iter()
        .zip(&log_rho)
        .map(|(&th, &lr)| w0 + Complex64::from_polar(lr.exp(), th))
        .collect())
}
