//! Grunsky coefficients of an exterior map and the Fredholm determinant
//! `det(I - G^* G)`.
//!
//! Convention: `log((g(z) - g(w)) / (b_1 (z - w))) = -sum_{m,n >= 1} b_mn z^-m w^-n`,
//! so `g(z) = z + c/z` has the positive diagonal `b_nn = c^n / n`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::JordanCurve;
use crate::error::{LoewnerError, Result};
use crate::liouville::{fit_exterior_map, ExteriorMapSeries, MAX_ORDER};
use crate::numerics::linalg::{cholesky_log_det, Matrix};

/// Order at which [`energy_via_grunsky_curve`] starts doubling.
pub const START_ORDER: usize = 32;
/// Change in the energy below which doubling stops.
pub const REFINEMENT_TOL: f64 = 1e-8;

/// Truncated Grunsky operator with entries `sqrt(mn) b_mn`, `1 <= m, n <= N`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrunskyMatrix {
    entries: Matrix,
    /// Truncation of the exterior series the matrix was built from.
    pub source_truncation: usize,
    /// Power-iteration estimate of the operator norm.
    pub norm: f64,
}

impl GrunskyMatrix {
    pub fn order(&self) -> usize {
        self.entries.dim()
    }

    /// `G[m][n]` with one-based indices.
    pub fn get(&self, m: usize, n: usize) -> Complex64 {
        self.entries[(m - 1, n - 1)]
    }

    /// `b_mn = G[m][n] / sqrt(mn)`.
    pub fn coefficient(&self, m: usize, n: usize) -> Complex64 {
        self.get(m, n) / ((m * n) as f64).sqrt()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.entries
    }

    /// Below one, as it must be for the exterior map of a quasicircle.
    pub fn is_contraction(&self) -> bool {
        self.norm < 1.0
    }

    /// Leading `k x k` block, the operator of the same map truncated at `k`.
    pub fn leading_block(&self, k: usize) -> GrunskyMatrix {
        let k = k.min(self.order());
        let mut entries = Matrix::zeros(k);
        for i in 0..k {
            for j in 0..k {
                entries[(i, j)] = self.entries[(i, j)];
            }
        }
        let norm = entries.norm_estimate(200);
        GrunskyMatrix {
            entries,
            source_truncation: self.source_truncation,
            norm,
        }
    }

    /// Upper triangle as `[m, n, re, im]` rows.
    pub fn to_triples(&self) -> Vec<[f64; 4]> {
        let n = self.order();
        let mut out = Vec::with_capacity(n * (n + 1) / 2);
        for m in 1..=n {
            for k in m..=n {
                let v = self.get(m, k);
                out.push([m as f64, k as f64, v.re, v.im]);
            }
        }
        out
    }
}

/// Builds the order-`n` Grunsky matrix of `g` from its Faber polynomials.
///
/// With `q_k = F_k(g(z)) = z^k + k sum_n b_kn z^-n` and normalized coefficients
/// `beta_j = b_{-j} / b_1`, the relation
/// `q_{k+1} = g q_k - sum_{j<k} beta_j q_{k-j} - const` gives, for `b'_kn = k b_kn`,
/// `b'_{k+1,n} = b'_{k,n+1} + beta_{k+n} + sum_{j<n} beta_j b'_{k,n-j} - sum_{j<k} beta_j b'_{k-j,n}`.
pub fn grunsky_coefficients(g: &ExteriorMapSeries, n: usize) -> Result<GrunskyMatrix> {
    if n == 0 {
        return Err(LoewnerError::InvalidInput("Grunsky order must be positive".into()));
    }
    if n > g.truncation {
        return Err(LoewnerError::TruncationTooSmall {
            requested: n,
            available: g.truncation,
        });
    }
    let width = 2 * n;
    // beta[j] = b_{-j} / b_1, zero beyond the truncation
    let mut beta = vec![Complex64::new(0.0, 0.0); width + 1];
    for (j, b) in g.coeffs.iter().enumerate().take(width) {
        beta[j + 1] = b / g.leading;
    }
    // rows[k - 1][i - 1] = b'_{k,i} for i <= 2n - k
    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    rows.push(beta[1..width].to_vec());
    for k in 1..n {
        let len = width - k - 1;
        let next: Vec<Complex64> = (1..=len)
            .into_par_iter()
            .map(|i| {
                let cur = &rows[k - 1];
                let mut s = cur[i] + beta[k + i];
                for j in 1..i {
                    s += beta[j] * cur[i - j - 1];
                }
                for j in 1..k {
                    s -= beta[j] * rows[k - j - 1][i - 1];
                }
                s
            })
            .collect();
        rows.push(next);
    }
    let mut entries = Matrix::zeros(n);
    for m in 1..=n {
        for k in m..=n {
            let b = rows[m - 1][k - 1] / m as f64;
            let v = b * ((m * k) as f64).sqrt();
            entries[(m - 1, k - 1)] = v;
            entries[(k - 1, m - 1)] = v;
        }
    }
    let norm = entries.norm_estimate(200);
    Ok(GrunskyMatrix {
        entries,
        source_truncation: g.truncation,
        norm,
    })
}

/// `log det(I - G^* G)` together with its change from the half-order block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogDet {
    pub value: f64,
    /// `|value(N) - value(N/2)|`, absent for `N = 1`.
    pub change: Option<f64>,
}

fn log_det_block(g: &Matrix) -> Result<f64> {
    let mut a = g.gram();
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = -a[(i, j)];
        }
        a[(i, i)] += 1.0;
    }
    cholesky_log_det(&a).ok_or(LoewnerError::NormAtLeastOne)
}

pub fn log_det_one_minus_gstar_g(g: &GrunskyMatrix) -> Result<LogDet> {
    if !g.is_contraction() {
        return Err(LoewnerError::NormAtLeastOne);
    }
    let value = log_det_block(&g.entries)?;
    let half = g.order() / 2;
    let change = if half >= 1 {
        Some((value - log_det_block(&g.leading_block(half).entries)?).abs())
    } else {
        None
    };
    Ok(LogDet { value, change })
}

/// `-12 log det(I - G^* G)` at order `n`.
pub fn energy_via_grunsky(g: &ExteriorMapSeries, n: usize) -> Result<f64> {
    let det = log_det_one_minus_gstar_g(&grunsky_coefficients(g, n)?)?;
    // adding 0.0 turns -0.0 into 0.0
    Ok(-12.0 * det.value + 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrunskyEnergy {
    pub energy: f64,
    pub order: usize,
    /// Change from the previous order, absent at the starting order.
    pub change: Option<f64>,
    pub converged: bool,
}

/// Fits the exterior map at increasing order, doubling from `order` until the
/// energy moves by less than [`REFINEMENT_TOL`] or the order ceiling is reached.
pub fn energy_via_grunsky_curve(curve: &JordanCurve, order: usize) -> Result<GrunskyEnergy> {
    let mut n = order.max(2);
    let mut prev: Option<f64> = None;
    loop {
        let g = fit_exterior_map(curve, n)?;
        let energy = energy_via_grunsky(&g, n)?;
        let change = prev.map(|p| (energy - p).abs());
        let converged = change.is_some_and(|d| d < REFINEMENT_TOL);
        if converged || 2 * n > MAX_ORDER {
            return Ok(GrunskyEnergy {
                energy,
                order: n,
                change,
                converged,
            });
        }
        prev = Some(energy);
        n *= 2;
    }
}
