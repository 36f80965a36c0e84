use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LoewnerError, Result};
use crate::numerics::{fourier, series};

/// `f(z) = center + sum_{n=1}^{N} a_n z^n`, a conformal map of the unit disk
/// onto the interior of a curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiskMapSeries {
    pub center: Complex64,
    /// `a_1, ..., a_N`.
    pub coeffs: Vec<Complex64>,
    pub truncation: usize,
}

/// `g(z) = b_1 z + b_0 + sum_{n=1}^{N} b_{-n} z^{-n}`, a conformal map of the
/// exterior disk onto the exterior of a curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExteriorMapSeries {
    pub leading: Complex64,
    pub constant: Complex64,
    /// `b_{-1}, ..., b_{-N}`.
    pub coeffs: Vec<Complex64>,
    pub truncation: usize,
}

/// Spectral Dirichlet sum of a log-derivative with the share of its last tenth of terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirichletSum {
    pub value: f64,
    pub tail: f64,
}

impl DirichletSum {
    /// Whether the last tenth of the terms contributes more than `1e-8` of the sum.
    pub fn tail_significant(&self) -> bool {
        self.tail > 1e-8 * self.value.abs().max(1e-300)
    }
}

impl DiskMapSeries {
    pub fn new(center: Complex64, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() || coeffs[0].norm() == 0.0 {
            return Err(LoewnerError::InvalidInput("disk map needs a_1 != 0".into()));
        }
        let truncation = coeffs.len();
        Ok(Self {
            center,
            coeffs,
            truncation,
        })
    }

    /// `a_1` real and positive.
    pub fn is_normalized(&self) -> bool {
        let a1 = self.coeffs[0];
        a1.re > 0.0 && a1.im.abs() <= 1e-12 * a1.re
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.center + z * series::horner(&self.coeffs, z)
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (k, a)| acc * z + a * (k + 1) as f64)
    }

    /// `f(e^{i theta})` on `m` equispaced angles; modes are folded modulo `m`, which is exact on the grid.
    pub fn boundary(&self, m: usize) -> Vec<Complex64> {
        let mut c = vec![Complex64::new(0.0, 0.0); m];
        c[0] = self.center;
        for (k, a) in self.coeffs.iter().enumerate() {
            c[(k + 1) % m] += a;
        }
        fourier::synthesize(&c)
    }

    /// Coefficients of `log(f'(z) / a_1)` up to twice the truncation order, after
    /// checking that `f'` has no zero in the disk of radius `1 - 1/(4N)`.
    pub fn log_derivative(&self) -> Result<Vec<Complex64>> {
        let mut p: Vec<Complex64> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a * (k + 1) as f64 / self.coeffs[0])
            .collect();
        check_zero_free(&p, 1.0 - 0.25 / self.truncation as f64)?;
        p.resize(log_length(self.truncation), Complex64::new(0.0, 0.0));
        Ok(series::log1(&p))
    }

    /// `integral over the disk of |f''/f'|^2 = pi sum n |c_n|^2`.
    pub fn log_deriv_dirichlet(&self) -> Result<DirichletSum> {
        Ok(spectral_sum(&self.log_derivative()?, self.truncation - 1))
    }
}

impl ExteriorMapSeries {
    pub fn new(leading: Complex64, constant: Complex64, coeffs: Vec<Complex64>) -> Result<Self> {
        if leading.norm() == 0.0 {
            return Err(LoewnerError::InvalidInput("exterior map needs b_1 != 0".into()));
        }
        let truncation = coeffs.len();
        Ok(Self {
            leading,
            constant,
            coeffs,
            truncation,
        })
    }

    /// `b_1` real and positive.
    pub fn is_normalized(&self) -> bool {
        self.leading.re > 0.0 && self.leading.im.abs() <= 1e-12 * self.leading.re
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let w = 1.0 / z;
        self.leading * z + self.constant + w * series::horner(&self.coeffs, w)
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let w = 1.0 / z;
        let tail = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (k, b)| acc * w + b * (k + 1) as f64);
        self.leading - w * w * tail
    }

    pub fn second_derivative(&self, z: Complex64) -> Complex64 {
        let w = 1.0 / z;
        let tail = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (k, b)| {
                let n = (k + 1) as f64;
                acc * w + b * n * (n + 1.0)
            });
        w * w * w * tail
    }

    /// `g(e^{i phi})` on `m` equispaced angles.
    pub fn boundary(&self, m: usize) -> Vec<Complex64> {
        let mut c = vec![Complex64::new(0.0, 0.0); m];
        c[1 % m] += self.leading;
        c[0] += self.constant;
        for (k, b) in self.coeffs.iter().enumerate() {
            c[(m - (k + 1) % m) % m] += b;
        }
        fourier::synthesize(&c)
    }

    /// Coefficients `d_n` of `log(g'(z) / b_1) = sum d_n z^{-n}`.
    pub fn log_derivative(&self) -> Result<Vec<Complex64>> {
        // g'(1/w)/b_1 = 1 - sum n b_{-n}/b_1 w^{n+1}
        let n = self.truncation;
        let mut p = vec![Complex64::new(0.0, 0.0); n + 2];
        p[0] = Complex64::new(1.0, 0.0);
        for (k, b) in self.coeffs.iter().enumerate() {
            p[k + 2] = -b * (k + 1) as f64 / self.leading;
        }
        check_zero_free(&p, 1.0 - 0.25 / n.max(1) as f64)?;
        p.resize(log_length(n + 2), Complex64::new(0.0, 0.0));
        Ok(series::log1(&p))
    }

    /// `integral over the exterior disk of |g''/g'|^2 = pi sum n |d_n|^2`.
    pub fn log_deriv_dirichlet(&self) -> Result<DirichletSum> {
        Ok(spectral_sum(&self.log_derivative()?, self.truncation + 1))
    }

    /// Precompose with the rotation `z -> e^{i alpha} z`.
    pub fn rotated(&self, alpha: f64) -> Self {
        let r = Complex64::from_polar(1.0, alpha);
        Self {
            leading: self.leading * r,
            constant: self.constant,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, b)| b * r.powi(-((k + 1) as i32)))
                .collect(),
            truncation: self.truncation,
        }
    }
}

/// The logarithm of a polynomial is not a polynomial; keep twice as many terms.
fn log_length(n: usize) -> usize {
    (2 * n).max(64)
}

/// `pi sum n |c_n|^2`, with the tail taken over the last tenth of the indices up
/// to `resolved`. Beyond that index the coefficients come from the logarithm of
/// a truncated series and decay regardless of how well the map is resolved.
fn spectral_sum(c: &[Complex64], resolved: usize) -> DirichletSum {
    let term = |n: usize| PI * n as f64 * c[n].norm_sqr();
    let value = (1..c.len()).map(term).sum();
    let resolved = resolved.min(c.len() - 1);
    let start = resolved - resolved.div_ceil(10) + 1;
    let tail = (start.max(1)..=resolved).map(term).sum();
    DirichletSum { value, tail }
}

/// Fails when the polynomial `p` (with `p[0] = 1`) winds around zero on the circle
/// of radius `r`, i.e. has a zero inside it.
fn check_zero_free(p: &[Complex64], r: f64) -> Result<()> {
    let m = (4 * p.len()).next_power_of_two().max(64);
    let mut c = vec![Complex64::new(0.0, 0.0); m];
    let mut rk = 1.0;
    for (k, pk) in p.iter().enumerate() {
        c[k % m] += pk * rk;
        rk *= r;
    }
    let vals = fourier::synthesize(&c);
    if vals.iter().any(|v| v.norm() == 0.0 || !v.re.is_finite()) {
        return Err(LoewnerError::SeriesLogFailure);
    }
    let winding: f64 = (0..m).map(|j| (vals[(j + 1) % m] / vals[j]).arg()).sum();
    if winding.abs() > PI {
        return Err(LoewnerError::SeriesLogFailure);
    }
    Ok(())
}
