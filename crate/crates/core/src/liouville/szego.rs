//! Boundary correspondence from the Szegő kernel, for curves that are not
//! star-shaped about any convenient point.
//!
//! The Szegő kernel `S(., a)` solves the second-kind equation
//! `S - A S = H_a` on the boundary, with `A = C - C*` the skew-adjoint
//! Kerzman-Stein operator and `H_a` the conjugated Cauchy kernel. The Riemann
//! map with `R(a) = 0`, `R'(a) > 0` then has boundary values
//! `R = -i T S / conj(S)`, `T` the unit tangent.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::theodorsen::Boundary;
use crate::error::{LoewnerError, Result};
use crate::numerics::fourier;
use crate::numerics::linalg::{lu_solve, Matrix};

/// Boundary values `f(e^{2 pi i k / m})` of the conformal map of the disk onto
/// the interior of the curve with `f(0) = a`, `f'(0) > 0`.
pub(crate) fn boundary_values(curve: &Boundary<'_>, a: Complex64, m: usize) -> Result<Vec<Complex64>> {
    let h = 2.0 * PI / m as f64;
    let mut sign = 1.0;
    let mut area = 0.0;
    for j in 0..m {
        let (z, dz) = curve(j as f64 * h);
        area += ((z - a).conj() * dz).im;
    }
    if area < 0.0 {
        sign = -1.0;
    }
    let eval = |t: f64| {
        let (z, dz) = curve(sign * t);
        (z, dz * sign)
    };
    let nodes: Vec<(Complex64, Complex64)> = (0..m).map(|j| eval(j as f64 * h)).collect();
    let z: Vec<Complex64> = nodes.iter().map(|n| n.0).collect();
    let speed: Vec<f64> = nodes.iter().map(|n| n.1.norm()).collect();
    let tangent: Vec<Complex64> = nodes.iter().map(|n| n.1 / n.1.norm()).collect();
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);

    let mut mat = Matrix::identity(m);
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let kernel = tangent[j] / (two_pi_i * (z[j] - z[i]))
                - (tangent[i] / (two_pi_i * (z[i] - z[j]))).conj();
            mat[(i, j)] -= kernel * h * speed[j];
        }
    }
    let rhs: Vec<Complex64> = (0..m)
        .map(|i| (tangent[i] / (two_pi_i * (z[i] - a))).conj())
        .collect();
    let s = lu_solve(&mat, &rhs)
        .ok_or_else(|| LoewnerError::NoConvergence("Szegő system is singular".into()))?;

    // angle of R at each node, unwrapped
    let mut sigma = Vec::with_capacity(m);
    let mut prev = Complex64::new(0.0, -1.0) * tangent[0] * s[0] * s[0];
    let mut acc = prev.arg();
    sigma.push(acc);
    for j in 1..m {
        let r = Complex64::new(0.0, -1.0) * tangent[j] * s[j] * s[j];
        let step = (r / prev).arg();
        if !(step > 0.0) {
            return Err(LoewnerError::NoConvergence(
                "Szegő boundary correspondence is not monotone".into(),
            ));
        }
        acc += step;
        sigma.push(acc);
        prev = r;
    }

    // sigma(t) - t is periodic; interpolate it and invert sigma at equispaced angles
    let periodic: Vec<Complex64> = (0..m)
        .map(|j| Complex64::new(sigma[j] - j as f64 * h, 0.0))
        .collect();
    let coeffs = fourier::coefficients(&periodic);
    let interp = |t: f64| -> (f64, f64) {
        let (mut v, mut dv) = (0.0, 0.0);
        for (k, c) in coeffs.iter().enumerate() {
            let n = fourier::frequency(k, m) as f64;
            let weight = if m.is_multiple_of(2) && k == m / 2 { 0.0 } else { 1.0 };
            let e = c * Complex64::from_polar(1.0, n * t) * weight;
            v += e.re;
            dv += (e * Complex64::new(0.0, n)).re;
        }
        (t + v, 1.0 + dv)
    };
    let mut out = Vec::with_capacity(m);
    for k in 0..m {
        let mut target = k as f64 * h;
        while target < sigma[0] {
            target += 2.0 * PI;
        }
        while target >= sigma[0] + 2.0 * PI {
            target -= 2.0 * PI;
        }
        let j = sigma.partition_point(|&v| v <= target).max(1) - 1;
        let (s0, s1) = (sigma[j], if j + 1 < m { sigma[j + 1] } else { sigma[0] + 2.0 * PI });
        let mut t = (j as f64 + (target - s0) / (s1 - s0)) * h;
        for _ in 0..30 {
            let (v, dv) = interp(t);
            let step = (v - target) / dv;
            t -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        out.push(eval(t).0);
    }
    Ok(out)
}
