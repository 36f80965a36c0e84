//! Loop energy of `[0, inf) ∪ eta` from the conformal maps of its two complementary
//! components, for `eta` a chord of the slit plane given by its driving function.
//!
//! With `H` the inverse of the uniformizing map of the driven chord in the upper
//! half-plane and `W_T` its end value, the maps
//! `f(u) = H(W_T + sqrt(u))^2` on the upper half-plane and
//! `g(u) = H(W_T - sqrt(u))^2` on the lower half-plane send each half-plane onto
//! one component, and the energy is `(1/pi)` times the sum of the integrals of
//! `|f''/f'|^2` and `|g''/g'|^2`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LoewnerError, Result};
use crate::evolution::forward::exact_chain;
use crate::evolution::{DrivingFunction, SlitMapChain};
use crate::numerics::quadrature::{adaptive, gk_rect, Rect};

/// Dyadic range of `|u| / T` covered by the quadrature.
const LOG2_MIN: i32 = -20;
const LOG2_MAX: i32 = 10;
const ANGLE_PIECES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InfiniteCurveEnergy {
    pub value: f64,
    /// Contribution of the component reached from the upper half-plane (already divided by pi).
    pub upper: f64,
    pub lower: f64,
    /// Cubature error estimate (divided by pi).
    pub error: f64,
    /// Extrapolated contributions from outside the covered annuli (divided by pi).
    pub tail: f64,
}

#[derive(Debug, Clone, Copy)]
enum Side {
    Upper,
    Lower,
}

/// `f''/f'` at `u` for the map reached from the given side.
fn log_derivative_slope(chain: &SlitMapChain, side: Side, u: Complex64) -> Result<Complex64> {
    let root = u.sqrt();
    let s = match side {
        Side::Upper => root,
        Side::Lower => -root,
    };
    let jet = chain.inverse_jet(chain.end_value() + s)?;
    let z = jet.value - chain.start();
    let ds = 0.5 / s;
    Ok(jet.derivative * ds / z + jet.log_derivative_slope * ds - 0.5 / u)
}

/// Integrand in `(log |u|, arg u)` coordinates, area element included.
fn density(chain: &SlitMapChain, side: Side, rho: f64, theta: f64) -> f64 {
    let u = Complex64::from_polar(rho.exp(), theta);
    match log_derivative_slope(chain, side, u) {
        Ok(l) => l.norm_sqr() * u.norm_sqr(),
        Err(_) => f64::NAN,
    }
}

fn angle_range(side: Side) -> (f64, f64) {
    match side {
        Side::Upper => (0.0, PI),
        Side::Lower => (-PI, 0.0),
    }
}

fn annulus(side: Side, rho0: f64, rho1: f64) -> Vec<Rect> {
    let (a, b) = angle_range(side);
    let h = (b - a) / ANGLE_PIECES as f64;
    (0..ANGLE_PIECES)
        .map(|k| Rect::new(rho0, rho1, a + k as f64 * h, a + (k + 1) as f64 * h))
        .collect()
}

fn annulus_integral(chain: &SlitMapChain, side: Side, rho0: f64, rho1: f64) -> f64 {
    let f = |r: f64, t: f64| density(chain, side, r, t);
    annulus(side, rho0, rho1).iter().map(|r| gk_rect(&f, r).0).sum()
}

/// Geometric extrapolation from two consecutive annulus contributions, the
/// nearer one first.
fn geometric_tail(near: f64, far: f64) -> f64 {
    if near <= 0.0 || far <= 0.0 || far >= near {
        return 0.0;
    }
    let r = far / near;
    far * r / (1.0 - r)
}

pub fn infinite_curve_energy(chain: &SlitMapChain) -> Result<InfiniteCurveEnergy> {
    infinite_curve_energy_with(chain, 1e-6)
}

pub fn infinite_curve_energy_with(chain: &SlitMapChain, rel_tol: f64) -> Result<InfiniteCurveEnergy> {
    if chain.is_empty() {
        return Ok(InfiniteCurveEnergy {
            value: 0.0,
            upper: 0.0,
            lower: 0.0,
            error: 0.0,
            tail: 0.0,
        });
    }
    let scale = chain.total_capacity().ln();
    let ln2 = std::f64::consts::LN_2;
    let rho = |k: i32| scale + k as f64 * ln2;
    let mut parts = [0.0; 2];
    let (mut error, mut tail) = (0.0, 0.0);
    for (slot, side) in [Side::Upper, Side::Lower].into_iter().enumerate() {
        let mut rects = Vec::new();
        for k in LOG2_MIN..LOG2_MAX {
            rects.extend(annulus(side, rho(k), rho(k + 1)));
        }
        let f = |r: f64, t: f64| density(chain, side, r, t);
        let cub = adaptive(&f, &rects, 1e-10, rel_tol, 200_000).map_err(|e| match e {
            LoewnerError::QuadratureNoConvergence(msg) => LoewnerError::QuadratureNoConvergence(
                format!("half-plane integral: {msg}"),
            ),
            other => other,
        })?;
        let outer = geometric_tail(
            annulus_integral(chain, side, rho(LOG2_MAX - 2), rho(LOG2_MAX - 1)),
            annulus_integral(chain, side, rho(LOG2_MAX - 1), rho(LOG2_MAX)),
        );
        let inner = geometric_tail(
            annulus_integral(chain, side, rho(LOG2_MIN + 1), rho(LOG2_MIN + 2)),
            annulus_integral(chain, side, rho(LOG2_MIN), rho(LOG2_MIN + 1)),
        );
        parts[slot] = (cub.value + outer + inner) / PI;
        error += cub.error / PI;
        tail += (outer + inner) / PI;
    }
    Ok(InfiniteCurveEnergy {
        value: parts[0] + parts[1],
        upper: parts[0],
        lower: parts[1],
        error,
        tail,
    })
}

/// Energy of `[0, inf) ∪ eta` where `sqrt(eta)` is driven by the piecewise-linear
/// `w` (taken relative to its start value) and continues as a hyperbolic geodesic.
pub fn infinite_curve_energy_of_driving(w: &DrivingFunction) -> Result<InfiniteCurveEnergy> {
    infinite_curve_energy(&exact_chain(w)?)
}
