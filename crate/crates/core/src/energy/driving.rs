use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LoewnerError, Result};
use crate::evolution::{extract_driving, DrivingFunction, HalfPlaneTrace};

/// Points of a slit-plane chord closer than this to the positive real axis
/// count as touching it.
pub const SLIT_TOL: f64 = 1e-12;

/// Relative change between successive refinements above which an energy is
/// reported as non-convergent.
pub const DIVERGENCE_THRESHOLD: f64 = 0.1;

/// `1/2 * integral of w'^2`, exact for the piecewise-linear interpolant.
pub fn dirichlet_energy(w: &DrivingFunction) -> f64 {
    w.times()
        .windows(2)
        .zip(w.values().windows(2))
        .map(|(t, v)| 0.5 * (v[1] - v[0]).powi(2) / (t[1] - t[0]))
        .sum()
}

/// Loewner energy of a chord in the upper half-plane from its base point to infinity.
pub fn chordal_energy(trace: &HalfPlaneTrace) -> Result<f64> {
    Ok(dirichlet_energy(&extract_driving(trace)?))
}

/// Energy computed on a sequence of refinements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefinedEnergy {
    /// Value at each refinement level, coarsest first.
    pub levels: Vec<f64>,
    pub converged: bool,
}

impl RefinedEnergy {
    pub fn from_levels(levels: Vec<f64>) -> Self {
        let converged = levels.windows(2).all(|p| {
            let change = (p[1] - p[0]).abs();
            change <= DIVERGENCE_THRESHOLD * p[1].abs() || change <= 1e-3
        });
        Self { levels, converged }
    }

    /// Finest value if the sequence stabilized.
    pub fn value(&self) -> Option<f64> {
        if self.converged {
            self.levels.last().copied()
        } else {
            None
        }
    }

    pub fn finest(&self) -> f64 {
        *self.levels.last().expect("at least one level")
    }
}

/// Image of a chord of the slit plane `C \ [0, inf)` under the square root with
/// argument in `(0, pi)`, which uniformizes the slit plane onto the upper half-plane.
pub fn unslit(eta: &[Complex64]) -> Result<HalfPlaneTrace> {
    if eta.len() < 3 {
        return Err(LoewnerError::InvalidInput("chord needs at least 3 points".into()));
    }
    if eta[0].norm() > SLIT_TOL {
        return Err(LoewnerError::InvalidInput("slit-plane chord must start at 0".into()));
    }
    let mut out = Vec::with_capacity(eta.len());
    out.push(Complex64::new(0.0, 0.0));
    for (k, &z) in eta.iter().enumerate().skip(1) {
        if z.re > 0.0 && z.im.abs() <= SLIT_TOL * (1.0 + z.re) {
            return Err(LoewnerError::SlitCollision { index: k });
        }
        let mut arg = z.im.atan2(z.re);
        if arg < 0.0 {
            arg += 2.0 * std::f64::consts::PI;
        }
        out.push(Complex64::from_polar(z.norm().sqrt(), 0.5 * arg));
    }
    HalfPlaneTrace::new(out, None)
}

/// Split every segment of a polyline into `factor` equal pieces.
pub fn subdivide(points: &[Complex64], factor: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity((points.len() - 1) * factor + 1);
    for p in points.windows(2) {
        for j in 0..factor {
            out.push(p[0] + (p[1] - p[0]) * (j as f64 / factor as f64));
        }
    }
    out.extend(points.last());
    out
}

/// Loop energy of `eta ∪ [0, inf)` as the chordal energy of `eta` in the slit
/// plane, checked under three 4x refinements of the polyline.
pub fn loop_energy_via_chord(eta: &[Complex64]) -> Result<RefinedEnergy> {
    let mut levels = Vec::with_capacity(3);
    let mut pts = eta.to_vec();
    for level in 0..3 {
        if level > 0 {
            pts = subdivide(&pts, 4);
        }
        levels.push(chordal_energy(&unslit(&pts)?)?);
    }
    Ok(RefinedEnergy::from_levels(levels))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dirichlet_energy_of_simple_drivings() {
        assert_eq!(dirichlet_energy(&DrivingFunction::constant(0.0, 2.0).unwrap()), 0.0);
        let lin = DrivingFunction::linear(2.0, 3.0).unwrap();
        assert!((dirichlet_energy(&lin) - 6.0).abs() < 1e-12);
        let tent = DrivingFunction::from_knots(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]).unwrap();
        assert!((dirichlet_energy(&tent) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn negative_axis_has_zero_loop_energy() {
        let eta: Vec<_> = (0..200).map(|k| Complex64::new(-(k as f64) * 0.05, 0.0)).collect();
        let e = loop_energy_via_chord(&eta).unwrap();
        assert!(e.converged);
        assert!(e.finest().abs() < 1e-9, "{:?}", e.levels);
    }

    #[test]
    fn chord_on_the_slit_is_rejected() {
        let eta = vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(-1.0, 1.0),
            Complex64::new(2.0, 0.0),
        ];
        assert_eq!(unslit(&eta).unwrap_err(), LoewnerError::SlitCollision { index: 2 });
    }

    #[test]
    fn subdivision_keeps_endpoints() {
        let p = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 1.0)];
        let q = subdivide(&p, 4);
        assert_eq!(q.len(), 5);
        assert_eq!(q[4], p[1]);
        assert_eq!(q[2], Complex64::new(0.5, 0.5));
    }
}
