use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::series::{DiskMapSeries, ExteriorMapSeries};
use super::{szego, theodorsen};
use crate::curve::JordanCurve;
use crate::error::{LoewnerError, Result};
use crate::numerics::fourier;

/// Largest node count for the dense Szegő solve.
const SZEGO_MAX_NODES: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapMethod {
    /// Theodorsen iteration, falling back to the Szegő kernel when the curve is
    /// not star-shaped about the base point or the iteration stalls.
    #[default]
    Auto,
    Theodorsen,
    Szego,
}

/// Base point of the interior map: the area centroid.
pub fn base_point(curve: &JordanCurve) -> Complex64 {
    curve.area_and_centroid(4096).1
}

fn boundary_values(
    eval: &theodorsen::Boundary<'_>,
    base: Complex64,
    n: usize,
    method: MapMethod,
) -> Result<Vec<Complex64>> {
    let m = 4 * n;
    let grid = (8 * n).max(1024);
    match method {
        MapMethod::Theodorsen => theodorsen::boundary_values(eval, base, m, grid),
        MapMethod::Szego => szego::boundary_values(eval, base, m.min(SZEGO_MAX_NODES)),
        MapMethod::Auto => match theodorsen::boundary_values(eval, base, m, grid) {
            Err(LoewnerError::NotStarShaped | LoewnerError::NoConvergence(_)) => {
                szego::boundary_values(eval, base, m.min(SZEGO_MAX_NODES))
            }
            other => other,
        },
    }
}

fn check_order(n: usize) -> Result<()> {
    if n < 2 {
        return Err(LoewnerError::InvalidInput("series order must be at least 2".into()));
    }
    Ok(())
}

pub fn fit_interior_map(curve: &JordanCurve, n: usize) -> Result<DiskMapSeries> {
    fit_interior_map_with(curve, n, MapMethod::Auto)
}

pub fn fit_interior_map_with(curve: &JordanCurve, n: usize, method: MapMethod) -> Result<DiskMapSeries> {
    check_order(n)?;
    let w0 = base_point(curve);
    let eval = |t: f64| curve.eval(t);
    let values = boundary_values(&eval, w0, n, method)?;
    let c = fourier::coefficients(&values);
    let take = n.min(c.len() / 2 - 1);
    DiskMapSeries::new(w0, c[1..=take].to_vec())
}

pub fn fit_exterior_map(curve: &JordanCurve, n: usize) -> Result<ExteriorMapSeries> {
    fit_exterior_map_with(curve, n, MapMethod::Auto)
}

/// Exterior map through the inversion `z -> 1/(z - w0)`, which turns the
/// exterior into a bounded domain around the origin.
pub fn fit_exterior_map_with(
    curve: &JordanCurve,
    n: usize,
    method: MapMethod,
) -> Result<ExteriorMapSeries> {
    check_order(n)?;
    let w0 = base_point(curve);
    let inverted = |t: f64| {
        let (z, dz) = curve.eval(t);
        let d = z - w0;
        (1.0 / d, -dz / (d * d))
    };
    let values = boundary_values(&inverted, Complex64::new(0.0, 0.0), n, method)?;
    let m = values.len();
    // F(e^{is}) = zeta  gives  g(e^{-is}) = w0 + 1/zeta
    let mut g_vals = vec![Complex64::new(0.0, 0.0); m];
    for (k, zeta) in values.iter().enumerate() {
        g_vals[(m - k) % m] = w0 + 1.0 / zeta;
    }
    let c = fourier::coefficients(&g_vals);
    let take = n.min(m / 2 - 2);
    ExteriorMapSeries::new(c[1], c[0], (1..=take).map(|k| c[m - k]).collect())
}
