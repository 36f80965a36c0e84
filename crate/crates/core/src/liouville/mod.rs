//! Conformal maps of the two sides of a Jordan curve and the universal Liouville action.

pub mod fit;
pub mod infinite;
pub mod series;
mod szego;
mod theodorsen;
pub mod welding;

use serde::{Deserialize, Serialize};

pub use fit::{base_point, fit_exterior_map, fit_exterior_map_with, fit_interior_map, fit_interior_map_with, MapMethod};
pub use infinite::{infinite_curve_energy, infinite_curve_energy_of_driving, InfiniteCurveEnergy};
pub use series::{DirichletSum, DiskMapSeries, ExteriorMapSeries};
pub use welding::{boundary_mismatch, qs_constant_estimate, welding_map, WeldingMap};

use crate::curve::JordanCurve;
use crate::error::{LoewnerError, Result};

/// Relative boundary mismatch (in units of the diameter) tolerated between `f` and `g`.
pub const MISMATCH_TOL: f64 = 1e-4;
pub const DEFAULT_ORDER: usize = 128;
pub const MAX_ORDER: usize = 2048;

/// Loop energy `(D_int + D_ext)/pi + 4 log |f'(0) / g'(inf)|`, where `D` are the
/// Dirichlet integrals of the log-derivatives.
pub fn universal_liouville_action(f: &DiskMapSeries, g: &ExteriorMapSeries) -> Result<f64> {
    let diameter = boundary_diameter(f);
    let mismatch = boundary_mismatch(f, g, 128);
    if mismatch > MISMATCH_TOL * diameter {
        return Err(LoewnerError::MismatchedCurve {
            mismatch: mismatch / diameter,
        });
    }
    Ok(action_terms(f, g)?.energy)
}

fn boundary_diameter(f: &DiskMapSeries) -> f64 {
    let pts = f.boundary(128);
    let mut d: f64 = 0.0;
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            d = d.max((p - q).norm());
        }
    }
    d
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ActionTerms {
    pub energy: f64,
    pub interior: DirichletSum,
    pub exterior: DirichletSum,
    /// `log |f'(0) / g'(inf)|`.
    pub log_ratio: f64,
}

pub fn action_terms(f: &DiskMapSeries, g: &ExteriorMapSeries) -> Result<ActionTerms> {
    let interior = f.log_deriv_dirichlet()?;
    let exterior = g.log_deriv_dirichlet()?;
    let log_ratio = (f.leading().norm() / g.leading.norm()).ln();
    let energy = (interior.value + exterior.value) / std::f64::consts::PI + 4.0 * log_ratio;
    Ok(ActionTerms {
        energy,
        interior,
        exterior,
        log_ratio,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiouvilleEnergy {
    pub energy: f64,
    pub order: usize,
    pub terms: ActionTerms,
    /// Whether the Dirichlet tails fell below `1e-8` and the two boundaries agreed
    /// before the order ceiling.
    pub converged: bool,
    pub interior: DiskMapSeries,
    pub exterior: ExteriorMapSeries,
}

/// Fit both maps at increasing order, doubling from `order` until the Dirichlet
/// tails are negligible and the boundaries match, and evaluate the action.
pub fn liouville_energy(curve: &JordanCurve, order: usize, method: MapMethod) -> Result<LiouvilleEnergy> {
    let mut n = order.max(2);
    loop {
        let f = fit_interior_map_with(curve, n, method)?;
        let g = fit_exterior_map_with(curve, n, method)?;
        let terms = action_terms(&f, &g)?;
        let diameter = boundary_diameter(&f);
        let mismatch = boundary_mismatch(&f, &g, 128) / diameter;
        let converged = !terms.interior.tail_significant()
            && !terms.exterior.tail_significant()
            && mismatch <= MISMATCH_TOL;
        if converged || 2 * n > MAX_ORDER {
            if mismatch > MISMATCH_TOL {
                return Err(LoewnerError::MismatchedCurve { mismatch });
            }
            return Ok(LiouvilleEnergy {
                energy: terms.energy,
                order: n,
                terms,
                converged,
                interior: f,
                exterior: g,
            });
        }
        n *= 2;
    }
}
