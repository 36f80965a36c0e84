//! Vertical-slit zipper: unzip a trace point by point, reading off the driving
//! function from the real part of each point's current image.

use num_complex::Complex64;
use rayon::prelude::*;

use super::driving::DrivingFunction;
use super::slit::{SlitKind, SlitMapChain, SlitStep};
use super::trace::HalfPlaneTrace;
use crate::error::{LoewnerError, Result};

const PARALLEL_THRESHOLD: usize = 4096;

/// Driving function and the vertical-slit chain that unzips the trace.
#[derive(Debug, Clone)]
pub struct Unzipped {
    pub driving: DrivingFunction,
    pub chain: SlitMapChain,
}

/// Unzip `trace`. At each step the image `zeta` of the next point is sent to the
/// real line by the vertical slit based at `Re zeta` of capacity `(Im zeta)^2 / 4`.
pub fn unzip(trace: &HalfPlaneTrace) -> Result<Unzipped> {
    let pts = trace.points();
    if pts.len() < 3 {
        return Err(LoewnerError::InvalidInput(
            "extracting a driving function needs at least 3 trace points".into(),
        ));
    }
    for k in 0..pts.len() - 1 {
        let scale = pts[k].norm().max(pts[k + 1].norm()).max(f64::MIN_POSITIVE);
        if (pts[k + 1] - pts[k]).norm() <= 1e-14 * scale {
            return Err(LoewnerError::DegenerateStep { index: k });
        }
    }

    let base = pts[0].re;
    let mut images: Vec<Complex64> = pts[1..].to_vec();
    let mut times = vec![0.0];
    let mut values = vec![base];
    let mut steps = Vec::with_capacity(images.len());
    let mut t = 0.0;
    let mut previous = base;

    for k in 0..images.len() {
        let zeta = images[k];
        if !(zeta.im > 1e-12 * (1.0 + (zeta.re - previous).abs())) || !zeta.re.is_finite() {
            return Err(LoewnerError::SelfIntersection { index: k + 1 });
        }
        let c = zeta.re;
        let h2 = zeta.im * zeta.im;
        let map = |w: &mut Complex64| {
            let d = *w - c;
            let s = (d * d + h2).sqrt();
            *w = if s.im < 0.0 || (s.im == 0.0 && s.re * d.re < 0.0) {
                c - s
            } else {
                c + s
            };
        };
        let rest = &mut images[k + 1..];
        if rest.len() >= PARALLEL_THRESHOLD {
            rest.par_iter_mut().for_each(map);
        } else {
            rest.iter_mut().for_each(map);
        }
        let capacity = h2 / 4.0;
        t += capacity;
        steps.push(SlitStep {
            capacity,
            drift: c - previous,
            kind: SlitKind::VerticalSlit,
        });
        times.push(t);
        values.push(c);
        previous = c;
    }

    Ok(Unzipped {
        driving: DrivingFunction::new(times, values)?,
        chain: SlitMapChain::new(base, steps)?,
    })
}

/// Driving function of the trace, sampled at the capacities the unzipping induces.
pub fn extract_driving(trace: &HalfPlaneTrace) -> Result<DrivingFunction> {
    unzip(trace).map(|u| u.driving)
}
