use num_complex::Complex64;
use rayon::prelude::*;

use super::driving::DrivingFunction;
use super::slit::{SlitKind, SlitMapChain, SlitStep};
use super::trace::HalfPlaneTrace;
use crate::error::{LoewnerError, Result};

/// Uniform capacity grid with `ceil(T * steps_per_unit_capacity)` steps.
pub fn capacity_grid(horizon: f64, steps_per_unit_capacity: usize) -> Result<Vec<f64>> {
    if steps_per_unit_capacity == 0 {
        return Err(LoewnerError::InvalidInput(
            "steps per unit capacity must be at least 1".into(),
        ));
    }
    let n = (horizon * steps_per_unit_capacity as f64).ceil().max(1.0) as usize;
    Ok((0..=n).map(|k| horizon * k as f64 / n as f64).collect())
}

/// Chain of elementary maps discretizing `w` on the uniform capacity grid.
///
/// Tilted slits follow the interpolated driving exactly between grid points, so
/// the chain is exact for drivings whose knots lie on the grid. Vertical slits
/// hold the driving at its mid-step value.
pub fn chain_from_driving(
    w: &DrivingFunction,
    steps_per_unit_capacity: usize,
    kind: SlitKind,
) -> Result<SlitMapChain> {
    let grid = capacity_grid(w.horizon(), steps_per_unit_capacity)?;
    let mut steps = Vec::with_capacity(grid.len() - 1);
    let mut current = w.start_value();
    for pair in grid.windows(2) {
        let target = match kind {
            SlitKind::TiltedSlit => w.eval(pair[1]),
            SlitKind::VerticalSlit => w.eval(0.5 * (pair[0] + pair[1])),
        };
        steps.push(SlitStep {
            capacity: pair[1] - pair[0],
            drift: target - current,
            kind,
        });
        current = target;
    }
    SlitMapChain::new(w.start_value(), steps)
}

/// Chain with one tilted slit per knot interval of `w`, which reproduces the
/// Loewner flow of the piecewise-linear driving exactly.
pub fn exact_chain(w: &DrivingFunction) -> Result<SlitMapChain> {
    let steps = w
        .times()
        .windows(2)
        .zip(w.values().windows(2))
        .map(|(t, v)| SlitStep {
            capacity: t[1] - t[0],
            drift: v[1] - v[0],
            kind: SlitKind::TiltedSlit,
        })
        .collect();
    SlitMapChain::new(w.start_value(), steps)
}

/// Tip positions `g_t^{-1}(W_t)` of the chain after each of its steps, with
/// the base point `W_0` prepended.
pub fn trace_of_chain(chain: &SlitMapChain) -> Result<HalfPlaneTrace> {
    let ends = chain.step_ends();
    let mut tips = Vec::with_capacity(chain.len());
    let mut current = chain.start();
    for s in chain.steps() {
        current += s.drift;
        tips.push(current);
    }
    let mut points = vec![Complex64::new(chain.start(), 0.0)];
    let body: Vec<Complex64> = ends
        .par_iter()
        .zip(tips.par_iter())
        .map(|(&end, &tip)| chain.inverse_prefix(end, Complex64::new(tip, 0.0)))
        .collect();
    if let Some(k) = body.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(LoewnerError::NonFiniteEvaluation(format!(
            "trace point {} (step size too coarse for the driving)",
            k + 1
        )));
    }
    points.extend(body);
    let mut capacities = Vec::with_capacity(points.len());
    let mut t = 0.0;
    capacities.push(t);
    for s in chain.steps() {
        t += s.capacity;
        capacities.push(t);
    }
    HalfPlaneTrace::new(points, Some(capacities))
}

/// Forward Loewner evolution with tilted slits.
pub fn solve_forward(w: &DrivingFunction, steps_per_unit_capacity: usize) -> Result<HalfPlaneTrace> {
    solve_forward_with(w, steps_per_unit_capacity, SlitKind::TiltedSlit)
}

pub fn solve_forward_with(
    w: &DrivingFunction,
    steps_per_unit_capacity: usize,
    kind: SlitKind,
) -> Result<HalfPlaneTrace> {
    let chain = chain_from_driving(w, steps_per_unit_capacity, kind)?;
    trace_of_chain(&chain)
}
