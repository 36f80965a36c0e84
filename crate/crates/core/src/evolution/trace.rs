use num_complex::Complex64;

use crate::error::{LoewnerError, Result};

/// Points on the real axis other than the base point closer than this are rejected.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// A simple curve in the closed upper half-plane starting on the real line,
/// optionally stamped with half-plane capacity.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfPlaneTrace {
    points: Vec<Complex64>,
    capacities: Option<Vec<f64>>,
}

impl HalfPlaneTrace {
    pub fn new(points: Vec<Complex64>, capacities: Option<Vec<f64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(LoewnerError::InvalidInput("trace has no points".into()));
        }
        if let Some(k) = points.iter().position(|p| !p.re.is_finite() || !p.im.is_finite()) {
            return Err(LoewnerError::InvalidInput(format!("trace point {k} is not finite")));
        }
        if points[0].im.abs() > BOUNDARY_TOL {
            return Err(LoewnerError::InvalidInput(format!(
                "trace must start on the real line, got Im = {}",
                points[0].im
            )));
        }
        if let Some(k) = points.iter().skip(1).position(|p| p.im <= BOUNDARY_TOL) {
            return Err(LoewnerError::InvalidInput(format!(
                "trace point {} is not in the open upper half-plane",
                k + 1
            )));
        }
        if let Some(caps) = &capacities {
            if caps.len() != points.len() {
                return Err(LoewnerError::InvalidInput(format!(
                    "{} capacities for {} points",
                    caps.len(),
                    points.len()
                )));
            }
            if caps.windows(2).any(|w| !(w[1] > w[0])) {
                return Err(LoewnerError::InvalidInput(
                    "capacities must be strictly increasing".into(),
                ));
            }
        }
        let mut points = points;
        points[0].im = 0.0;
        Ok(Self { points, capacities })
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn capacities(&self) -> Option<&[f64]> {
        self.capacities.as_deref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn base(&self) -> f64 {
        self.points[0].re
    }

    /// Affine image `z -> scale * z + shift` (scale > 0, shift real); capacities scale by `scale^2`.
    pub fn affine(&self, scale: f64, shift: f64) -> Result<Self> {
        let points = self.points.iter().map(|z| z * scale + shift).collect();
        let caps = self
            .capacities
            .as_ref()
            .map(|c| c.iter().map(|t| t * scale * scale).collect());
        Self::new(points, caps)
    }

    /// Smallest distance between non-adjacent segments; zero means the polyline
    /// touches itself at sample resolution. Distances above the mean segment
    /// length are reported as infinity.
    pub fn min_nonadjacent_distance(&self) -> f64 {
        let pts = &self.points;
        let n = pts.len();
        if n < 4 {
            return f64::INFINITY;
        }
        // Bucket segments on a uniform grid sized to the mean segment length.
        let total: f64 = pts.windows(2).map(|w| (w[1] - w[0]).norm()).sum();
        let cell = (total / (n - 1) as f64).max(1e-300);
        let key = |z: Complex64| ((z.re / cell).floor() as i64, (z.im / cell).floor() as i64);
        let mut grid: std::collections::HashMap<(i64, i64), Vec<usize>> = Default::default();
        for s in 0..n - 1 {
            let (a, b) = (key(pts[s]), key(pts[s + 1]));
            for i in a.0.min(b.0) - 1..=a.0.max(b.0) + 1 {
                for j in a.1.min(b.1) - 1..=a.1.max(b.1) + 1 {
                    grid.entry((i, j)).or_default().push(s);
                }
            }
        }
        let mut best = f64::INFINITY;
        for bucket in grid.values() {
            for (ia, &s) in bucket.iter().enumerate() {
                for &r in &bucket[ia + 1..] {
                    if s.abs_diff(r) < 2 {
                        continue;
                    }
                    let d = segment_distance(pts[s], pts[s + 1], pts[r], pts[r + 1]);
                    if d <= cell {
                        best = best.min(d);
                    }
                }
            }
        }
        best
    }
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn point_segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let s = (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + ab * s)).norm()
}

fn segment_distance(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> f64 {
    let d1 = cross(b - a, c - a);
    let d2 = cross(b - a, d - a);
    let d3 = cross(d - c, a - c);
    let d4 = cross(d - c, b - c);
    if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
        return 0.0;
    }
    point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b))
}
