//! Closed Jordan curves given by a smooth periodic parametrization on `[0, 2pi)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LoewnerError, Result};
use crate::numerics::fourier;

/// Orientation-preserving Möbius map `z -> (a z + b) / (c z + d)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mobius {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Mobius {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        if (a * d - b * c).norm() == 0.0 {
            return Err(LoewnerError::InvalidInput("Möbius map is degenerate".into()));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let den = self.c * z + self.d;
        (self.a * self.d - self.b * self.c) / (den * den)
    }

    /// Pole of the map, if any.
    pub fn pole(&self) -> Option<Complex64> {
        (self.c.norm() > 0.0).then(|| -self.d / self.c)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Parametrization {
    /// `center + sum_k c_k e^{i k t}`.
    Trig {
        center: Complex64,
        coeffs: Vec<(i64, Complex64)>,
    },
    /// Image of another curve under a Möbius map with its pole off the curve.
    Mobius {
        inner: Box<JordanCurve>,
        map: Mobius,
    },
}

/// A Jordan curve `t -> z(t)`, `t in [0, 2pi)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JordanCurve {
    pub param: Parametrization,
    /// Traverse the parametrization backwards.
    #[serde(default)]
    pub reversed: bool,
}

impl JordanCurve {
    pub fn trig(center: Complex64, coeffs: Vec<(i64, Complex64)>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(LoewnerError::InvalidInput("trig curve has no coefficients".into()));
        }
        let curve = Self {
            param: Parametrization::Trig { center, coeffs },
            reversed: false,
        };
        curve.validate()?;
        Ok(curve)
    }

    pub fn circle(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(LoewnerError::InvalidInput("radius must be positive".into()));
        }
        Self::trig(center, vec![(1, Complex64::new(radius, 0.0))])
    }

    /// Boundary of the image of the exterior disk under `z -> z + c / z`.
    pub fn joukowski(c: f64) -> Result<Self> {
        if !(c.abs() < 1.0) {
            return Err(LoewnerError::InvalidInput("joukowski parameter must satisfy |c| < 1".into()));
        }
        Self::trig(
            Complex64::new(0.0, 0.0),
            vec![(1, Complex64::new(1.0, 0.0)), (-1, Complex64::new(c, 0.0))],
        )
    }

    /// Trigonometric interpolant of a closed polygon (first point not repeated).
    pub fn from_points(points: &[Complex64]) -> Result<Self> {
        if points.len() < 8 {
            return Err(LoewnerError::InvalidInput("need at least 8 curve points".into()));
        }
        if points.first() == points.last() {
            return Err(LoewnerError::InvalidInput(
                "closed point list must not repeat its first point".into(),
            ));
        }
        let m = points.len();
        let c = fourier::coefficients(points);
        let mut coeffs = Vec::with_capacity(m);
        for (k, ck) in c.iter().enumerate() {
            let n = fourier::frequency(k, m);
            if n == 0 {
                continue;
            }
            if m.is_multiple_of(2) && k == m / 2 {
                // split the Nyquist mode symmetrically so the interpolant stays real-analytic
                coeffs.push((n, ck * 0.5));
                coeffs.push((-n, ck * 0.5));
            } else {
                coeffs.push((n, *ck));
            }
        }
        Self::trig(c[0], coeffs)
    }

    pub fn mobius_image(&self, map: Mobius) -> Result<Self> {
        if let Some(p) = map.pole() {
            let samples = self.sample(512);
            let d = samples.iter().map(|z| (z - p).norm()).fold(f64::INFINITY, f64::min);
            if d < 1e-6 * self.diameter() {
                return Err(LoewnerError::InvalidInput("Möbius pole lies on the curve".into()));
            }
        }
        Ok(Self {
            param: Parametrization::Mobius {
                inner: Box::new(self.clone()),
                map,
            },
            reversed: false,
        })
    }

    pub fn reversed(&self) -> Self {
        Self {
            param: self.param.clone(),
            reversed: !self.reversed,
        }
    }

    /// Point and derivative with respect to `t`.
    pub fn eval(&self, t: f64) -> (Complex64, Complex64) {
        let (z, dz) = self.eval_forward(if self.reversed { -t } else { t });
        (z, if self.reversed { -dz } else { dz })
    }

    fn eval_forward(&self, t: f64) -> (Complex64, Complex64) {
        match &self.param {
            Parametrization::Trig { center, coeffs } => {
                let mut z = *center;
                let mut dz = Complex64::new(0.0, 0.0);
                for &(k, c) in coeffs {
                    let e = c * Complex64::from_polar(1.0, k as f64 * t);
                    z += e;
                    dz += e * Complex64::new(0.0, k as f64);
                }
                (z, dz)
            }
            Parametrization::Mobius { inner, map } => {
                let (w, dw) = inner.eval(t);
                (map.apply(w), map.derivative(w) * dw)
            }
        }
    }

    /// `m` equispaced samples.
    pub fn sample(&self, m: usize) -> Vec<Complex64> {
        (0..m)
            .map(|j| self.eval(2.0 * PI * j as f64 / m as f64).0)
            .collect()
    }

    pub fn diameter(&self) -> f64 {
        let pts = self.sample(256);
        let mut d: f64 = 0.0;
        for (i, p) in pts.iter().enumerate() {
            for q in &pts[i + 1..] {
                d = d.max((p - q).norm());
            }
        }
        d
    }

    /// Signed enclosed area (positive for counter-clockwise traversal) and area
    /// centroid, by the trapezoid rule on `m` nodes.
    pub fn area_and_centroid(&self, m: usize) -> (f64, Complex64) {
        let h = 2.0 * PI / m as f64;
        let (mut area, mut mx, mut my) = (0.0, 0.0, 0.0);
        for j in 0..m {
            let (z, dz) = self.eval(j as f64 * h);
            area += 0.5 * (z.re * dz.im - z.im * dz.re);
            mx += 0.5 * z.re * z.re * dz.im;
            my -= 0.5 * z.im * z.im * dz.re;
        }
        area *= h;
        (area, Complex64::new(mx * h / area, my * h / area))
    }

    /// Checks simplicity at sample resolution, winding number one about the
    /// centroid and a nonvanishing derivative.
    pub fn validate(&self) -> Result<()> {
        let m = 1024;
        let h = 2.0 * PI / m as f64;
        let mut speed_max: f64 = 0.0;
        let mut speed_min = f64::INFINITY;
        let mut pts = Vec::with_capacity(m);
        for j in 0..m {
            let (z, dz) = self.eval(j as f64 * h);
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(LoewnerError::InvalidInput("curve evaluates to a non-finite point".into()));
            }
            speed_max = speed_max.max(dz.norm());
            speed_min = speed_min.min(dz.norm());
            pts.push(z);
        }
        if !(speed_min > 1e-10 * speed_max) {
            return Err(LoewnerError::InvalidInput("curve parametrization is singular".into()));
        }
        let (area, centroid) = self.area_and_centroid(m);
        let mut winding = 0.0;
        for j in 0..m {
            let a = pts[j] - centroid;
            let b = pts[(j + 1) % m] - centroid;
            winding += (b / a).arg();
        }
        if ((winding.abs() / (2.0 * PI)) - 1.0).abs() > 1e-6 || area == 0.0 {
            return Err(LoewnerError::InvalidInput(
                "curve does not wind once about its centroid".into(),
            ));
        }
        if polygon_self_intersects(&pts) {
            return Err(LoewnerError::InvalidInput("curve is not simple".into()));
        }
        Ok(())
    }
}

fn polygon_self_intersects(pts: &[Complex64]) -> bool {
    let m = pts.len();
    let cross = |a: Complex64, b: Complex64| a.re * b.im - a.im * b.re;
    let seg = |i: usize| (pts[i], pts[(i + 1) % m]);
    // sort segments by their leftmost x so only overlapping x-ranges are compared
    let mut order: Vec<usize> = (0..m).collect();
    let lo = |i: usize| seg(i).0.re.min(seg(i).1.re);
    let hi = |i: usize| seg(i).0.re.max(seg(i).1.re);
    order.sort_by(|&a, &b| lo(a).total_cmp(&lo(b)));
    for (oi, &i) in order.iter().enumerate() {
        let (a, b) = seg(i);
        for &j in &order[oi + 1..] {
            if lo(j) > hi(i) {
                break;
            }
            if (i + 1) % m == j || (j + 1) % m == i || i == j {
                continue;
            }
            let (c, d) = seg(j);
            let d1 = cross(b - a, c - a);
            let d2 = cross(b - a, d - a);
            let d3 = cross(d - c, a - c);
            let d4 = cross(d - c, b - c);
            if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
                return true;
            }
        }
    }
    false
}
