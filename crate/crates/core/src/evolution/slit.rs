//! Elementary half-plane slit maps and their compositions.
//!
//! Every elementary map is the time-`dt` Loewner flow of a driving function that
//! is linear on the step, `W_s = c + a s` for `s in [0, dt]`. With
//! `G = g - W_s` the flow conserves
//!
//! ```text
//! Psi(G) + s,   Psi(G) = -2 (y + log(1 - y)) / a^2,   y = a G / 2,
//! ```
//!
//! so one step maps `G0 = z - c` to the root `G1` of `Psi(G1) = Psi(G0) + dt` and
//! `g = c + a dt + G1`. For `a = 0` this is the vertical slit
//! `g = c + sqrt((z - c)^2 + 4 dt)`. Both directions are solved by Newton's method
//! started from the vertical slit placed at the mid-step driving value.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LoewnerError, Result};

/// Drifting steps with `|a| sqrt(dt)` above this are split into sub-steps so the
/// vertical-slit start of Newton's method stays in the basin of the right root.
const MAX_DRIFT_PARAMETER: f64 = 0.25;
const NEWTON_MAX_ITER: usize = 80;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SlitKind {
    /// Driving held constant over the step (after a jump of `drift`).
    VerticalSlit,
    /// Driving moves linearly by `drift` over the step; the image of the step is a
    /// tilted, curved slit attached to the previous tip.
    TiltedSlit,
}

/// Descriptor of one elementary map: capacity increment, driving displacement, kind.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlitStep {
    pub capacity: f64,
    pub drift: f64,
    pub kind: SlitKind,
}

/// One elementary map in absolute coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Elementary {
    /// Driving value at the start of the flow.
    c: f64,
    /// Driving slope.
    a: f64,
    dt: f64,
}

/// `q(y) = -(y + log(1 - y)) / y^2 = sum_k y^k / (k + 2)`.
fn q(y: Complex64) -> Complex64 {
    if y.norm() < 0.25 {
        let mut acc = Complex64::new(0.0, 0.0);
        // 0.25^40 is below double precision
        for k in (0..40).rev() {
            acc = acc * y + 1.0 / (k as f64 + 2.0);
        }
        acc
    } else {
        let one_minus = Complex64::new(1.0 - y.re, -y.im);
        -(y + one_minus.ln()) / (y * y)
    }
}

/// Pick the square root with non-negative imaginary part; on the real axis pick
/// the one whose real part has the sign of `hint`.
fn sqrt_upper(w: Complex64, hint: f64) -> Complex64 {
    let s = w.sqrt();
    if s.im < 0.0 || (s.im == 0.0 && s.re * hint < 0.0) {
        -s
    } else {
        s
    }
}

impl Elementary {
    fn psi(&self, g: Complex64) -> Complex64 {
        let mut g = g;
        if g.im == 0.0 {
            // approach the real axis from the upper half-plane
            g.im = 0.0;
        }
        let y = g * (self.a * 0.5);
        g * g * 0.5 * q(y)
    }

    fn psi_prime(&self, g: Complex64) -> Complex64 {
        g / (2.0 - g * self.a)
    }

    fn solve(&self, target: Complex64, start: Complex64) -> Complex64 {
        let scale = start.norm() + self.dt.sqrt();
        let mut g = start;
        for _ in 0..NEWTON_MAX_ITER {
            let step = (self.psi(g) - target) / self.psi_prime(g);
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            g -= step;
            if step.norm() <= 1e-15 * scale {
                break;
            }
        }
        if g.im < 0.0 && g.im > -1e-13 * scale {
            g.im = 0.0;
        }
        g
    }

    /// Newton from `guess`, retried from the other square-root branch `other` when
    /// the first root lands below the real axis. Points close to the guessing
    /// slit can start on the wrong side of it.
    fn solve_upper(&self, target: Complex64, guess: Complex64, other: Complex64) -> Complex64 {
        let g = self.solve(target, guess);
        if g.im >= 0.0 {
            return g;
        }
        let h = self.solve(target, other);
        if h.im >= 0.0 {
            h
        } else {
            g
        }
    }

    fn forward(&self, z: Complex64) -> Complex64 {
        let g0 = z - self.c;
        if self.a == 0.0 {
            return self.c + sqrt_upper(g0 * g0 + 4.0 * self.dt, g0.re);
        }
        let half = self.a * self.dt * 0.5;
        let root = sqrt_upper((g0 - half) * (g0 - half) + 4.0 * self.dt, g0.re);
        let g1 = self.solve_upper(self.psi(g0) + self.dt, root - half, -root - half);
        self.c + self.a * self.dt + g1
    }

    fn inverse(&self, zeta: Complex64) -> Complex64 {
        let g1 = zeta - self.c - self.a * self.dt;
        if self.a == 0.0 {
            return self.c + sqrt_upper(g1 * g1 - 4.0 * self.dt, g1.re);
        }
        let half = self.a * self.dt * 0.5;
        let root = sqrt_upper((g1 + half) * (g1 + half) - 4.0 * self.dt, g1.re + half);
        let g0 = self.solve_upper(self.psi(g1) - self.dt, root + half, -root + half);
        self.c + g0
    }

    /// Derivative factor `dG1/dG0` given both ends of the flow.
    fn ratio(&self, g0: Complex64, g1: Complex64) -> Complex64 {
        (g0 * (2.0 - g1 * self.a)) / ((2.0 - g0 * self.a) * g1)
    }

    /// `1/G + a/(2 - aG)`, the logarithmic derivative of `Psi'`.
    fn log_psi_prime_deriv(&self, g: Complex64) -> Complex64 {
        1.0 / g + self.a / (2.0 - g * self.a)
    }
}

/// Value of a composed map together with its first derivative and the
/// derivative of the logarithm of that derivative (`h''/h'`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: Complex64,
    pub derivative: Complex64,
    pub log_derivative_slope: Complex64,
}

impl Jet {
    pub fn identity(z: Complex64) -> Self {
        Self {
            value: z,
            derivative: Complex64::new(1.0, 0.0),
            log_derivative_slope: Complex64::new(0.0, 0.0),
        }
    }

    /// Compose with an outer map given its value, derivative and `h''/h'` at `self.value`.
    pub fn then(self, value: Complex64, derivative: Complex64, slope: Complex64) -> Self {
        Self {
            value,
            derivative: derivative * self.derivative,
            log_derivative_slope: self.log_derivative_slope + slope * self.derivative,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// The uniformizing map `g_T` from the slit half-plane onto the half-plane.
    Forward,
    /// Its inverse.
    Inverse,
}

/// An ordered composition of elementary slit maps, `g_T = phi_n o ... o phi_1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SlitMapChain {
    start: f64,
    steps: Vec<SlitStep>,
    maps: Vec<Elementary>,
    total_capacity: f64,
}

impl SlitMapChain {
    /// Chain whose driving function starts at `start`.
    pub fn new(start: f64, steps: Vec<SlitStep>) -> Result<Self> {
        if !start.is_finite() {
            return Err(LoewnerError::InvalidInput("chain start is not finite".into()));
        }
        for (k, s) in steps.iter().enumerate() {
            if !(s.capacity > 0.0) || !s.capacity.is_finite() || !s.drift.is_finite() {
                return Err(LoewnerError::InvalidInput(format!(
                    "slit step {k} needs a positive capacity and finite drift"
                )));
            }
        }
        let total_capacity = steps.iter().map(|s| s.capacity).sum();
        let maps = build_maps(start, &steps);
        Ok(Self {
            start,
            steps,
            maps,
            total_capacity,
        })
    }

    pub fn empty(start: f64) -> Self {
        Self {
            start,
            steps: Vec::new(),
            maps: Vec::new(),
            total_capacity: 0.0,
        }
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn steps(&self) -> &[SlitStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn total_capacity(&self) -> f64 {
        self.total_capacity
    }

    /// Driving value after the last step (image of the tip).
    pub fn end_value(&self) -> f64 {
        self.start + self.steps.iter().map(|s| s.drift).sum::<f64>()
    }

    /// Append `other`'s steps; its own start value is ignored so the driving stays continuous.
    pub fn concat(&self, other: &SlitMapChain) -> Self {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        let maps = build_maps(self.start, &steps);
        Self {
            start: self.start,
            steps,
            maps,
            total_capacity: self.total_capacity + other.total_capacity,
        }
    }

    /// Number of elementary maps after sub-stepping of steep drifting steps.
    pub fn elementary_count(&self) -> usize {
        self.maps.len()
    }

    pub fn evaluate(&self, z: Complex64, direction: Direction) -> Result<Complex64> {
        let w = match direction {
            Direction::Forward => self.maps.iter().fold(z, |w, m| m.forward(w)),
            Direction::Inverse => self.maps.iter().rev().fold(z, |w, m| m.inverse(w)),
        };
        finite(w, "slit-map composition")
    }

    /// Inverse of the first `prefix` descriptor steps only (the hull at an
    /// intermediate capacity).
    pub(crate) fn inverse_prefix(&self, prefix_maps: usize, zeta: Complex64) -> Complex64 {
        self.maps[..prefix_maps].iter().rev().fold(zeta, |w, m| m.inverse(w))
    }

    /// Index boundaries in the elementary map list at which each descriptor step ends.
    pub(crate) fn step_ends(&self) -> Vec<usize> {
        let mut ends = Vec::with_capacity(self.steps.len());
        let mut count = 0;
        for s in &self.steps {
            count += substeps(s);
            ends.push(count);
        }
        ends
    }

    /// Inverse map with first derivative and `h''/h'`.
    pub fn inverse_jet(&self, zeta: Complex64) -> Result<Jet> {
        let mut jet = Jet::identity(zeta);
        for m in self.maps.iter().rev() {
            let g1 = jet.value - m.c - m.a * m.dt;
            let z = m.inverse(jet.value);
            let g0 = z - m.c;
            let d = m.ratio(g1, g0);
            let slope = m.log_psi_prime_deriv(g1) - d * m.log_psi_prime_deriv(g0);
            jet = jet.then(z, d, slope);
        }
        finite(jet.value, "inverse jet")?;
        finite(jet.log_derivative_slope, "inverse jet")?;
        Ok(jet)
    }

    /// Forward map with first derivative and `h''/h'`.
    pub fn forward_jet(&self, z: Complex64) -> Result<Jet> {
        let mut jet = Jet::identity(z);
        for m in &self.maps {
            let g0 = jet.value - m.c;
            let w = m.forward(jet.value);
            let g1 = w - m.c - m.a * m.dt;
            let d = m.ratio(g0, g1);
            let slope = m.log_psi_prime_deriv(g0) - d * m.log_psi_prime_deriv(g1);
            jet = jet.then(w, d, slope);
        }
        finite(jet.value, "forward jet")?;
        Ok(jet)
    }
}

fn finite(w: Complex64, what: &str) -> Result<Complex64> {
    if w.re.is_finite() && w.im.is_finite() {
        Ok(w)
    } else {
        Err(LoewnerError::NonFiniteEvaluation(what.to_string()))
    }
}

fn substeps(s: &SlitStep) -> usize {
    match s.kind {
        SlitKind::VerticalSlit => 1,
        SlitKind::TiltedSlit => {
            let slope = s.drift / s.capacity;
            let p = slope.abs() * s.capacity.sqrt() / MAX_DRIFT_PARAMETER;
            (p * p).ceil().max(1.0) as usize
        }
    }
}

fn build_maps(start: f64, steps: &[SlitStep]) -> Vec<Elementary> {
    let mut maps = Vec::with_capacity(steps.len());
    let mut current = start;
    for s in steps {
        match s.kind {
            SlitKind::VerticalSlit => {
                current += s.drift;
                maps.push(Elementary {
                    c: current,
                    a: 0.0,
                    dt: s.capacity,
                });
            }
            SlitKind::TiltedSlit => {
                let m = substeps(s);
                let slope = s.drift / s.capacity;
                let dt = s.capacity / m as f64;
                for j in 0..m {
                    maps.push(Elementary {
                        c: current + s.drift * (j as f64 / m as f64),
                        a: slope,
                        dt,
                    });
                }
                current += s.drift;
            }
        }
    }
    maps
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tilted(capacity: f64, drift: f64) -> SlitStep {
        SlitStep {
            capacity,
            drift,
            kind: SlitKind::TiltedSlit,
        }
    }

    #[test]
    fn empty_chain_is_identity() {
        let chain = SlitMapChain::empty(0.0);
        assert_eq!(chain.evaluate(c(0.0, 1.0), Direction::Forward).unwrap(), c(0.0, 1.0));
        assert_eq!(chain.evaluate(c(0.0, 1.0), Direction::Inverse).unwrap(), c(0.0, 1.0));
    }

    #[test]
    fn tilted_step_solves_the_flow_invariant() {
        // Integrate dg/ds = 2/(g - a s) with RK4 as an independent oracle.
        let (a, dt) = (0.7, 0.05);
        let chain = SlitMapChain::new(0.0, vec![tilted(dt, a * dt)]).unwrap();
        for z in [c(0.3, 0.4), c(-1.0, 0.2), c(2.0, 3.0)] {
            let f = |s: f64, g: Complex64| 2.0 / (g - a * s);
            let n = 20_000;
            let h = dt / n as f64;
            let mut g = z;
            for k in 0..n {
                let s = k as f64 * h;
                let k1 = f(s, g);
                let k2 = f(s + h / 2.0, g + k1 * (h / 2.0));
                let k3 = f(s + h / 2.0, g + k2 * (h / 2.0));
                let k4 = f(s + h, g + k3 * h);
                g += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
            }
            let got = chain.evaluate(z, Direction::Forward).unwrap();
            assert!((got - g).norm() < 1e-10, "{z}: {got} vs {g}");
        }
    }

    #[test]
    fn forward_inverse_round_trip() {
        let chain = SlitMapChain::new(
            0.2,
            vec![tilted(0.1, 0.3), tilted(0.2, -0.5), tilted(0.05, 2.0)],
        )
        .unwrap();
        for z in [c(0.0, 2.0), c(1.5, 0.01), c(-3.0, 0.5), c(0.1, 50.0)] {
            let w = chain.evaluate(z, Direction::Forward).unwrap();
            assert!(w.im > 0.0);
            let back = chain.evaluate(w, Direction::Inverse).unwrap();
            assert!((back - z).norm() < 1e-10 * (1.0 + z.norm()), "{z} -> {back}");
        }
    }

    #[test]
    fn points_on_the_guessing_slit_map_into_the_half_plane() {
        // z - c equals the half-drift offset, so z sits on the vertical slit
        // used to start Newton's method.
        let (c0, drift, dt) = (0.535668826568767, 0.1197077192, 0.3494293038271823);
        let map = Elementary { c: c0, a: drift / dt, dt };
        let z = c(c0 + 0.5 * drift, 0.01);
        let g = map.forward(z);
        let n = 20_000;
        let h = dt / n as f64;
        let f = |g: Complex64| 2.0 / g - map.a;
        let mut oracle = z - c0;
        for _ in 0..n {
            let k1 = f(oracle);
            let k2 = f(oracle + k1 * (h / 2.0));
            let k3 = f(oracle + k2 * (h / 2.0));
            let k4 = f(oracle + k3 * h);
            oracle += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        }
        let oracle = oracle + c0 + map.a * dt;
        assert!((g - oracle).norm() < 1e-9, "{g} vs {oracle}");
        assert!((map.inverse(g) - z).norm() < 1e-10);
    }

    #[test]
    fn jets_match_finite_differences() {
        let chain = SlitMapChain::new(0.0, vec![tilted(0.3, 0.4), tilted(0.2, -0.2)]).unwrap();
        let z = c(0.4, 0.9);
        let h = 1e-5;
        for (dir, jet) in [
            (Direction::Forward, chain.forward_jet(z).unwrap()),
            (Direction::Inverse, chain.inverse_jet(z).unwrap()),
        ] {
            let f = |w: Complex64| chain.evaluate(w, dir).unwrap();
            let d = (f(z + h) - f(z - h)) / (2.0 * h);
            let d2 = (f(z + h) - f(z) * 2.0 + f(z - h)) / (h * h);
            assert!((jet.derivative - d).norm() < 1e-7);
            assert!((jet.log_derivative_slope - d2 / d).norm() < 1e-4);
        }
    }

    #[test]
    fn steep_steps_are_subdivided() {
        let chain = SlitMapChain::new(0.0, vec![tilted(1.0, 3.0)]).unwrap();
        assert!(chain.elementary_count() >= 144);
        let total: f64 = chain.maps.iter().map(|m| m.dt).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }
}
