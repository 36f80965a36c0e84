//! Loop energy of one curve by every available route, with cross-route discrepancies.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::driving::loop_energy_via_chord;
use crate::curve::JordanCurve;
use crate::error::Result;
use crate::grunsky::{energy_via_grunsky_curve, START_ORDER};
use crate::liouville::{liouville_energy, MapMethod, DEFAULT_ORDER};

/// A closed bounded curve, or `[0, inf) ∪ eta` given by a chord `eta` of the slit plane.
#[derive(Debug, Clone, PartialEq)]
pub enum ReportCurve {
    Closed(JordanCurve),
    Chord(Vec<Complex64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Dirichlet,
    Liouville,
    Grunsky,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Dirichlet, Route::Liouville, Route::Grunsky];

    pub fn name(self) -> &'static str {
        match self {
            Route::Dirichlet => "dirichlet",
            Route::Liouville => "liouville",
            Route::Grunsky => "grunsky",
        }
    }
}

impl std::str::FromStr for Route {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "dirichlet" | "driving" => Ok(Route::Dirichlet),
            "liouville" => Ok(Route::Liouville),
            "grunsky" => Ok(Route::Grunsky),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    pub routes: Vec<Route>,
    /// Starting series order of the liouville route.
    pub order: usize,
    /// Starting series order of the grunsky route.
    pub grunsky_order: usize,
    pub map_method: MapMethod,
    /// Points sampled on the chord when a circle is reduced to a line.
    pub chord_samples: usize,
}

impl Default for ReportParams {
    fn default() -> Self {
        Self {
            routes: Route::ALL.to_vec(),
            order: DEFAULT_ORDER,
            grunsky_order: START_ORDER,
            map_method: MapMethod::Auto,
            chord_samples: 256,
        }
    }
}

/// Outcome of one route.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum RouteResult {
    Ok {
        value: f64,
        /// Series order, or chord sample count at the finest level.
        resolution: usize,
    },
    /// Values at successive refinements that failed to stabilize (possibly infinite).
    NonConvergent { levels: Vec<f64> },
    Absent { reason: String },
    Failed { error: String },
}

impl RouteResult {
    pub fn value(&self) -> Option<f64> {
        match self {
            RouteResult::Ok { value, .. } => Some(*value),
            _ => None,
        }
    }

    fn absent(reason: &str) -> Self {
        RouteResult::Absent {
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub dirichlet: RouteResult,
    pub liouville: RouteResult,
    pub grunsky: RouteResult,
    /// Absolute differences keyed `a-b` for every pair of routes with values.
    pub discrepancies: BTreeMap<String, f64>,
    pub params: ReportParams,
    pub timings_ms: BTreeMap<String, f64>,
}

impl EnergyReport {
    pub fn route(&self, r: Route) -> &RouteResult {
        match r {
            Route::Dirichlet => &self.dirichlet,
            Route::Liouville => &self.liouville,
            Route::Grunsky => &self.grunsky,
        }
    }

    /// Largest pairwise discrepancy, if at least two routes produced values.
    pub fn max_discrepancy(&self) -> Option<f64> {
        self.discrepancies.values().copied().reduce(f64::max)
    }

    /// Requested routes that ended in an error.
    pub fn failures(&self) -> Vec<Route> {
        self.params
            .routes
            .iter()
            .copied()
            .filter(|&r| matches!(self.route(r), RouteResult::Failed { .. }))
            .collect()
    }

    pub fn non_convergent(&self) -> bool {
        Route::ALL
            .iter()
            .any(|&r| matches!(self.route(r), RouteResult::NonConvergent { .. }))
    }

    fn discrepancies_of(results: [(Route, &RouteResult); 3]) -> BTreeMap<String, f64> {
        let mut out = BTreeMap::new();
        for i in 0..3 {
            for j in i + 1..3 {
                if let (Some(a), Some(b)) = (results[i].1.value(), results[j].1.value()) {
                    let key = format!("{}-{}", results[i].0.name(), results[j].0.name());
                    out.insert(key, (a - b).abs());
                }
            }
        }
        out
    }
}

/// Center and radius when the curve is a circle to `1e-9` relative accuracy.
pub fn as_circle(curve: &JordanCurve) -> Option<(Complex64, f64)> {
    let pts = curve.sample(256);
    let (a, b, c) = (pts[0], pts[85], pts[170]);
    // circumcenter of three points
    let (ab, ac) = (b - a, c - a);
    let d = 2.0 * (ab.re * ac.im - ab.im * ac.re);
    if d.abs() < 1e-300 {
        return None;
    }
    let (nb, nc) = (ab.norm_sqr(), ac.norm_sqr());
    let center = a + Complex64::new(ac.im * nb - ab.im * nc, ab.re * nc - ac.re * nb) / d;
    let r = (a - center).norm();
    let off = pts.iter().map(|z| ((z - center).norm() - r).abs()).fold(0.0, f64::max);
    (off <= 1e-9 * r).then_some((center, r))
}

/// Maps the circle to the line `R ∪ {inf}`, sending `curve(0)` to 0 and the
/// antipodal point to infinity, and returns the image of the half that lands on
/// the negative axis, sampled at `m` points and stopped well before infinity.
fn circle_to_chord(curve: &JordanCurve, m: usize) -> Vec<Complex64> {
    let p = curve.eval(0.0).0;
    let q = curve.eval(PI).0;
    let mobius = |z: Complex64| (z - p) / (z - q);
    let mid = mobius(curve.eval(0.5 * PI).0);
    let rotation = Complex64::from_polar(1.0, PI - mid.arg());
    // parameter values cluster towards q so the image reaches far out
    (0..m)
        .map(|j| {
            let s = j as f64 / m as f64;
            let t = PI * (1.0 - (1.0 - s) * (1.0 - s)) * (1.0 - 1e-3);
            if j == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                rotation * mobius(curve.eval(t).0)
            }
        })
        .collect()
}

fn dirichlet_route(curve: &ReportCurve, params: &ReportParams) -> RouteResult {
    let eta = match curve {
        ReportCurve::Chord(eta) => eta.clone(),
        ReportCurve::Closed(k) => match as_circle(k) {
            Some(_) => circle_to_chord(k, params.chord_samples),
            None => return RouteResult::absent("not Möbius-reducible"),
        },
    };
    match loop_energy_via_chord(&eta) {
        Ok(refined) => match refined.value() {
            Some(value) => RouteResult::Ok {
                value,
                resolution: (eta.len() - 1) * 16 + 1,
            },
            None => RouteResult::NonConvergent {
                levels: refined.levels,
            },
        },
        Err(e) => RouteResult::Failed { error: e.to_string() },
    }
}

fn series_route(
    curve: &ReportCurve,
    run: impl FnOnce(&JordanCurve) -> Result<(f64, usize)>,
) -> RouteResult {
    match curve {
        ReportCurve::Chord(_) => RouteResult::absent("curve passes through infinity"),
        ReportCurve::Closed(k) => match run(k) {
            Ok((value, resolution)) => RouteResult::Ok { value, resolution },
            Err(e) => RouteResult::Failed { error: e.to_string() },
        },
    }
}

fn timed(enabled: bool, f: impl FnOnce() -> RouteResult) -> (RouteResult, Option<f64>) {
    if !enabled {
        return (RouteResult::absent("not requested"), None);
    }
    let start = Instant::now();
    let out = f();
    (out, Some(start.elapsed().as_secs_f64() * 1e3))
}

/// Runs the requested routes concurrently. Errors are recorded per route.
pub fn energy_report(curve: &ReportCurve, params: &ReportParams) -> EnergyReport {
    let wants = |r: Route| params.routes.contains(&r);
    let ((dirichlet, t_d), ((liouville, t_l), (grunsky, t_g))) = rayon::join(
        || timed(wants(Route::Dirichlet), || dirichlet_route(curve, params)),
        || {
            rayon::join(
                || {
                    timed(wants(Route::Liouville), || {
                        series_route(curve, |k| {
                            liouville_energy(k, params.order, params.map_method)
                                .map(|e| (e.energy, e.order))
                        })
                    })
                },
                || {
                    timed(wants(Route::Grunsky), || {
                        series_route(curve, |k| {
                            energy_via_grunsky_curve(k, params.grunsky_order)
                                .map(|e| (e.energy, e.order))
                        })
                    })
                },
            )
        },
    );
    let discrepancies = EnergyReport::discrepancies_of([
        (Route::Dirichlet, &dirichlet),
        (Route::Liouville, &liouville),
        (Route::Grunsky, &grunsky),
    ]);
    let mut timings_ms = BTreeMap::new();
    for (r, t) in [(Route::Dirichlet, t_d), (Route::Liouville, t_l), (Route::Grunsky, t_g)] {
        if let Some(t) = t {
            timings_ms.insert(r.name().to_string(), t);
        }
    }
    EnergyReport {
        dirichlet,
        liouville,
        grunsky,
        discrepancies,
        params: params.clone(),
        timings_ms,
    }
}
