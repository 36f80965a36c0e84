//! Python bindings: driving functions and traces, the three energy routes, SLE
//! sampling and the Weil-Petersson forms.

use loewner::curve::JordanCurve;
use loewner::energy::{self, ReportCurve, ReportParams, Route};
use loewner::evolution::solve_forward_with;
use loewner::grunsky::energy_via_grunsky_curve;
use loewner::io::CurveSpec;
use loewner::liouville::infinite::infinite_curve_energy_with;
use loewner::liouville::{liouville_energy, MapMethod};
use loewner::sle::{self, SchilderParams, SleConfig};
use loewner::wp::{self as wp_core, CircleVectorField};
use loewner::{DrivingFunction, HalfPlaneTrace, LoewnerError, SlitKind};
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: LoewnerError) -> PyErr {
    match e {
        LoewnerError::InvalidInput(_) | LoewnerError::DomainError(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn to_py_json<'py>(py: Python<'py>, v: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Driving function, piecewise linear between its samples.
#[pyclass(name = "DrivingFunction", frozen)]
struct Driving(DrivingFunction);

#[pymethods]
impl Driving {
    #[new]
    fn new(times: Vec<f64>, values: Vec<f64>) -> PyResult<Self> {
        DrivingFunction::new(times, values).map(Driving).map_err(err)
    }

    #[staticmethod]
    fn linear(slope: f64, horizon: f64) -> PyResult<Self> {
        DrivingFunction::linear(slope, horizon).map(Driving).map_err(err)
    }

    #[staticmethod]
    fn constant(value: f64, horizon: f64) -> PyResult<Self> {
        DrivingFunction::constant(value, horizon).map(Driving).map_err(err)
    }

    #[staticmethod]
    fn from_knots(knots: Vec<(f64, f64)>) -> PyResult<Self> {
        DrivingFunction::from_knots(&knots).map(Driving).map_err(err)
    }

    #[getter]
    fn times(&self) -> Vec<f64> {
        self.0.times().to_vec()
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.0.values().to_vec()
    }

    #[getter]
    fn horizon(&self) -> f64 {
        self.0.horizon()
    }

    fn __call__(&self, t: f64) -> f64 {
        self.0.eval(t)
    }

    fn dirichlet_energy(&self) -> f64 {
        energy::dirichlet_energy(&self.0)
    }

    fn sup_distance(&self, other: &Driving) -> f64 {
        self.0.sup_distance(&other.0)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

/// Polyline in the upper half-plane starting on the real line.
#[pyclass(name = "Trace", frozen)]
struct Trace(HalfPlaneTrace);

#[pymethods]
impl Trace {
    #[new]
    #[pyo3(signature = (points, capacities=None))]
    fn new(points: Vec<Complex64>, capacities: Option<Vec<f64>>) -> PyResult<Self> {
        HalfPlaneTrace::new(points, capacities).map(Trace).map_err(err)
    }

    #[getter]
    fn points(&self) -> Vec<Complex64> {
        self.0.points().to_vec()
    }

    #[getter]
    fn capacities(&self) -> Option<Vec<f64>> {
        self.0.capacities().map(<[f64]>::to_vec)
    }

    fn chordal_energy(&self) -> PyResult<f64> {
        energy::chordal_energy(&self.0).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

/// Closed curve, or a chord of the slit plane closed up through infinity.
#[pyclass(name = "Curve", frozen)]
struct Curve(ReportCurve);

impl Curve {
    fn closed(&self) -> PyResult<&JordanCurve> {
        match &self.0 {
            ReportCurve::Closed(k) => Ok(k),
            ReportCurve::Chord(_) => Err(PyValueError::new_err("this route needs a bounded closed curve")),
        }
    }
}

#[pymethods]
impl Curve {
    #[staticmethod]
    fn circle(center: Complex64, radius: f64) -> PyResult<Self> {
        JordanCurve::circle(center, radius).map(|k| Curve(ReportCurve::Closed(k))).map_err(err)
    }

    /// `e^{it} + c e^{-it}`.
    #[staticmethod]
    fn joukowski(c: f64) -> PyResult<Self> {
        JordanCurve::joukowski(c).map(|k| Curve(ReportCurve::Closed(k))).map_err(err)
    }

    /// `center + sum_k a_k e^{ikt}` from `(k, a_k)` pairs.
    #[staticmethod]
    fn trig(center: Complex64, coeffs: Vec<(i64, Complex64)>) -> PyResult<Self> {
        JordanCurve::trig(center, coeffs).map(|k| Curve(ReportCurve::Closed(k))).map_err(err)
    }

    #[staticmethod]
    fn from_points(points: Vec<Complex64>) -> PyResult<Self> {
        JordanCurve::from_points(&points).map(|k| Curve(ReportCurve::Closed(k))).map_err(err)
    }

    /// Same JSON as the command line's `--curve` files.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        CurveSpec::parse(text).and_then(|s| s.to_curve()).map(Curve).map_err(err)
    }

    fn sample(&self, m: usize) -> PyResult<Vec<Complex64>> {
        Ok(self.closed()?.sample(m))
    }

    #[pyo3(signature = (order=128))]
    fn liouville_energy(&self, py: Python<'_>, order: usize) -> PyResult<f64> {
        let k = self.closed()?;
        py.detach(|| liouville_energy(k, order, MapMethod::Auto)).map(|e| e.energy).map_err(err)
    }

    #[pyo3(signature = (order=32))]
    fn grunsky_energy(&self, py: Python<'_>, order: usize) -> PyResult<f64> {
        let k = self.closed()?;
        py.detach(|| energy_via_grunsky_curve(k, order)).map(|e| e.energy).map_err(err)
    }

    /// Every requested route with pairwise discrepancies, as a dict.
    #[pyo3(signature = (methods=None))]
    fn energy_report<'py>(&self, py: Python<'py>, methods: Option<Vec<String>>) -> PyResult<Bound<'py, PyAny>> {
        let mut params = ReportParams::default();
        if let Some(m) = methods {
            params.routes = m
                .iter()
                .map(|s| s.parse::<Route>())
                .collect::<Result<_, _>>()
                .map_err(PyValueError::new_err)?;
        }
        let report = py.detach(|| energy::energy_report(&self.0, &params));
        to_py_json(py, &report)
    }
}

#[pyfunction]
#[pyo3(signature = (w, steps=1000, slit="tilted"))]
fn solve_forward(py: Python<'_>, w: &Driving, steps: usize, slit: &str) -> PyResult<Trace> {
    let kind = match slit {
        "tilted" => SlitKind::TiltedSlit,
        "vertical" => SlitKind::VerticalSlit,
        other => return Err(PyValueError::new_err(format!("unknown slit `{other}`"))),
    };
    py.detach(|| solve_forward_with(&w.0, steps, kind)).map(Trace).map_err(err)
}

#[pyfunction]
fn extract_driving(py: Python<'_>, trace: &Trace) -> PyResult<Driving> {
    py.detach(|| loewner::extract_driving(&trace.0)).map(Driving).map_err(err)
}

/// Energy of the curve through infinity generated by `w`, by quadrature.
#[pyfunction]
#[pyo3(signature = (w, rel_tol=1e-4))]
fn infinite_curve_energy(py: Python<'_>, w: &Driving, rel_tol: f64) -> PyResult<f64> {
    py.detach(|| {
        loewner::evolution::exact_chain(&w.0).and_then(|c| infinite_curve_energy_with(&c, rel_tol))
    })
    .map(|e| e.value)
    .map_err(err)
}

fn sle_config(kappa: f64, horizon: f64, dt: f64, seed: u64, allow_large_kappa: bool) -> PyResult<SleConfig> {
    let mut c = SleConfig::new(kappa, horizon, dt, seed).map_err(err)?;
    c.allow_large_kappa = allow_large_kappa;
    Ok(c)
}

#[pyfunction]
#[pyo3(signature = (kappa, horizon=1.0, dt=1e-3, seed=0))]
fn sle_driving(kappa: f64, horizon: f64, dt: f64, seed: u64) -> PyResult<Driving> {
    sle::sample_driving(&sle_config(kappa, horizon, dt, seed, false)?).map(Driving).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (kappa, horizon=1.0, dt=1e-3, seed=0, allow_large_kappa=false))]
fn sle_trace(py: Python<'_>, kappa: f64, horizon: f64, dt: f64, seed: u64, allow_large_kappa: bool) -> PyResult<Trace> {
    let c = sle_config(kappa, horizon, dt, seed, allow_large_kappa)?;
    py.detach(|| sle::sample_trace(&c)).map(Trace).map_err(err)
}

#[pyfunction]
fn central_charge(kappa: f64) -> PyResult<f64> {
    sle::central_charge(kappa).map(|c| c.value).map_err(err)
}

/// Rows of `kappa, hits, samples, rate_estimate, stderr` as dicts.
#[pyfunction]
#[pyo3(signature = (w, kappas, eps=0.4, samples=100_000, seed=0, steps=1000))]
fn schilder_estimate<'py>(
    py: Python<'py>,
    w: &Driving,
    kappas: Vec<f64>,
    eps: f64,
    samples: usize,
    seed: u64,
    steps: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let params = SchilderParams { eps, samples, seed, steps };
    let est = py.detach(|| sle::schilder_estimate(&w.0, &kappas, &params)).map_err(err)?;
    to_py_json(py, &est)
}

/// Field from its coefficients on the modes `2, 3, ..., N`.
fn field(coeffs: Vec<Complex64>) -> CircleVectorField {
    CircleVectorField::from_positive(coeffs)
}

fn same_order(u: &[Complex64], v: &[Complex64]) -> PyResult<()> {
    if u.len() != v.len() {
        return Err(PyValueError::new_err("fields must list the same number of modes"));
    }
    Ok(())
}

#[pyfunction]
#[pyo3(signature = (u, v, alpha=1.0))]
fn wp_inner(u: Vec<Complex64>, v: Vec<Complex64>, alpha: f64) -> PyResult<f64> {
    same_order(&u, &v)?;
    wp_core::wp_inner(&field(u), &field(v), alpha).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (u, v, alpha=1.0))]
fn wp_symplectic(u: Vec<Complex64>, v: Vec<Complex64>, alpha: f64) -> PyResult<f64> {
    same_order(&u, &v)?;
    wp_core::wp_symplectic(&field(u), &field(v), alpha).map_err(err)
}

#[pyfunction]
fn hilbert_j(u: Vec<Complex64>) -> Vec<Complex64> {
    wp_core::hilbert_j(&field(u))
        .to_triples()
        .into_iter()
        .map(|(_, re, im)| Complex64::new(re, im))
        .collect()
}

#[pyfunction]
#[pyo3(signature = (order=32, alpha=1.0))]
fn check_identities<'py>(py: Python<'py>, order: usize, alpha: f64) -> PyResult<Bound<'py, PyDict>> {
    let report = py.detach(|| wp_core::check_identities(order, alpha)).map_err(err)?;
    let d = to_py_json(py, &report)?.cast_into::<PyDict>()?;
    d.set_item("passes", report.passes())?;
    Ok(d)
}

#[pymodule]
fn pyloewner(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Driving>()?;
    m.add_class::<Trace>()?;
    m.add_class::<Curve>()?;
    m.add_function(wrap_pyfunction!(solve_forward, m)?)?;
    m.add_function(wrap_pyfunction!(extract_driving, m)?)?;
    m.add_function(wrap_pyfunction!(infinite_curve_energy, m)?)?;
    m.add_function(wrap_pyfunction!(sle_driving, m)?)?;
    m.add_function(wrap_pyfunction!(sle_trace, m)?)?;
    m.add_function(wrap_pyfunction!(central_charge, m)?)?;
    m.add_function(wrap_pyfunction!(schilder_estimate, m)?)?;
    m.add_function(wrap_pyfunction!(wp_inner, m)?)?;
    m.add_function(wrap_pyfunction!(wp_symplectic, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_j, m)?)?;
    m.add_function(wrap_pyfunction!(check_identities, m)?)?;
    Ok(())
}
