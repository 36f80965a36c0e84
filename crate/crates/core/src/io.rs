//! Text formats for driving functions, traces and curves.
//!
//! Drivings are CSV `t,w` or JSON `[[t, w], ...]`; traces are CSV
//! `re,im[,capacity]` or JSON `[[re, im(, capacity)], ...]`. Curves are tagged
//! JSON objects, see [`CurveSpec`].

use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::curve::JordanCurve;
use crate::energy::ReportCurve;
use crate::error::{LoewnerError, Result};
use crate::evolution::{DrivingFunction, HalfPlaneTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// From the file extension (`.csv` or `.json`).
    pub fn from_path(path: &Path) -> Result<Self> {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => Ok(Format::Csv),
            Some(e) if e.eq_ignore_ascii_case("json") => Ok(Format::Json),
            _ => Err(LoewnerError::InvalidInput(format!(
                "cannot infer format of {} (expected .csv or .json)",
                path.display()
            ))),
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> LoewnerError {
    LoewnerError::InvalidInput(e.to_string())
}

/// Rows of a headed numeric CSV whose header must be one of `headers`.
fn read_csv(text: &str, headers: &[&[&str]]) -> Result<(usize, Vec<Vec<f64>>)> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let found: Vec<String> = reader.headers().map_err(invalid)?.iter().map(str::to_owned).collect();
    let which = headers
        .iter()
        .position(|h| h.len() == found.len() && h.iter().zip(&found).all(|(a, b)| a == b))
        .ok_or_else(|| {
            let expected: Vec<String> = headers.iter().map(|h| h.join(",")).collect();
            invalid(format!(
                "CSV header `{}` is not one of `{}`",
                found.join(","),
                expected.join("` or `")
            ))
        })?;
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(invalid)?;
        let row = record
            .iter()
            .zip(&found)
            .map(|(field, key)| {
                field.parse::<f64>().map_err(|_| {
                    invalid(format!("row {}: `{key}` value `{field}` is not a number", line + 1))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok((which, rows))
}

fn write_csv(header: &[&str], rows: impl Iterator<Item = Vec<f64>>) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).expect("writing to memory");
    for row in rows {
        writer
            .write_record(row.iter().map(|v| format!("{v:?}")))
            .expect("writing to memory");
    }
    String::from_utf8(writer.into_inner().expect("writing to memory")).expect("CSV output is UTF-8")
}

pub fn parse_driving(text: &str, format: Format) -> Result<DrivingFunction> {
    let knots: Vec<(f64, f64)> = match format {
        Format::Csv => read_csv(text, &[&["t", "w"]])?
            .1
            .into_iter()
            .map(|r| (r[0], r[1]))
            .collect(),
        Format::Json if text.trim_start().starts_with('{') => {
            return serde_json::from_str(text).map_err(|e| invalid(format!("driving JSON: {e}")));
        }
        Format::Json => serde_json::from_str::<Vec<[f64; 2]>>(text)
            .map_err(|e| invalid(format!("driving JSON must be [[t, w], ...] or {{\"t\": [...], \"w\": [...]}}: {e}")))?
            .into_iter()
            .map(|[t, w]| (t, w))
            .collect(),
    };
    DrivingFunction::from_knots(&knots)
}

pub fn driving_to_string(w: &DrivingFunction, format: Format) -> String {
    let rows = w.times().iter().zip(w.values()).map(|(&t, &v)| vec![t, v]);
    match format {
        Format::Csv => write_csv(&["t", "w"], rows),
        Format::Json => serde_json::to_string(&rows.collect::<Vec<_>>()).expect("numbers serialize"),
    }
}

pub fn parse_trace(text: &str, format: Format) -> Result<HalfPlaneTrace> {
    let rows: Vec<Vec<f64>> = match format {
        Format::Csv => read_csv(text, &[&["re", "im"], &["re", "im", "capacity"]])?.1,
        Format::Json => {
            let rows: Vec<Vec<f64>> = serde_json::from_str(text)
                .map_err(|e| invalid(format!("trace JSON must be [[re, im(, capacity)], ...]: {e}")))?;
            let arity = rows.first().map_or(2, Vec::len);
            if !(arity == 2 || arity == 3) || rows.iter().any(|r| r.len() != arity) {
                return Err(invalid("trace JSON rows must all have 2 or all have 3 entries"));
            }
            rows
        }
    };
    let points = rows.iter().map(|r| Complex64::new(r[0], r[1])).collect();
    let capacities = (rows.first().map_or(0, Vec::len) == 3).then(|| rows.iter().map(|r| r[2]).collect());
    HalfPlaneTrace::new(points, capacities)
}

pub fn trace_to_string(trace: &HalfPlaneTrace, format: Format) -> String {
    let rows = trace.points().iter().enumerate().map(|(k, z)| {
        let mut row = vec![z.re, z.im];
        if let Some(c) = trace.capacities() {
            row.push(c[k]);
        }
        row
    });
    match format {
        Format::Csv => {
            let header: &[&str] = if trace.capacities().is_some() {
                &["re", "im", "capacity"]
            } else {
                &["re", "im"]
            };
            write_csv(header, rows)
        }
        Format::Json => serde_json::to_string(&rows.collect::<Vec<_>>()).expect("numbers serialize"),
    }
}

/// JSON description of a curve.
///
/// ```text
/// {"kind": "points", "points": [[x, y], ...]}
/// {"kind": "trig", "center": [x, y], "coeffs": [[k, re, im], ...]}
/// {"kind": "named", "name": "circle", "params": {"center": [x, y], "radius": r}}
/// {"kind": "named", "name": "joukowski", "params": {"c": 0.3}}
/// {"kind": "named", "name": "wedge", "params": {"angle": 1.5707963}}
/// {"kind": "chord", "points": [[0, 0], [x, y], ...]}
/// ```
///
/// `chord` describes `[0, inf) ∪ eta` by the polyline `eta` starting at 0;
/// `wedge` is the chord along the ray at `angle`, a curve with corners at 0 and infinity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CurveSpec {
    Points {
        points: Vec<[f64; 2]>,
    },
    Trig {
        #[serde(default)]
        center: [f64; 2],
        coeffs: Vec<(i64, f64, f64)>,
    },
    Named {
        name: NamedCurve,
        #[serde(default)]
        params: serde_json::Value,
    },
    Chord {
        points: Vec<[f64; 2]>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedCurve {
    Circle,
    Joukowski,
    Wedge,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CircleParams {
    #[serde(default)]
    center: [f64; 2],
    #[serde(default = "one")]
    radius: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JoukowskiParams {
    c: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WedgeParams {
    angle: f64,
}

fn complex(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn named_params<T: for<'de> Deserialize<'de>>(name: &str, params: &serde_json::Value) -> Result<T> {
    let params = if params.is_null() {
        serde_json::Value::Object(Default::default())
    } else {
        params.clone()
    };
    serde_json::from_value(params).map_err(|e| invalid(format!("params of `{name}`: {e}")))
}

impl CurveSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| invalid(format!("curve JSON: {e}")))
    }

    pub fn to_curve(&self) -> Result<ReportCurve> {
        match self {
            CurveSpec::Points { points } => {
                let pts: Vec<Complex64> = points.iter().copied().map(complex).collect();
                JordanCurve::from_points(&pts).map(ReportCurve::Closed)
            }
            CurveSpec::Trig { center, coeffs } => JordanCurve::trig(
                complex(*center),
                coeffs.iter().map(|&(k, re, im)| (k, Complex64::new(re, im))).collect(),
            )
            .map(ReportCurve::Closed),
            CurveSpec::Named { name, params } => match name {
                NamedCurve::Circle => {
                    let p: CircleParams = named_params("circle", params)?;
                    JordanCurve::circle(complex(p.center), p.radius).map(ReportCurve::Closed)
                }
                NamedCurve::Joukowski => {
                    let p: JoukowskiParams = named_params("joukowski", params)?;
                    JordanCurve::joukowski(p.c).map(ReportCurve::Closed)
                }
                NamedCurve::Wedge => {
                    let p: WedgeParams = named_params("wedge", params)?;
                    if !(p.angle > 0.0 && p.angle < 2.0 * PI) {
                        return Err(invalid("wedge angle must lie in (0, 2 pi)"));
                    }
                    Ok(ReportCurve::Chord(wedge_chord(p.angle)))
                }
            },
            CurveSpec::Chord { points } => {
                let pts: Vec<Complex64> = points.iter().copied().map(complex).collect();
                if pts.first() != Some(&Complex64::new(0.0, 0.0)) {
                    return Err(invalid("chord must start at [0, 0]"));
                }
                Ok(ReportCurve::Chord(pts))
            }
        }
    }
}

/// `0` followed by the points `2^k e^{i angle}`, `k = -4..=4`.
fn wedge_chord(angle: f64) -> Vec<Complex64> {
    let dir = Complex64::from_polar(1.0, angle);
    std::iter::once(Complex64::new(0.0, 0.0))
        .chain((-4..=4).map(|k| dir * 2f64.powi(k)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn driving_round_trips_in_both_formats() {
        let w = DrivingFunction::from_knots(&[(0.0, 0.0), (0.5, 0.25), (1.0, -0.1)]).unwrap();
        for f in [Format::Csv, Format::Json] {
            assert_eq!(parse_driving(&driving_to_string(&w, f), f).unwrap(), w);
        }
        assert!(driving_to_string(&w, Format::Csv).starts_with("t,w\n"));
    }

    #[test]
    fn trace_round_trips_with_and_without_capacity() {
        let pts = vec![Complex64::new(0.0, 0.0), Complex64::new(0.1, 1.0), Complex64::new(0.3, 2.0)];
        let plain = HalfPlaneTrace::new(pts.clone(), None).unwrap();
        let stamped = HalfPlaneTrace::new(pts, Some(vec![0.0, 0.25, 1.0])).unwrap();
        for t in [plain, stamped] {
            for f in [Format::Csv, Format::Json] {
                assert_eq!(parse_trace(&trace_to_string(&t, f), f).unwrap(), t);
            }
        }
    }

    #[test]
    fn csv_errors_name_the_column() {
        let err = parse_driving("t,w\n0,0\n1,x\n", Format::Csv).unwrap_err().to_string();
        assert!(err.contains("`w`") && err.contains("row 2"), "{err}");
        let err = parse_driving("time,w\n0,0\n", Format::Csv).unwrap_err().to_string();
        assert!(err.contains("time,w"), "{err}");
    }

    #[test]
    fn driving_json_object_form() {
        let w = parse_driving(r#"{"t": [0, 1], "w": [0, 0.5]}"#, Format::Json).unwrap();
        assert_eq!(w, DrivingFunction::linear(0.5, 1.0).unwrap());
        let err = parse_driving(r#"{"t": [0, 1], "values": [0, 0.5]}"#, Format::Json).unwrap_err().to_string();
        assert!(err.contains("values"), "{err}");
    }

    #[test]
    fn named_curves() {
        let c = CurveSpec::parse(r#"{"kind":"named","name":"joukowski","params":{"c":0.3}}"#).unwrap();
        assert_eq!(c.to_curve().unwrap(), ReportCurve::Closed(JordanCurve::joukowski(0.3).unwrap()));
        let unit = CurveSpec::parse(r#"{"kind":"named","name":"circle"}"#).unwrap();
        assert_eq!(
            unit.to_curve().unwrap(),
            ReportCurve::Closed(JordanCurve::circle(Complex64::new(0.0, 0.0), 1.0).unwrap())
        );
        let w = CurveSpec::parse(r#"{"kind":"named","name":"wedge","params":{"angle":1.5}}"#).unwrap();
        assert!(matches!(w.to_curve().unwrap(), ReportCurve::Chord(p) if p.len() == 10));
    }

    #[test]
    fn curve_errors_name_the_key() {
        let err = CurveSpec::parse(r#"{"kind":"named","name":"circle","params":{"raduis":2}}"#)
            .unwrap()
            .to_curve()
            .unwrap_err()
            .to_string();
        assert!(err.contains("raduis"), "{err}");
        let err = CurveSpec::parse(r#"{"kind":"trig","center":[0,0]}"#).unwrap_err().to_string();
        assert!(err.contains("coeffs"), "{err}");
    }
}
