//! Subcommand bodies. Each resolves its defaults first so that the recorded run
//! configuration lists every value the run used.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use loewner::energy::{energy_report, ReportParams, Route};
use loewner::evolution::solve_forward_with;
use loewner::io::{driving_to_string, parse_driving, parse_trace, trace_to_string, CurveSpec, Format};
use loewner::sle::{sample_trace, schilder_estimate, SchilderParams, SleConfig};
use loewner::wp::{self, check_identities, hilbert_j, wp_inner, wp_symplectic, CircleVectorField};
use loewner::{extract_driving, DrivingFunction, HalfPlaneTrace, SlitKind};
use serde_json::{json, Value};

use crate::args::{
    resolve_seed, run_config, DriveArgs, EnergyArgs, SchilderArgs, SleArgs, Slit, TraceArgs, WpArgs,
};
use crate::error::{CliError, CliResult};
use crate::svg::{self, Figure};

fn required<'a>(path: &'a Option<PathBuf>, flag: &str) -> CliResult<&'a Path> {
    path.as_deref()
        .ok_or_else(|| CliError::input(format!("missing required option `--{flag}`")))
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn format_of(path: &Path) -> CliResult<Format> {
    Ok(Format::from_path(path)?)
}

/// Writes to `path`, or to standard output when there is none.
fn emit(path: Option<&Path>, content: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| CliError::input(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(content.as_bytes())
            .map_err(|e| CliError::input(format!("standard output: {e}"))),
    }
}

/// Data files cannot carry the configuration, so it goes next to them in `<out>.run.json`.
fn emit_data(path: Option<&Path>, content: &str, config: &Value) -> CliResult<()> {
    emit(path, content)?;
    if let Some(p) = path {
        let mut sidecar = p.as_os_str().to_owned();
        sidecar.push(".run.json");
        emit(Some(Path::new(&sidecar)), &pretty(config))?;
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn trace_figure(trace: &HalfPlaneTrace, title: &str, svg: Option<&Path>, config: &Value) -> CliResult<()> {
    if let Some(path) = svg {
        let pts: Vec<(f64, f64)> = trace.points().iter().map(|z| (z.re, z.im)).collect();
        let fig = Figure { title, x_label: "Re z", y_label: "Im z", equal_aspect: true };
        emit(Some(path), &svg::polyline(&fig, &pts, config))?;
    }
    Ok(())
}

fn output_format(out: Option<&Path>) -> CliResult<Format> {
    out.map_or(Ok(Format::Csv), format_of)
}

pub fn trace(mut args: TraceArgs) -> CliResult<()> {
    args.steps.get_or_insert(1000);
    args.slit.get_or_insert(Slit::Tilted);
    let config = run_config("trace", &args);
    let input = required(&args.driving, "driving")?;
    let w = parse_driving(&read(input)?, format_of(input)?)?;
    let kind = match args.slit {
        Some(Slit::Vertical) => SlitKind::VerticalSlit,
        _ => SlitKind::TiltedSlit,
    };
    let format = output_format(args.out.as_deref())?;
    let trace = solve_forward_with(&w, args.steps.unwrap_or(1000), kind)?;
    emit_data(args.out.as_deref(), &trace_to_string(&trace, format), &config)?;
    trace_figure(&trace, "Loewner trace", args.svg.as_deref(), &config)
}

pub fn drive(args: DriveArgs) -> CliResult<()> {
    let config = run_config("drive", &args);
    let input = required(&args.trace, "trace")?;
    let trace = parse_trace(&read(input)?, format_of(input)?)?;
    let format = output_format(args.out.as_deref())?;
    let w = extract_driving(&trace)?;
    emit_data(args.out.as_deref(), &driving_to_string(&w, format), &config)?;
    if let Some(path) = args.svg.as_deref() {
        let pts: Vec<(f64, f64)> = w.times().iter().copied().zip(w.values().iter().copied()).collect();
        let fig = Figure { title: "driving function", x_label: "t", y_label: "W", equal_aspect: false };
        emit(Some(path), &svg::polyline(&fig, &pts, &config))?;
    }
    Ok(())
}

fn parse_methods(spec: &str) -> CliResult<Vec<Route>> {
    if spec.trim() == "all" {
        return Ok(Route::ALL.to_vec());
    }
    let mut routes = Vec::new();
    for part in spec.split(',').map(str::trim) {
        let r: Route = part.parse().map_err(CliError::input)?;
        if !routes.contains(&r) {
            routes.push(r);
        }
    }
    Ok(routes)
}

pub fn energy(mut args: EnergyArgs) -> CliResult<()> {
    let defaults = ReportParams::default();
    args.method.get_or_insert_with(|| "all".into());
    args.order.get_or_insert(defaults.order);
    args.grunsky_order.get_or_insert(defaults.grunsky_order);
    args.timings.get_or_insert(false);
    let config = run_config("energy", &args);
    let input = required(&args.curve, "curve")?;
    let curve = CurveSpec::parse(&read(input)?)?.to_curve()?;
    let params = ReportParams {
        routes: parse_methods(args.method.as_deref().unwrap_or("all"))?,
        order: args.order.unwrap_or(defaults.order),
        grunsky_order: args.grunsky_order.unwrap_or(defaults.grunsky_order),
        ..defaults
    };
    let report = energy_report(&curve, &params);
    let mut value = serde_json::to_value(&report).expect("reports serialize");
    if let Value::Object(m) = &mut value {
        if args.timings != Some(true) {
            m.remove("timings_ms");
        }
        m.insert("non_convergent".into(), Value::Bool(report.non_convergent()));
        m.insert("run_config".into(), config);
    }
    emit(args.out.as_deref(), &pretty(&value))?;
    let failed = report.failures();
    if failed.is_empty() {
        Ok(())
    } else {
        let names: Vec<&str> = failed.iter().map(|r| r.name()).collect();
        Err(CliError::Numeric(format!("route(s) failed: {}", names.join(", "))))
    }
}

pub fn sle(mut args: SleArgs) -> CliResult<()> {
    args.horizon.get_or_insert(1.0);
    args.dt.get_or_insert(1e-3);
    args.seed = Some(resolve_seed(args.seed)?);
    args.allow_large_kappa.get_or_insert(false);
    let config = run_config("sle", &args);
    let kappa = args.kappa.ok_or_else(|| CliError::input("missing required option `--kappa`"))?;
    let mut sle = SleConfig::new(kappa, args.horizon.unwrap_or(1.0), args.dt.unwrap_or(1e-3), args.seed.unwrap_or(0))?;
    sle.allow_large_kappa = args.allow_large_kappa == Some(true);
    let format = output_format(args.out.as_deref())?;
    let trace = sample_trace(&sle)?;
    emit_data(args.out.as_deref(), &trace_to_string(&trace, format), &config)?;
    trace_figure(&trace, &format!("SLE trace, kappa = {kappa}"), args.svg.as_deref(), &config)
}

pub fn schilder(mut args: SchilderArgs) -> CliResult<()> {
    args.kappas.get_or_insert_with(|| vec![1.0, 0.5, 0.25]);
    args.eps.get_or_insert(0.4);
    args.samples.get_or_insert(100_000);
    args.steps.get_or_insert(1000);
    args.seed = Some(resolve_seed(args.seed)?);
    let config = run_config("schilder", &args);
    let input = required(&args.driving, "driving")?;
    let w: DrivingFunction = parse_driving(&read(input)?, format_of(input)?)?;
    let params = SchilderParams {
        eps: args.eps.unwrap_or(0.4),
        samples: args.samples.unwrap_or(100_000),
        seed: args.seed.unwrap_or(0),
        steps: args.steps.unwrap_or(1000),
    };
    let estimate = schilder_estimate(&w, args.kappas.as_deref().unwrap_or(&[]), &params)?;
    emit_data(args.out.as_deref(), &estimate.to_csv(), &config)
}

fn read_field(path: &Path, order: usize) -> CliResult<CircleVectorField> {
    let triples: Vec<(i64, f64, f64)> = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::input(format!("{}: field JSON must be [[n, re, im], ...]: {e}", path.display())))?;
    Ok(CircleVectorField::from_triples(order, &triples)?)
}

pub fn wp(mut args: WpArgs) -> CliResult<()> {
    args.check.get_or_insert(false);
    args.order.get_or_insert(wp::DEFAULT_ORDER);
    args.alpha.get_or_insert(wp::DEFAULT_ALPHA);
    let config = run_config("wp", &args);
    let (order, alpha) = (args.order.unwrap_or(wp::DEFAULT_ORDER), args.alpha.unwrap_or(wp::DEFAULT_ALPHA));
    let check = args.check == Some(true);
    let mut report = serde_json::Map::new();
    match (&args.u, &args.v) {
        (Some(u), Some(v)) => {
            let (u, v) = (read_field(u, order)?, read_field(v, order)?);
            report.insert(
                "forms".into(),
                json!({
                    "inner": wp_inner(&u, &v, alpha)?,
                    "symplectic": wp_symplectic(&u, &v, alpha)?,
                    "j_u": hilbert_j(&u).to_triples(),
                    "j_v": hilbert_j(&v).to_triples(),
                }),
            );
        }
        (None, None) if check => {}
        (None, None) => return Err(CliError::input("nothing to do: pass `--check` or both `--u` and `--v`")),
        _ => return Err(CliError::input("`--u` and `--v` must be given together")),
    }
    let mut violation = None;
    if check {
        let identities = check_identities(order, alpha)?;
        if !identities.passes() {
            violation = Some(format!("identity check failed: {identities:?}"));
        }
        let mut v = serde_json::to_value(&identities).expect("reports serialize");
        if let Value::Object(m) = &mut v {
            m.insert("passes".into(), Value::Bool(violation.is_none()));
        }
        report.insert("identities".into(), v);
    }
    report.insert("run_config".into(), config);
    emit(args.out.as_deref(), &pretty(&Value::Object(report)))?;
    match violation {
        Some(msg) => Err(CliError::Property(msg)),
        None => Ok(()),
    }
}
