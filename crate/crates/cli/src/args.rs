//! Command-line flags and their merge with an optional JSON config file.
//!
//! Every subcommand's options are `Option`s so that a flag given on the command
//! line can be told apart from one left out. Resolution order: flag, then config
//! file, then (for seeds) `LOEWNER_SEED`, then the built-in default.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "loewner", version, about = "Loewner energy, SLE sampling and Weil-Petersson checks")]
pub struct Cli {
    /// JSON file with option values; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Trace of a driving function by forward Loewner evolution.
    Trace(TraceArgs),
    /// Driving function of a trace by unzipping.
    Drive(DriveArgs),
    /// Loop energy of a curve by every available route.
    Energy(EnergyArgs),
    /// Sample an SLE trace.
    Sle(SleArgs),
    /// Monte-Carlo probe of Schilder's large deviations.
    Schilder(SchilderArgs),
    /// Weil-Petersson forms and identity checks.
    Wp(WpArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Trace(_) => "trace",
            Command::Drive(_) => "drive",
            Command::Energy(_) => "energy",
            Command::Sle(_) => "sle",
            Command::Schilder(_) => "schilder",
            Command::Wp(_) => "wp",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Slit {
    Tilted,
    Vertical,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TraceArgs {
    /// Driving function, CSV `t,w` or JSON `[[t, w], ...]`.
    #[arg(long)]
    pub driving: Option<PathBuf>,
    /// Steps per unit capacity [default: 1000].
    #[arg(long)]
    pub steps: Option<usize>,
    /// Elementary slit map [default: tilted].
    #[arg(long, value_enum)]
    pub slit: Option<Slit>,
    /// Trace output (.csv or .json); standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Plot of the trace.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DriveArgs {
    /// Trace, CSV `re,im[,capacity]` or JSON `[[re, im], ...]`.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Driving output (.csv or .json); standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Plot of the driving function.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnergyArgs {
    /// Curve JSON.
    #[arg(long)]
    pub curve: Option<PathBuf>,
    /// `all` or a comma list of `dirichlet`, `liouville`, `grunsky` [default: all].
    #[arg(long)]
    pub method: Option<String>,
    /// Starting order of the liouville route [default: 128].
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub order: Option<usize>,
    /// Starting order of the grunsky route [default: 32].
    #[arg(long)]
    pub grunsky_order: Option<usize>,
    /// Include wall-clock timings; the report is then no longer reproducible byte for byte.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub timings: Option<bool>,
    /// Report output; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SleArgs {
    /// Diffusivity; required.
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Capacity horizon [default: 1].
    #[arg(long = "T")]
    #[serde(rename = "T")]
    pub horizon: Option<f64>,
    /// Capacity step [default: 1e-3].
    #[arg(long)]
    pub dt: Option<f64>,
    /// RNG seed; falls back to LOEWNER_SEED, then 0.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Allow kappa > 4.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub allow_large_kappa: Option<bool>,
    /// Trace output (.csv or .json); standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Plot of the trace.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SchilderArgs {
    /// Target driving function.
    #[arg(long)]
    pub driving: Option<PathBuf>,
    /// Comma list of kappa values [default: 1,0.5,0.25].
    #[arg(long, value_delimiter = ',')]
    pub kappas: Option<Vec<f64>>,
    /// Tube radius [default: 0.4].
    #[arg(long)]
    pub eps: Option<f64>,
    /// Monte-Carlo samples [default: 100000].
    #[arg(long)]
    pub samples: Option<usize>,
    /// Grid intervals per path [default: 1000].
    #[arg(long)]
    pub steps: Option<usize>,
    /// RNG seed; falls back to LOEWNER_SEED, then 0.
    #[arg(long)]
    pub seed: Option<u64>,
    /// CSV output; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WpArgs {
    /// Run the identity suite; exits 4 on a violation.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub check: Option<bool>,
    /// Truncation order [default: 64].
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub order: Option<usize>,
    /// Scale of the metric [default: 1].
    #[arg(long)]
    pub alpha: Option<f64>,
    /// First field, JSON `[[n, re, im], ...]`.
    #[arg(long)]
    pub u: Option<PathBuf>,
    /// Second field.
    #[arg(long)]
    pub v: Option<PathBuf>,
    /// Report output; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Overlays the flags that were given onto the config file's values.
pub fn merge<T: Serialize + DeserializeOwned>(flags: &T, config: Option<&Value>, subcommand: &str) -> CliResult<T> {
    let mut base = match config {
        None => Map::new(),
        Some(Value::Object(m)) => m.clone(),
        Some(_) => return Err(CliError::input("config file must hold a JSON object")),
    };
    match base.remove("subcommand") {
        None => {}
        Some(Value::String(s)) if s == subcommand => {}
        Some(other) => {
            return Err(CliError::input(format!(
                "config key `subcommand` is {other}, but the command is `{subcommand}`"
            )))
        }
    }
    let given = serde_json::to_value(flags).map_err(CliError::input)?;
    if let Value::Object(given) = given {
        for (k, v) in given {
            if !v.is_null() {
                base.insert(k, v);
            }
        }
    }
    serde_json::from_value(Value::Object(base)).map_err(|e| CliError::input(format!("config: {e}")))
}

/// Seed from the flag or config, else `LOEWNER_SEED`, else 0.
pub fn resolve_seed(seed: Option<u64>) -> CliResult<u64> {
    seed_or_env(seed, std::env::var("LOEWNER_SEED").ok().as_deref())
}

fn seed_or_env(seed: Option<u64>, env: Option<&str>) -> CliResult<u64> {
    match (seed, env) {
        (Some(s), _) => Ok(s),
        (None, Some(s)) => s
            .trim()
            .parse()
            .map_err(|_| CliError::input(format!("LOEWNER_SEED `{s}` is not an unsigned integer"))),
        (None, None) => Ok(0),
    }
}

/// The resolved options as a JSON object tagged with the subcommand.
pub fn run_config<T: Serialize>(subcommand: &str, args: &T) -> Value {
    let mut obj = match serde_json::to_value(args) {
        Ok(Value::Object(m)) => m,
        _ => Map::new(),
    };
    obj.retain(|_, v| !v.is_null());
    obj.insert("subcommand".into(), Value::String(subcommand.into()));
    Value::Object(obj)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win_over_config() {
        let flags = SleArgs {
            kappa: Some(2.0),
            ..Default::default()
        };
        let config = serde_json::json!({"kappa": 1.0, "T": 3.0, "subcommand": "sle"});
        let merged = merge(&flags, Some(&config), "sle").unwrap();
        assert_eq!(merged.kappa, Some(2.0));
        assert_eq!(merged.horizon, Some(3.0));
    }

    #[test]
    fn unknown_config_keys_are_named() {
        let config = serde_json::json!({"kapa": 1.0});
        let err = merge(&SleArgs::default(), Some(&config), "sle").unwrap_err();
        assert!(err.message().contains("kapa"), "{}", err.message());
        let config = serde_json::json!({"subcommand": "wp"});
        assert!(merge(&SleArgs::default(), Some(&config), "sle").is_err());
    }

    #[test]
    fn seed_precedence() {
        assert_eq!(seed_or_env(Some(3), Some("5")).unwrap(), 3);
        assert_eq!(seed_or_env(None, Some(" 5 ")).unwrap(), 5);
        assert_eq!(seed_or_env(None, None).unwrap(), 0);
        assert_eq!(seed_or_env(None, Some("x")).unwrap_err().code(), 2);
    }
}
