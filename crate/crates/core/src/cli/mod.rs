//! Command-line front end: configuration, dispatch and report output.
//!
//! A run is described by a [`RunConfig`]. The `pcs-susy` binary builds one
//! from defaults, then command-line flags, then an optional `--config` JSON
//! document (later layers win), and hands it to [`run`].

mod args;
mod report;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::model::{Branch, ModelError, SusyParams};
use crate::numerics::{Grid, NumericsError, VerifyOptions};
use crate::sl2::Sl2Error;
use crate::spectra::SpectraError;

pub use args::{main_with_args, Cli, CliCommand, CommonArgs, ScanArgs};
pub use report::{csv_rows, CsvRow, CSV_HEADER, SCHEMA_VERSION};

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "PCS_SPECTRA_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Analyze,
    Spectrum,
    Verify,
    Sl2,
    Bifurcation,
    Exchange,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Spectrum => "spectrum",
            Command::Verify => "verify",
            Command::Sl2 => "sl2",
            Command::Bifurcation => "bifurcation",
            Command::Exchange => "exchange",
        }
    }

    /// Whether the energy-table CSV schema applies.
    pub fn has_csv(self) -> bool {
        matches!(
            self,
            Command::Spectrum | Command::Verify | Command::Bifurcation
        )
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridOverrides {
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub l: Option<f64>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol_match: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanRange {
    pub c_min: f64,
    pub c_max: f64,
    pub steps: usize,
}

impl Default for ScanRange {
    fn default() -> Self {
        Self {
            c_min: 0.0,
            c_max: 1.0,
            steps: 11,
        }
    }
}

impl ScanRange {
    /// `steps` evenly spaced values from `c_min` to `c_max` inclusive.
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.c_min];
        }
        let d = (self.c_max - self.c_min) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                if k + 1 == self.steps {
                    self.c_max
                } else {
                    self.c_min + k as f64 * d
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// Standard output when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    pub params: SusyParams,
    #[serde(default = "default_branch")]
    pub branch: Branch,
    #[serde(default)]
    pub grid: GridOverrides,
    #[serde(default)]
    pub scan: ScanRange,
    #[serde(default)]
    pub output: OutputSpec,
}

fn default_branch() -> Branch {
    Branch::Plus
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numeric(_) | CliError::Io { .. } => EXIT_NUMERIC,
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<NumericsError> for CliError {
    fn from(e: NumericsError) -> Self {
        match e {
            NumericsError::InvalidGrid(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<SpectraError> for CliError {
    fn from(e: SpectraError) -> Self {
        match e {
            SpectraError::NonFiniteGrid(_) => CliError::Usage(e.to_string()),
            SpectraError::LadderExhausted { .. } => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<Sl2Error> for CliError {
    fn from(e: Sl2Error) -> Self {
        match e {
            Sl2Error::Model(m) => m.into(),
            other => CliError::Numeric(other.to_string()),
        }
    }
}

impl RunConfig {
    /// Builds a config from JSON layers, each overriding the one before.
    /// Objects merge key by key; anything else replaces.
    pub fn from_layers(layers: &[Value]) -> Result<Self, CliError> {
        let mut merged = Value::Object(Default::default());
        for layer in layers {
            merge(&mut merged, layer);
        }
        let cfg: RunConfig = serde_json::from_value(merged)
            .map_err(|e| CliError::Usage(describe_config_error(&e.to_string())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| CliError::Usage(format!("config is not valid JSON: {e}")))?;
        Self::from_layers(&[v])
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.params.validate()?;
        let g = &self.grid;
        positive("--L", g.l)?;
        positive("--tol", g.tol)?;
        positive("--tol-match", g.tol_match)?;
        if let Some(n) = g.n {
            if n < 3 {
                return Err(CliError::Usage(format!("--N must be at least 3, got {n}")));
            }
        }
        let s = &self.scan;
        if !(s.c_min.is_finite() && s.c_max.is_finite()) {
            return Err(CliError::Usage("--C-min and --C-max must be finite".into()));
        }
        if s.steps == 0 {
            return Err(CliError::Usage("--steps must be positive".into()));
        }
        if s.steps == 1 && s.c_min != s.c_max {
            return Err(CliError::Usage(
                "--steps 1 needs --C-min equal to --C-max".into(),
            ));
        }
        if self.output.format == OutputFormat::Csv && !self.command.has_csv() {
            return Err(CliError::Usage(format!(
                "--format csv is not available for `{}` (spectrum, verify and bifurcation only)",
                self.command
            )));
        }
        Ok(())
    }

    /// Verification options with the grid and tolerance overrides applied.
    pub fn verify_options(&self) -> Result<VerifyOptions, CliError> {
        let mut opts = VerifyOptions::default();
        let alpha = self.params.alpha;
        opts.grid = match (self.grid.l, self.grid.n) {
            (Some(l), Some(n)) => Some(Grid::new(l, n)?),
            (Some(l), None) => {
                let n = (2.0 * l * alpha / crate::numerics::SPACING).ceil() as usize;
                Some(Grid::new(l, n.max(3))?)
            }
            (None, Some(n)) => {
                let (s1, s2) = crate::spectra::two_series_spectrum(&self.params, self.branch);
                let levels = crate::spectra::merged_levels(&s1, &s2);
                let auto = Grid::for_levels(alpha, &levels)?;
                Some(Grid::new(auto.half_width(), n)?)
            }
            (None, None) => None,
        };
        if let Some(t) = self.grid.tol {
            opts.search.tol = t;
        }
        if let Some(t) = self.grid.tol_match {
            opts.tol_match = t;
        }
        Ok(opts)
    }
}

/// Names the command-line flag behind a missing parameter.
fn describe_config_error(msg: &str) -> String {
    for (field, flag) in [
        ("a", "--A"),
        ("b", "--B"),
        ("c", "--C"),
        ("alpha", "--alpha"),
    ] {
        if msg.contains(&format!("missing field `{field}`")) {
            return format!("{flag} is required (or set params.{field} in --config)");
        }
    }
    format!("invalid configuration: {msg}")
}

fn positive(flag: &str, v: Option<f64>) -> Result<(), CliError> {
    match v {
        Some(x) if !(x.is_finite() && x > 0.0) => {
            Err(CliError::Usage(format!("{flag} must be positive, got {x}")))
        }
        _ => Ok(()),
    }
}

fn merge(base: &mut Value, over: &Value) {
    match (base, over) {
        (Value::Object(b), Value::Object(o)) => {
            for (k, v) in o {
                match b.get_mut(k) {
                    Some(slot) => merge(slot, v),
                    None => {
                        b.insert(k.clone(), v.clone());
                    }
                }
            }
        }
        (slot, v) => *slot = v.clone(),
    }
}

/// A finished run: the serialized report and the process exit code.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub output: String,
    /// One-line human summary, printed to stderr by the binary.
    pub summary: Option<String>,
}

/// Executes the configured analysis and renders its report.
pub fn run(config: &RunConfig) -> Result<RunOutcome, CliError> {
    config.validate()?;
    let threads = thread_cap()?;
    match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Numeric(format!("thread pool: {e}")))?;
            pool.install(|| report::render(config))
        }
        None => report::render(config),
    }
}

/// Runs and writes the report to the configured destination.
pub fn run_to_output(config: &RunConfig) -> Result<RunOutcome, CliError> {
    let outcome = run(config)?;
    match &config.output.path {
        Some(path) => std::fs::write(path, &outcome.output).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(outcome.output.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?;
        }
    }
    Ok(outcome)
}

fn thread_cap() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(s) if s.trim().is_empty() => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got `{s}`"
            ))),
        },
        Err(_) => Ok(None),
    }
}
