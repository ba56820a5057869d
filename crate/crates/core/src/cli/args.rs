use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use super::{run_to_output, CliError, Command, OutputFormat, RunConfig, EXIT_OK, EXIT_USAGE};
use crate::model::Branch;

#[derive(Debug, Parser)]
#[command(
    name = "pcs-susy",
    version,
    about = "SUSY structure, spectra and sl(2) correspondence of the complexified Scarf II potential"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Partner-potential coefficients, PT constraint and dual superpotentials.
    Analyze(CommonArgs),
    /// The two analytic level towers.
    Spectrum(CommonArgs),
    /// Analytic levels against the finite-difference eigensolver.
    Verify(CommonArgs),
    /// Solutions (m, b) of the sl(2) correspondence.
    Sl2(CommonArgs),
    /// Analytic levels of both branches over a range of C.
    Bifurcation(ScanArgs),
    /// The A + α/2 ↔ B exchange and its effect on the potential.
    Exchange(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long = "A", allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long = "B", allow_hyphen_values = true)]
    pub b: Option<f64>,
    /// Complexification strength (default 0).
    #[arg(long = "C", allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Range parameter (default 1).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// `plus` or `minus` (default plus).
    #[arg(long)]
    pub branch: Option<Branch>,
    /// Half-width of the finite-difference box.
    #[arg(long = "L", allow_hyphen_values = true)]
    pub l: Option<f64>,
    /// Interior grid points.
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// Eigenpair residual tolerance.
    #[arg(long, allow_hyphen_values = true)]
    pub tol: Option<f64>,
    /// Largest accepted |ΔE| between analytic and numeric levels.
    #[arg(long = "tol-match", allow_hyphen_values = true)]
    pub tol_match: Option<f64>,
    /// Output file (default standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// RunConfig JSON document; its fields override the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long = "C-min", allow_hyphen_values = true)]
    pub c_min: Option<f64>,
    #[arg(long = "C-max", allow_hyphen_values = true)]
    pub c_max: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
}

impl CliCommand {
    fn parts(&self) -> (Command, &CommonArgs, Option<&ScanArgs>) {
        match self {
            CliCommand::Analyze(a) => (Command::Analyze, a, None),
            CliCommand::Spectrum(a) => (Command::Spectrum, a, None),
            CliCommand::Verify(a) => (Command::Verify, a, None),
            CliCommand::Sl2(a) => (Command::Sl2, a, None),
            CliCommand::Bifurcation(s) => (Command::Bifurcation, &s.common, Some(s)),
            CliCommand::Exchange(a) => (Command::Exchange, a, None),
        }
    }

    /// Flags that were given, as a config layer.
    pub fn flag_layer(&self) -> Value {
        let (command, a, scan) = self.parts();
        let mut root = Map::new();
        root.insert("command".into(), json!(command));
        let mut params = Map::new();
        put(&mut params, "a", a.a);
        put(&mut params, "b", a.b);
        put(&mut params, "c", a.c);
        put(&mut params, "alpha", a.alpha);
        root.insert("params".into(), Value::Object(params));
        if let Some(b) = a.branch {
            root.insert("branch".into(), json!(b));
        }
        let mut grid = Map::new();
        put(&mut grid, "L", a.l);
        put(&mut grid, "N", a.n);
        put(&mut grid, "tol", a.tol);
        put(&mut grid, "tol_match", a.tol_match);
        root.insert("grid".into(), Value::Object(grid));
        if let Some(s) = scan {
            let mut m = Map::new();
            put(&mut m, "c_min", s.c_min);
            put(&mut m, "c_max", s.c_max);
            put(&mut m, "steps", s.steps);
            root.insert("scan".into(), Value::Object(m));
        }
        let mut out = Map::new();
        put(
            &mut out,
            "path",
            a.out.as_ref().map(|p| p.display().to_string()),
        );
        put(&mut out, "format", a.format);
        root.insert("output".into(), Value::Object(out));
        Value::Object(root)
    }

    pub fn config_path(&self) -> Option<&PathBuf> {
        self.parts().1.config.as_ref()
    }
}

fn put<T: serde::Serialize>(m: &mut Map<String, Value>, key: &str, v: Option<T>) {
    if let Some(v) = v {
        m.insert(key.into(), json!(v));
    }
}

fn defaults() -> Value {
    json!({
        "params": {"c": 0.0, "alpha": 1.0},
        "branch": "plus",
        "scan": {"c_min": 0.0, "c_max": 1.0, "steps": 11},
        "output": {"format": "json"},
    })
}

/// Parses flags and an optional config file into a [`RunConfig`].
pub fn config_from_cli(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut layers = vec![defaults(), cli.command.flag_layer()];
    if let Some(path) = cli.command.config_path() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("--config {}: {e}", path.display())))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| {
            CliError::Usage(format!("--config {}: not valid JSON: {e}", path.display()))
        })?;
        layers.push(v);
    }
    RunConfig::from_layers(&layers)
}

/// Full command-line entry point; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = config_from_cli(&cli).and_then(|cfg| run_to_output(&cfg));
    match outcome {
        Ok(o) => {
            if let Some(s) = o.summary {
                eprintln!("{s}");
            }
            o.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
