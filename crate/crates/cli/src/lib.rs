//! Command-line front end. Every command writes one JSON report wrapped in a
//! shared envelope; exit status is 0 on pass, 1 on a certified failure and 2
//! on input errors.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

pub mod fixpoint;
pub mod verify;

/// Overrides the default tolerance of `fixpoint`, `verify` and `example-lhalf`.
pub const TOL_ENV: &str = "QUASISTAB_TOL";
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "quasistab", version, about = "Metrization, contraction bounds and cubic stability certificates")]
pub struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Include wall-clock timings (makes reports non-reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Metrize a generalized b-metric given as a CSV or JSON distance matrix.
    Metrize {
        #[arg(long = "in")]
        input: PathBuf,
        /// Required for CSV input; overrides the file's value for JSON.
        #[arg(long)]
        kappa: Option<f64>,
        /// Exponent; defaults to log_{2 kappa} 2.
        #[arg(long)]
        p: Option<f64>,
        /// Output matrix, in the input's format.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a built-in contraction scenario.
    Fixpoint {
        #[arg(long, value_enum)]
        scenario: fixpoint::Scenario,
        /// Declared Lipschitz constant; defaults to the scenario's true one.
        #[arg(long = "L")]
        lipschitz: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long = "max-iter", default_value_t = 1000)]
        max_iter: usize,
        #[arg(long)]
        x0: Option<f64>,
    },
    /// Build a stability certificate from a JSON config.
    Verify {
        #[arg(long)]
        config: PathBuf,
        /// Per-point table (x, defect, phi, error, bound).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Frozen reproduction of the `L^{1/2}[0,1]` example at m = 2 and m = 3.
    ExampleLhalf {
        #[arg(long, default_value_t = quasistab::function_spaces::DEFAULT_QUADRATURE_N)]
        quadrature_n: usize,
        #[arg(long, default_value_t = quasistab::reproduction::CORPUS_SEED)]
        seed: u64,
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    InputError,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::InputError => 2,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: quasistab::Error },
    #[error(transparent)]
    Core(#[from] quasistab::Error),
}

impl CliError {
    /// Hypothesis violations detected inside the library are certified
    /// failures; everything else is bad input.
    pub fn verdict(&self) -> Verdict {
        use quasistab::Error as E;
        match self {
            CliError::Core(E::HypothesisViolation(_) | E::NotABMetric(_) | E::Overflow { .. }) => Verdict::Fail,
            _ => Verdict::InputError,
        }
    }
}

pub(crate) fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

pub(crate) fn file_err(path: &Path) -> impl FnOnce(quasistab::Error) -> CliError + '_ {
    move |source| CliError::File { path: path.to_path_buf(), source }
}

/// Result of a command before it is wrapped in the envelope.
pub struct CommandOutput {
    pub verdict: Verdict,
    pub config: Value,
    pub result: Value,
}

#[derive(Debug, Serialize)]
pub struct Envelope {
    pub command: &'static str,
    pub version: &'static str,
    pub config: Value,
    pub verdict: Verdict,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub result: Value,
}

pub fn default_tol() -> Result<f64, CliError> {
    match std::env::var(TOL_ENV) {
        Ok(v) => v
            .parse::<f64>()
            .ok()
            .filter(|t| *t > 0.0 && t.is_finite())
            .ok_or_else(|| input(format!("{TOL_ENV}={v:?} is not a positive number"))),
        Err(_) => Ok(DEFAULT_TOL),
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Metrize { .. } => "metrize",
        Command::Fixpoint { .. } => "fixpoint",
        Command::Verify { .. } => "verify",
        Command::ExampleLhalf { .. } => "example-lhalf",
    }
}

/// Runs the command and builds its report; never panics on bad input.
pub fn run(cli: &Cli) -> Envelope {
    let start = Instant::now();
    let outcome = dispatch(&cli.command);
    let timings_ms = cli.timings.then(|| start.elapsed().as_secs_f64() * 1e3);
    let (verdict, config, result, error) = match outcome {
        Ok(out) => (out.verdict, out.config, out.result, None),
        Err(e) => (e.verdict(), Value::Null, Value::Null, Some(e.to_string())),
    };
    Envelope {
        command: command_name(&cli.command),
        version: env!("CARGO_PKG_VERSION"),
        config,
        verdict,
        exit_code: verdict.exit_code(),
        timings_ms,
        error,
        result,
    }
}

fn dispatch(command: &Command) -> Result<CommandOutput, CliError> {
    match command {
        Command::Metrize { input, kappa, p, out } => metrize(input, *kappa, *p, out),
        Command::Fixpoint { scenario, lipschitz, tol, max_iter, x0 } => {
            let tol = match tol {
                Some(t) => *t,
                None => default_tol()?,
            };
            fixpoint::run(*scenario, *lipschitz, tol, *max_iter, *x0)
        }
        Command::Verify { config, csv } => verify::run(config, csv.as_deref()),
        Command::ExampleLhalf { quadrature_n, seed, tol } => {
            let tol = match tol {
                Some(t) => *t,
                None => default_tol()?,
            };
            example_lhalf(*quadrature_n, *seed, tol)
        }
    }
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

fn metrize(input_path: &Path, kappa: Option<f64>, p: Option<f64>, out: &Path) -> Result<CommandOutput, CliError> {
    use quasistab::io;
    let file = std::fs::File::open(input_path).map_err(|e| file_err(input_path)(e.into()))?;
    let json_input = is_json(input_path);
    let (matrix, kappa) = if json_input {
        let doc = io::read_distance_json(file).map_err(file_err(input_path))?;
        let k = kappa.unwrap_or(doc.kappa);
        (doc.d, k)
    } else {
        let d = io::read_distance_csv(file).map_err(file_err(input_path))?;
        (d, kappa.ok_or_else(|| input("--kappa is required for CSV input"))?)
    };
    let config = json!({ "in": input_path, "kappa": kappa, "p": p, "out": out });
    let space = quasistab::GeneralizedBMetricSpace::new(matrix, kappa)?;
    let report = space.validate();
    if !report.passed {
        return Ok(CommandOutput { verdict: Verdict::Fail, config, result: json!({ "b_metric": report }) });
    }
    let chain = match p {
        Some(p) => quasistab::chain_metric_with_exponent(&space, p)?,
        None => quasistab::chain_metric(&space)?,
    };
    let sink = std::fs::File::create(out).map_err(|e| file_err(out)(e.into()))?;
    if json_input {
        io::write_distance_json(sink, kappa, &chain.delta).map_err(file_err(out))?;
    } else {
        io::write_distance_csv(sink, &chain.delta).map_err(file_err(out))?;
    }
    let result = json!({
        "n": chain.len(),
        "p": chain.p,
        "b_metric": report,
        "sandwich_violation": chain.sandwich_violation(&space),
        "triangle_violation": chain.triangle_violation(),
        "delta": chain.delta,
    });
    Ok(CommandOutput { verdict: Verdict::Pass, config, result })
}

fn example_lhalf(quadrature_n: usize, seed: u64, tol: f64) -> Result<CommandOutput, CliError> {
    let mut runs = Vec::new();
    let mut passed = true;
    for m in [2, 3] {
        let rep = quasistab::reproduction::reproduce_lhalf(m, quadrature_n, seed, tol)?;
        passed &= rep.certificate.passed;
        runs.push(rep);
    }
    let notes: Vec<&str> = runs.iter().map(|r| r.constants.note.as_str()).collect();
    Ok(CommandOutput {
        verdict: if passed { Verdict::Pass } else { Verdict::Fail },
        config: json!({ "quadrature_n": quadrature_n, "seed": seed, "tol": tol, "m": [2, 3] }),
        result: json!({ "runs": runs, "discrepancy_notes": notes }),
    })
}

/// Writes the envelope to `--report` or stdout.
pub fn emit(cli: &Cli, envelope: &Envelope) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(envelope).map_err(std::io::Error::other)?;
    match &cli.report {
        Some(path) => std::fs::write(path, text + "\n"),
        None => {
            use std::io::Write;
            match writeln!(std::io::stdout().lock(), "{text}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => other,
            }
        }
    }
}
