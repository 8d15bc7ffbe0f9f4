//! Batch experiment driver for the randcube library.
//!
//! Every subcommand is a reproducible experiment: all randomness flows from
//! `--seed`, results go to CSV or JSON-lines files written atomically, and a
//! one-line summary lands on stdout. Exit codes: 0 success, 2 usage errors,
//! 3 numeric/runtime failures.

mod fitfile;
mod grid;
pub mod output;
mod runners;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use output::Format;

/// A classified command failure; decides the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or flag values: exit 2.
    Usage(String),
    /// The experiment itself failed: exit 3.
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

pub(crate) fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(format!("error: {}", msg.into()))
}

#[derive(Parser, Debug)]
#[command(
    name = "randcube",
    version,
    about = "Reproducible randomized-cubature experiments",
    args_override_self = true
)]
pub struct Cli {
    /// Flat key=value file supplying flag defaults (same names as the long
    /// flags); explicit flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run one integration and print the estimate
    Integrate(runners::IntegrateArgs),
    /// Measure error moments over an n grid and fit the convergence rate
    Rates(runners::RatesArgs),
    /// Measure interpolation sup-error decay over a k grid
    InterpCheck(runners::InterpCheckArgs),
    /// Lower-bound equal-norm type constants from witness families
    Typeconst(runners::TypeconstArgs),
    /// Build bump fooling families and report their integral scaling
    Foolset(runners::FoolsetArgs),
    /// Run the greedy minimal-moment subset partition on random vectors
    PartitionDemo(runners::PartitionDemoArgs),
    /// Diagnose moments of sums of independent mean-zero noise vectors
    Lemma2(runners::Lemma2Args),
    /// Refit the convergence rate from a rates results file
    Fit(runners::FitArgs),
}

/// Entry point shared by the binary and the tests.
pub fn run(argv: Vec<String>) -> Result<(), Failure> {
    let argv = expand_config(argv)?;
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            print!("{e}");
            return Ok(());
        }
        Err(e) => return Err(Failure::Usage(e.to_string())),
    };
    match cli.cmd {
        Cmd::Integrate(args) => runners::integrate(args),
        Cmd::Rates(args) => runners::rates(args),
        Cmd::InterpCheck(args) => runners::interp_check(args),
        Cmd::Typeconst(args) => runners::typeconst(args),
        Cmd::Foolset(args) => runners::foolset(args),
        Cmd::PartitionDemo(args) => runners::partition_demo(args),
        Cmd::Lemma2(args) => runners::lemma2(args),
        Cmd::Fit(args) => runners::fit(args),
    }
}

/// Splices `key=value` lines from a `--config FILE` into the argument list
/// right after the subcommand, so explicit flags (which come later) win.
fn expand_config(argv: Vec<String>) -> Result<Vec<String>, Failure> {
    let Some(sub_pos) = argv.iter().skip(1).position(|a| !a.starts_with('-')) else {
        return Ok(argv);
    };
    let sub_pos = sub_pos + 1;
    let mut path: Option<String> = None;
    for (i, arg) in argv.iter().enumerate() {
        if let Some(v) = arg.strip_prefix("--config=") {
            path = Some(v.to_string());
        } else if arg == "--config" {
            path = argv.get(i + 1).cloned();
        }
    }
    let Some(path) = path else {
        return Ok(argv);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| usage(format!("cannot read config file `{path}`: {e}")))?;
    let mut injected = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            usage(format!(
                "config `{path}` line {}: expected key=value, got `{line}`",
                lineno + 1
            ))
        })?;
        let key = key.trim();
        let value = value.trim();
        if key == "config" {
            return Err(usage("config files cannot nest another config"));
        }
        if value == "true" {
            injected.push(format!("--{key}"));
        } else {
            injected.push(format!("--{key}"));
            injected.push(value.to_string());
        }
    }
    let mut out = argv[..=sub_pos].to_vec();
    out.extend(injected);
    out.extend(argv[sub_pos + 1..].iter().cloned());
    Ok(out)
}
