//! Batch frontend for the identification-probability toolkit.
//!
//! Every row of every table carries the full parameters that produced it, so
//! any emitted value can be reproduced by rerunning the row through the
//! library. Identical invocations (including the seed) produce byte-identical
//! output.

mod commands;
mod output;
mod range;
mod runner;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use commands::{CommandOutput, Status};
use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "pgmlab",
    version,
    about = "Identification probabilities, analytic bounds, binary codes, and learner experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Base seed for every randomized step.
    #[arg(long, global = true, env = "PGMLAB_SEED", default_value_t = 7)]
    seed: u64,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, env = "PGMLAB_OUT")]
    out: Option<PathBuf>,

    /// Table output format.
    #[arg(long, global = true, env = "PGMLAB_FORMAT", value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Worker threads for sweeps; 0 means one per CPU. Output does not
    /// depend on the worker count.
    #[arg(long, global = true, env = "PGMLAB_JOBS", default_value_t = 0)]
    jobs: usize,

    /// JSON object file whose keys prefill options not given on the command
    /// line (command-line flags win).
    #[arg(long, global = true)]
    params: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact identification probability vs the analytic bound, swept over a grid.
    Pgm(commands::pgm::PgmArgs),
    /// Per-example information quantities and the entropy bound.
    Info(commands::info::InfoArgs),
    /// Search for a rate-1/4, distance-n/8 code and emit it as JSON.
    Code(commands::code::CodeArgs),
    /// Learner experiments: bv, erm, pgm identification, or sample-complexity search.
    Learn(commands::learn::LearnArgs),
    /// Spectrum maxima of the decay profile vs the coefficient bound.
    Fourier(commands::fourier::FourierArgs),
    /// Run the full verification battery and print a pass/fail summary.
    Verify(commands::verify::VerifyArgs),
}

/// Shared run context assembled from global flags.
pub struct Ctx {
    pub seed: u64,
    pub format: Format,
    pub jobs: usize,
}

/// Merge `--params file.json` into argv: for each key in the JSON object that
/// is not already present as a flag, append `--key value`. Explicit flags win
/// because appended duplicates would otherwise be rejected by the parser.
fn merge_params_file(mut argv: Vec<String>) -> Result<Vec<String>> {
    let position = argv
        .iter()
        .position(|a| a == "--params" || a.starts_with("--params="));
    let Some(idx) = position else {
        return Ok(argv);
    };
    let path = if let Some(rest) = argv[idx].strip_prefix("--params=") {
        PathBuf::from(rest)
    } else {
        PathBuf::from(
            argv.get(idx + 1)
                .context("--params needs a file path")?
                .clone(),
        )
    };
    let text = std::fs::read_to_string(&path)
        .with_context(|| format!("reading params file {}", path.display()))?;
    let object: serde_json::Map<String, serde_json::Value> =
        serde_json::from_str(&text).context("params file must be a JSON object")?;
    for (key, value) in object {
        let flag = format!("--{key}");
        let already = argv
            .iter()
            .any(|a| a == &flag || a.starts_with(&format!("{flag}=")));
        if already {
            continue;
        }
        let rendered = match value {
            serde_json::Value::String(s) => s,
            serde_json::Value::Number(n) => n.to_string(),
            serde_json::Value::Bool(b) => b.to_string(),
            other => anyhow::bail!("params key {key:?} has unsupported value {other}"),
        };
        argv.push(flag);
        argv.push(rendered);
    }
    Ok(argv)
}

fn dispatch(cli: &Cli) -> Result<CommandOutput> {
    let ctx = Ctx {
        seed: cli.seed,
        format: cli.format,
        jobs: cli.jobs,
    };
    match &cli.command {
        Command::Pgm(args) => commands::pgm::run(&ctx, args),
        Command::Info(args) => commands::info::run(&ctx, args),
        Command::Code(args) => commands::code::run(&ctx, args),
        Command::Learn(args) => commands::learn::run(&ctx, args),
        Command::Fourier(args) => commands::fourier::run(&ctx, args),
        Command::Verify(args) => commands::verify::run(&ctx, args),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing output to {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Classify a hard command failure: tripped resource guards exit 3,
/// everything else is a usage error.
fn failure_status(err: &anyhow::Error) -> Status {
    for cause in err.chain() {
        if let Some(pgmlab::Error::ResourceLimit(_)) = cause.downcast_ref::<pgmlab::Error>() {
            return Status::Resource;
        }
    }
    Status::Usage
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let argv = match merge_params_file(argv) {
        Ok(v) => v,
        Err(err) => {
            eprintln!("error: {err:#}");
            return ExitCode::from(Status::Usage.code());
        }
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(err) => {
            // clap renders help/version through the error path; keep exit 0
            // for those and use 1 for genuine usage errors.
            let code = if err.use_stderr() {
                Status::Usage.code()
            } else {
                0
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli) {
        Ok(output) => {
            if let Err(err) = emit(&cli.out, &output.text) {
                eprintln!("error: {err:#}");
                return ExitCode::from(Status::Usage.code());
            }
            ExitCode::from(output.status.code())
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(failure_status(&err).code())
        }
    }
}
