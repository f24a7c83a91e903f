mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use commands::{SamplingArgs, TheoremCmd};
use output::{render_human, CliError, CommandResult, Report};

/// Mahler measures of sparse resultants.
///
/// Exit codes: 0 success, 2 malformed input, 3 precondition violated,
/// 4 a verification step failed. `RESMAHLER_THREADS` sets the worker count.
#[derive(Debug, Parser)]
#[command(name = "resmahler", version)]
struct Cli {
    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mahler measure of a Laurent polynomial, e.g. "1 + x + y".
    Mm {
        expr: String,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Closed-form evaluators, optionally checked against QMC.
    Theorem {
        #[command(subcommand)]
        which: TheoremCmd,
    },
    /// Numerical check of the polylogarithm identities.
    Identities {
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Dimension and class of a support family (file, or inline with `|`).
    Polytope { family: String },
    /// Compare m(1 + s_1 + ... + s_ell) with its large-ell asymptotic.
    Smyth {
        #[arg(long)]
        ell: usize,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// The constants used by the closed forms.
    Constants,
}

impl Command {
    fn name(&self) -> String {
        match self {
            Command::Mm { .. } => "mm".into(),
            Command::Theorem { which } => format!(
                "theorem {}",
                match which {
                    TheoremCmd::Dim1 { .. } => "dim1",
                    TheoremCmd::Dim2 { .. } => "dim2",
                    TheoremCmd::General { .. } => "general",
                    TheoremCmd::Dim3 { .. } => "dim3",
                    TheoremCmd::Trinomial { .. } => "trinomial",
                    TheoremCmd::Dim4 { .. } => "dim4",
                }
            ),
            Command::Identities { .. } => "identities".into(),
            Command::Polytope { .. } => "polytope".into(),
            Command::Smyth { .. } => "smyth".into(),
            Command::Constants => "constants".into(),
        }
    }

    fn run(&self) -> Result<Report, CliError> {
        match self {
            Command::Mm { expr, sampling } => commands::mm(expr, sampling),
            Command::Theorem { which } => commands::theorem(which),
            Command::Identities {
                tolerance,
                samples,
                seed,
            } => commands::identities(*tolerance, *samples, *seed),
            Command::Polytope { family } => commands::polytope(family),
            Command::Smyth { ell, sampling } => commands::smyth(*ell, sampling),
            Command::Constants => Ok(commands::constants()),
        }
    }
}

fn init_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("RESMAHLER_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Input(format!("RESMAHLER_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Input(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("{e}");
        return e.exit_code();
    }
    let start = Instant::now();
    let report = match cli.command.run() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            return e.exit_code();
        }
    };
    let verified = report.verified;
    let out = CommandResult {
        command: cli.command.name(),
        inputs: report.inputs,
        result: report.result,
        cross_check: report.cross_check,
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    let text = if cli.json {
        format!("{}\n", serde_json::to_string_pretty(&out).expect("serializable result"))
    } else {
        render_human(&out)
    };
    // ignore a closed pipe
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    if verified {
        ExitCode::SUCCESS
    } else {
        eprintln!("verification failed");
        ExitCode::from(4)
    }
}
