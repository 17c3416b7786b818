//! `vlh`: link homology of virtual links from the command line.
//!
//! Exit codes: 0 all checks pass, 1 computation error, 2 failed assertion or
//! mismatch, 3 bad input.

mod commands;
mod theory;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Computation(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Computation(_) => "computation",
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 3,
            CliError::Computation(_) => 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "vlh", version, about = "Exact link homology of virtual links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chain dimensions, Betti numbers and Euler characteristics.
    Compute(Common),
    /// Check the Frobenius-algebra axioms and the four-tube relation.
    Verify(Common),
    /// Random Reidemeister walks and fixed R3 pairs; reports Betti changes.
    Invariance(Common),
    /// Value of a closed surface with given genus and crosscap count.
    Surface(SurfaceArgs),
    /// The unnormalised Jones polynomial.
    Jones(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args)]
pub struct Common {
    /// Diagram file (.json or text Gauss code) or built-in corpus name; repeatable.
    /// Defaults to the whole built-in corpus.
    #[arg(long = "diagram", value_name = "PATH")]
    pub diagrams: Vec<PathBuf>,
    /// Preset theory name (f2_row1..f2_row8, manturov); repeatable.
    #[arg(long = "theory", value_name = "NAME")]
    pub theories: Vec<String>,
    /// Explicit parameters: a=..,t=..,lambda=..,mu=..,beta=..[,field=..].
    #[arg(long, value_name = "K=V,...")]
    pub params: Option<String>,
    /// Solve for t from a,lambda,mu[,field=..] with beta = 0.
    #[arg(long, value_name = "A,LAMBDA,MU")]
    pub triple: Option<String>,
    /// Ground field: q, f2 or fp:<prime>.
    #[arg(long, value_name = "FIELD")]
    pub field: Option<String>,
    /// Report the quantum-graded table (homogeneous theories only).
    #[arg(long)]
    pub graded: bool,
    /// Moves per random walk.
    #[arg(long, default_value_t = 50)]
    pub moves: usize,
    /// Seed for random walks.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args)]
pub struct SurfaceArgs {
    #[arg(long, default_value_t = 0)]
    pub genus: u32,
    #[arg(long, default_value_t = 0)]
    pub crosscaps: u32,
    #[command(flatten)]
    pub common: Common,
}

/// A finished command: what to print and whether every check passed.
pub struct Outcome {
    pub json: serde_json::Value,
    pub text: String,
    pub passed: bool,
}

fn emit(common: &Common, body: &str) -> Result<(), CliError> {
    match &common.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Computation(e.to_string()))
        }
    }
}

fn render(common: &Common, outcome: &Outcome) -> String {
    match common.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&outcome.json).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => outcome.text.clone(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (common, result) = match &cli.command {
        Command::Compute(c) => (c, commands::compute(c)),
        Command::Verify(c) => (c, commands::verify(c)),
        Command::Invariance(c) => (c, commands::invariance(c)),
        Command::Surface(s) => (&s.common, commands::surface(s)),
        Command::Jones(c) => (c, commands::jones(c)),
    };
    let result = result.and_then(|outcome| {
        emit(common, &render(common, &outcome))?;
        Ok(outcome.passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            match common.format {
                Format::Json => {
                    let body = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
                    println!("{}", serde_json::to_string_pretty(&body).expect("error serializes"));
                }
                Format::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
