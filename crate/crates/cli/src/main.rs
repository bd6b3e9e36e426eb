use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use omni_cli::commands::{dispatch, Request, COMMANDS};

/// Exact symbolic calculus on vector bundle jet forms over a coordinate
/// chart. Prints one JSON report; exits 0 on success, 1 when the checked
/// property fails, 2 on usage or parse errors.
#[derive(Parser, Debug)]
#[command(name = "omni", version)]
struct Cli {
    /// Command to run.
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(COMMANDS))]
    command: String,
    /// Operands in the object grammar; put operands starting with `-` after `--`.
    operands: Vec<String>,
    /// Chart dimension.
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Bundle rank.
    #[arg(long, default_value_t = 1)]
    r: usize,
    /// Form degree.
    #[arg(long)]
    n: Option<isize>,
    /// Seed of the ChaCha8 generator used by `verify`.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Trials per suite for `verify`.
    #[arg(long, default_value_t = 50)]
    trials: usize,
    /// Total degree bound of random polynomials.
    #[arg(long, default_value_t = 2)]
    max_deg: u32,
    /// Coefficient degree bound of the `rigidity` ansatz.
    #[arg(long, default_value_t = 0)]
    deg: u32,
    /// Indent the JSON report.
    #[arg(long)]
    pretty: bool,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Read operands from this file, one per non-empty line; `#` starts a comment line.
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut operands = cli.operands;
    if let Some(path) = &cli.input {
        match std::fs::read_to_string(path) {
            Ok(text) => operands.extend(
                text.lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(String::from),
            ),
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
    }
    let req = Request {
        command: cli.command,
        m: cli.m,
        r: cli.r,
        n: cli.n,
        seed: cli.seed,
        trials: cli.trials,
        max_deg: cli.max_deg,
        deg: cli.deg,
        operands,
    };
    let report = dispatch(&req);
    let text = report.to_json(cli.pretty);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{text}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
