use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fermat_squares::cli::{
    cmd_brute, cmd_chain, cmd_family, cmd_pell, cmd_verify, parse_seed, write_records,
    ChainMethod, ChainOptions, CommandError, CommandOutput,
};
use fermat_squares::triples::Family;
use fermat_squares::Branch;

#[derive(Parser)]
#[command(name = "fermat-squares", version, about = "Pythagorean triangles with square hypotenuse and square arm sum")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solutions of u² − 2v² = ±1 for k = 1..=count
    Pell {
        #[arg(long)]
        count: u64,
    },
    /// Rows of the square-arm-sum or square-hypotenuse family
    Family {
        #[arg(long, value_enum)]
        kind: FamilyArg,
        #[arg(long)]
        count: u64,
    },
    /// Chain solutions with the closed-form (fermat) or quartic method
    Chain {
        #[arg(long, value_enum)]
        method: MethodArg,
        #[arg(long)]
        steps: u64,
        #[arg(long, value_enum, default_value_t = BranchArg::T1)]
        branch: BranchArg,
        /// JSON record to start from (a previous output line)
        #[arg(long)]
        seed_file: Option<PathBuf>,
        /// Allow chains long enough to take a very long time
        #[arg(long)]
        long_ok: bool,
    },
    /// Check x² + y² = z², z square, x + y square, gcd(x, y) = 1
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// All x ≤ bound with x² + (x + 1)² a fourth power
    Brute {
        #[arg(long)]
        bound: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    SumSquare,
    HypSquare,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Fermat,
    Quartic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BranchArg {
    T1,
    T2,
}

fn run(command: Command) -> CommandOutput {
    let done = |r: Result<Vec<_>, CommandError>| match r {
        Ok(records) => CommandOutput { records, error: None },
        Err(e) => CommandOutput { records: Vec::new(), error: Some(e) },
    };
    match command {
        Command::Pell { count } => done(cmd_pell(count)),
        Command::Family { kind, count } => done(cmd_family(
            match kind {
                FamilyArg::SumSquare => Family::SumSquare,
                FamilyArg::HypSquare => Family::HypSquare,
            },
            count,
        )),
        Command::Chain { method, steps, branch, seed_file, long_ok } => {
            let method = match method {
                MethodArg::Fermat => ChainMethod::Fermat,
                MethodArg::Quartic => ChainMethod::Quartic,
            };
            let seed = match seed_file {
                None => None,
                Some(path) => {
                    let parsed = std::fs::read_to_string(&path)
                        .map_err(|e| CommandError::Usage(format!("{}: {e}", path.display())))
                        .and_then(|text| parse_seed(&text, method));
                    match parsed {
                        Ok(seed) => Some(seed),
                        Err(e) => return done(Err(e)),
                    }
                }
            };
            cmd_chain(&ChainOptions {
                method,
                steps,
                branch: match branch {
                    BranchArg::T1 => Branch::T1,
                    BranchArg::T2 => Branch::T2,
                },
                seed,
                long_ok,
            })
        }
        Command::Verify { x, y, z } => done(cmd_verify(&x, &y, &z).map(|r| vec![r])),
        Command::Brute { bound } => done(cmd_brute(bound)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or_default();
            let err = CommandError::Usage(first.trim_start_matches("error: ").to_string());
            eprintln!("{}", err.to_json_line());
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    let output = run(cli.command);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if let Err(e) = write_records(&mut out, &output.records) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("{}", serde_json::json!({ "error": "io", "message": e.to_string() }));
        }
        return ExitCode::from(1);
    }
    let _ = out.flush();
    match output.error {
        None => ExitCode::SUCCESS,
        Some(err) => {
            eprintln!("{}", err.to_json_line());
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
