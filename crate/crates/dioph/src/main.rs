//! `dioph` — exact solver for homogeneous linear diophantine systems.
//!
//! Exit codes are a stable contract: 0 success, 1 input error, 2
//! verification failure.

use std::fs;
use std::io::Read as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dioph::{
    parse_matrix, reduce_report, solve_report, structure_report, Error, Int, Matrix, Report,
    SolveMethod, SolveOptions, DEFAULT_BRUTE_BOUND,
};

#[derive(Parser)]
#[command(
    name = "dioph",
    version,
    about = "Exact solver for homogeneous linear diophantine systems A*X = 0",
    after_help = "Input is plain text (header `m n`, then m rows of n integers) or JSON \
                  ({\"matrix\": [[...]]}, decimal strings for entries beyond 64 bits).\n\
                  Exit codes: 0 success, 1 input error, 2 verification failure.\n\
                  DIOPH_BRUTE_BOUND overrides the exhaustive-check bound used by --verify."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce the system: rank, nullity, d, K, and the column permutation
    Reduce(InputArgs),
    /// Reduction plus the module structure of S/M and U/S
    Structure(InputArgs),
    /// Compute a basis of the solution lattice S
    Solve(SolveArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Input file; `-` reads standard input
    file: String,
    /// Emit the report as JSON instead of a table
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Basis construction method
    #[arg(long, value_enum, default_value_t = Method::Direct)]
    method: Method,
    /// Re-check the basis against independent oracles; exit 2 on mismatch
    #[arg(long)]
    verify: bool,
    /// Seed for the randomized search inside the lifting methods
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Method {
    /// Congruence kernel of K modulo d (default)
    Direct,
    /// Last columns of the right transform of the Smith form of A
    Snf,
    /// Lift a basis of M along the invariant factors of S/M
    LiftInv,
    /// Lift a basis of M along the elementary divisors of S/M
    LiftElem,
    /// Lift a basis of M one prime of the index [S : M] at a time
    LiftPrime,
    /// Shortcut valid only when d is prime
    PrimeD,
}

impl From<Method> for SolveMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Direct => SolveMethod::Direct,
            Method::Snf => SolveMethod::Snf,
            Method::LiftInv => SolveMethod::LiftInv,
            Method::LiftElem => SolveMethod::LiftElem,
            Method::LiftPrime => SolveMethod::LiftPrime,
            Method::PrimeD => SolveMethod::PrimeD,
        }
    }
}

/// A failed run, tagged with which exit code it maps to.
enum Failure {
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap defaults to exit code 2 for usage errors; our contract
            // reserves 2 for verification failures, so remap to 1.
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Reduce(input) => {
            let a = read_matrix(&input.file)?;
            emit(&reduce_report(&a)?, input.json);
            Ok(())
        }
        Command::Structure(input) => {
            let a = read_matrix(&input.file)?;
            emit(&structure_report(&a)?, input.json);
            Ok(())
        }
        Command::Solve(args) => {
            let a = read_matrix(&args.input.file)?;
            let opts = SolveOptions {
                method: args.method.into(),
                verify: args.verify,
                seed: args.seed,
                brute_bound: brute_bound()?,
            };
            let report = solve_report(&a, &opts).map_err(|e| match e {
                Error::NotPrime(_) => Failure::Input(format!(
                    "method prime-d applies only when d is prime ({e}); use another method"
                )),
                other => other.into(),
            })?;
            let failed = report.verified == Some(false);
            emit(&report, args.input.json);
            if failed {
                return Err(Failure::Verification(
                    "the computed basis did not pass every check".into(),
                ));
            }
            Ok(())
        }
    }
}

fn read_matrix(path: &str) -> Result<Matrix<Int>, Failure> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map(|_| buf)
            .map_err(|e| Failure::Input(format!("cannot read stdin: {e}")))?
    } else {
        fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {path}: {e}")))?
    };
    Ok(parse_matrix(&text)?)
}

fn brute_bound() -> Result<u64, Failure> {
    match std::env::var("DIOPH_BRUTE_BOUND") {
        Ok(s) => s.trim().parse().map_err(|_| {
            Failure::Input(format!(
                "DIOPH_BRUTE_BOUND must be a non-negative integer, got {s:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_BRUTE_BOUND),
        Err(e) => Err(Failure::Input(format!("DIOPH_BRUTE_BOUND: {e}"))),
    }
}

fn emit(report: &Report, json: bool) {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_human());
    }
}
