use std::process::ExitCode;

use bsroots_cli::{execute, CliError, Command, Flags};
use clap::{Parser, Subcommand};

/// Roots of Bernstein-Sato polynomials of monomial ideals.
///
/// Ideals are given as term strings such as "x^2*y, y^3" or as JSON
/// {"vars": 2, "generators": [[2, 1], [0, 3]]}. Output is JSON unless
/// --table is given; rationals are written as "p/q".
#[derive(Debug, Parser)]
#[command(name = "bsroots", version)]
struct Cli {
    /// Upper bound for |root| considered, as a rational p/q (default: the number of variables).
    #[arg(long, global = true, value_name = "RATIONAL")]
    cap: Option<String>,
    /// Initial box size for the stabilization search.
    #[arg(long = "box", global = true, value_name = "INT")]
    box_bound: Option<i64>,
    /// Human-readable table instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    /// Number of worker threads.
    #[arg(long, global = true, value_name = "INT")]
    jobs: Option<usize>,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Roots of b_I(-s) with per-face provenance.
    Roots { ideal: String },
    /// Classes of the roots modulo Z from the facet denominators.
    Modz { ideal: String },
    /// Faces of the Newton polyhedron with their functionals.
    Faces { ideal: String },
    /// Compares roots of I, J and the product ideal in disjoint variables.
    CheckTs { a: String, b: String },
    /// Evaluates a b-polynomial expression such as "pow(2)*det(3)".
    Bpoly { expression: String },
    /// Compares the residue computation with brute-force enumeration.
    OracleVerify {
        /// Catalog of two-variable ideals with exponents up to this bound.
        #[arg(long, default_value_t = 8)]
        max_exponent: i64,
        /// Check this ideal only.
        #[arg(long)]
        ideal: Option<String>,
        /// Allow inputs beyond the oracle size limits.
        #[arg(long)]
        override_limits: bool,
    },
}

fn run(cli: Cli) -> Result<bsroots_cli::Output, CliError> {
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(CliError::Input("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| CliError::Input(e.to_string()))?;
    }
    let flags = Flags {
        cap: cli.cap.as_deref().map(Flags::parse_cap).transpose()?,
        box_bound: cli.box_bound,
        table: cli.table,
        timing: cli.timing,
    };
    let command = match cli.command {
        Sub::Roots { ideal } => Command::Roots { ideal },
        Sub::Modz { ideal } => Command::ModZ { ideal },
        Sub::Faces { ideal } => Command::Faces { ideal },
        Sub::CheckTs { a, b } => Command::CheckTs { a, b },
        Sub::Bpoly { expression } => Command::BPoly { expression },
        Sub::OracleVerify { max_exponent, ideal, override_limits } => {
            Command::OracleVerify { max_exponent, ideal, override_limits }
        }
    };
    execute(&command, &flags)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("bsroots: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
