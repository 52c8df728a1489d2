//! `arithdyn` command-line front end.

mod commands;
mod config;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::Config;
use report::Format;

#[derive(Parser, Debug)]
#[command(name = "arithdyn", version, about = "Multiplicative dependence in polynomial orbits")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// CSV output.
    #[arg(long, global = true)]
    csv: bool,
    /// Coefficient field [default: q, or `domain` from the config file].
    #[arg(long, global = true, value_enum)]
    domain: Option<DomainArg>,
    /// Seed for randomized entry points [default: 0].
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for parallel steps.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DomainArg {
    Q,
    Qi,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Orbit values f^m(x0), m = 1..n, and preperiodicity.
    Orbit(OrbitArgs),
    /// Multiplicative dependence of rationals, with a certificate.
    Multdep(MultdepArgs),
    /// Multiplicative rank of rationals.
    Rank(ValuesArgs),
    /// LeVeque profile of (f, m).
    Leveque(LevequeArgs),
    /// Iterate trichotomy: exceptional form, exceptional square, or LeVeque iterate.
    Classify(LevequeArgs),
    /// Exceptional exponent set E(f), and E(f, g) with --g.
    Exceptional(ExceptionalArgs),
    /// The polynomial f̂ with f(X^ℓ) = f̂(X)^ℓ.
    Hat(HatArgs),
    /// Exact check of f^N(X^ℓ) = f̂^N(X)^ℓ.
    VerifySemiconj(VerifyArgs),
    /// Smallest (n, m) with f^n = g^m.
    CommonIterate(CommonIterateArgs),
    /// Builds a standard or specific pair (f1, g1).
    StandardPair(StandardPairArgs),
    /// Integer solutions of f(x) = g(y) with |x|, |y| ≤ H.
    ScanSolutions(ScanArgs),
    /// Divisibility and rigidity of an orbit of 0 (or an explicit sequence).
    RdsCheck(RdsArgs),
    /// Primitive parts of orbit terms, by gcd-stripping.
    Ppd(PpdArgs),
    /// Squarefree decomposition of a polynomial, or radical of an integer.
    Sqfree(SqfreeArgs),
    /// Dependent index tuples over [1, N]^n, with certificates.
    Count(CountArgs),
    /// deg rad(ABC) against max degree for C = -(A + B).
    AbcCheck(AbcArgs),
}

#[derive(Args, Debug)]
pub struct OrbitArgs {
    #[arg(allow_hyphen_values = true)]
    pub f: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub x0: String,
    #[arg(long = "n", default_value_t = 10)]
    pub n: usize,
    /// Size cap for orbit values [default: 2097152].
    #[arg(long)]
    pub max_bits: Option<u64>,
}

#[derive(Args, Debug)]
pub struct ValuesArgs {
    /// Nonzero rationals such as `4`, `-3/2`.
    #[arg(allow_negative_numbers = true, required = true)]
    pub values: Vec<String>,
}

#[derive(Args, Debug)]
pub struct MultdepArgs {
    #[arg(allow_negative_numbers = true, required_unless_present = "random")]
    pub values: Vec<String>,
    /// Test a random tuple of this length built from the primes 2, 3, 5, 7.
    #[arg(long, conflicts_with = "values")]
    pub random: Option<usize>,
}

#[derive(Args, Debug)]
pub struct LevequeArgs {
    #[arg(allow_hyphen_values = true)]
    pub f: String,
    #[arg(long)]
    pub m: u64,
}

#[derive(Args, Debug)]
pub struct ExceptionalArgs {
    #[arg(allow_hyphen_values = true)]
    pub f: String,
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
}

#[derive(Args, Debug)]
pub struct HatArgs {
    #[arg(allow_hyphen_values = true)]
    pub f: String,
    #[arg(long)]
    pub l: u64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(allow_hyphen_values = true)]
    pub f: String,
    /// f̂; built from f when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub hat: Option<String>,
    #[arg(long)]
    pub l: u32,
    #[arg(long = "n", default_value_t = 1)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct CommonIterateArgs {
    #[arg(allow_hyphen_values = true)]
    pub f: String,
    #[arg(allow_hyphen_values = true)]
    pub g: String,
    /// Largest degree searched [default: 1000000].
    #[arg(long)]
    pub maxdeg: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    First,
    Second,
    Third,
    Fourth,
    Fifth,
    Specific,
}

#[derive(Args, Debug)]
pub struct StandardPairArgs {
    #[arg(value_enum)]
    pub kind: KindArg,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long = "n")]
    pub n: Option<u32>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub p: String,
    /// Swap the roles of f1 and g1.
    #[arg(long)]
    pub switched: bool,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(allow_hyphen_values = true)]
    pub f: String,
    #[arg(allow_hyphen_values = true)]
    pub g: String,
    #[arg(long = "H", default_value_t = 100)]
    pub height: i64,
}

#[derive(Args, Debug)]
pub struct RdsArgs {
    /// Integer polynomial of degree ≥ 2 whose orbit is checked.
    #[arg(allow_hyphen_values = true, required_unless_present = "sequence")]
    pub f: Option<String>,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub x0: String,
    #[arg(long = "n", default_value_t = 12)]
    pub n: usize,
    /// Explicit comma-separated integer sequence instead of an orbit.
    #[arg(long, conflicts_with = "f", allow_hyphen_values = true)]
    pub sequence: Option<String>,
    /// Largest prime checked for rigidity [default: 100000].
    #[arg(long)]
    pub prime_bound: Option<u64>,
}

#[derive(Args, Debug)]
pub struct PpdArgs {
    #[arg(allow_hyphen_values = true)]
    pub f: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub x0: String,
    #[arg(long = "n", default_value_t = 10)]
    pub n: usize,
    #[arg(long)]
    pub max_bits: Option<u64>,
}

#[derive(Args, Debug)]
pub struct SqfreeArgs {
    #[arg(allow_hyphen_values = true)]
    pub input: String,
    /// Treat the input as an integer and compute its radical by bounded factoring.
    #[arg(long)]
    pub integer: bool,
    #[arg(long)]
    pub trial_bound: Option<u64>,
    #[arg(long)]
    pub rho_iterations: Option<u64>,
    #[arg(long)]
    pub rho_attempts: Option<u32>,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    /// Polynomials f_1, …; a single one is repeated n times.
    #[arg(long = "f", required = true, allow_hyphen_values = true)]
    pub fs: Vec<String>,
    /// Starting points x_1, …; a single one is repeated n times.
    #[arg(long = "x", required = true, allow_hyphen_values = true)]
    pub xs: Vec<String>,
    /// Number of orbits [default: number of --f].
    #[arg(long = "n")]
    pub n: Option<usize>,
    #[arg(long = "N")]
    pub big_n: usize,
    /// Largest accepted n · N^n [default: 2000000].
    #[arg(long)]
    pub budget: Option<u64>,
    /// Skip tuples with a coordinate ±1.
    #[arg(long)]
    pub rank_filter: bool,
    #[arg(long)]
    pub max_bits: Option<u64>,
}

#[derive(Args, Debug)]
pub struct AbcArgs {
    #[arg(allow_hyphen_values = true)]
    pub a: String,
    #[arg(allow_hyphen_values = true)]
    pub b: String,
}

/// Negative numbers and polynomials (`-3/2`, `-X^2+1`) would otherwise be
/// read as flags; their leading minus becomes U+2212, which the parsers
/// accept as a minus sign.
fn protect_negatives(args: impl Iterator<Item = String>) -> Vec<String> {
    args.map(|a| match a.strip_prefix('-') {
        Some(rest) if rest.starts_with(|c: char| c.is_ascii_digit() || "Xxi(./".contains(c)) => format!("\u{2212}{rest}"),
        _ => a,
    })
    .collect()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse_from(protect_negatives(std::env::args())) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { commands::EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let config = match Config::from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(commands::EXIT_USAGE);
        }
    };
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Text
    };
    let ctx = match commands::Context::new(&cli, config) {
        Ok(ctx) => ctx,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return ExitCode::from(e.code());
        }
    };
    match commands::run(&cli.command, &ctx) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let body = report.render(format);
            let _ = write!(out, "{body}");
            if !body.ends_with('\n') {
                let _ = writeln!(out);
            }
            ExitCode::from(report.exit)
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
