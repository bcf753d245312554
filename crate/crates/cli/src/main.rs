mod commands;
mod papercheck;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use genus2cm::fixtures::FixtureStore;
use genus2cm::Error;
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "genus2cm", version, about = "Genus-2 invariants, Hasse-Witt data, CM reduction tables, theta constants and denominator bounds")]
pub struct Cli {
    /// Working precision in decimal digits (theta, classpoly).
    #[arg(long, global = true, default_value_t = 30, value_parser = clap::value_parser!(u32).range(5..=300))]
    pub prec: u32,
    /// Compact one-line JSON instead of pretty output.
    #[arg(long, global = true)]
    pub json: bool,
    /// papercheck: run only the checks whose group or full name is listed.
    #[arg(long, global = true, value_delimiter = ',')]
    pub only: Vec<String>,
    /// Read fixture files from this directory (checked against the built-in checksums).
    #[arg(long, global = true)]
    pub fixtures: Option<PathBuf>,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Args, Clone)]
pub struct FieldArgs {
    #[arg(long)]
    pub d: BigInt,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: BigInt,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: BigInt,
}

#[derive(Subcommand)]
pub enum Command {
    /// Igusa-Clebsch, J, gamma and absolute invariants of y^2 = u0 x^6 + ... + u6.
    Invariants {
        /// Q, GF(p) or GF(p^k; m0,...,m_{k-1},1).
        #[arg(long)]
        field: String,
        /// u0,...,u6 (or six values for a quintic); a^N, [c0,c1] and a/b are accepted.
        #[arg(long, allow_hyphen_values = true)]
        sextic: String,
    },
    /// Hasse-Witt matrix, a-number and f-number over a finite field.
    Hassewitt {
        #[arg(long)]
        field: String,
        /// Coefficients from x^6 (or x^5) down to the constant term.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Quartic CM field Q(sqrt(alpha + beta sqrt d)).
    Cmfield {
        #[command(flatten)]
        k: FieldArgs,
        #[arg(long)]
        p: Option<u64>,
        #[arg(value_enum, default_value_t = CmWhat::Info)]
        what: CmWhat,
    },
    /// Table rows consistent with how p splits.
    Predict {
        #[command(flatten)]
        k: FieldArgs,
        #[arg(long)]
        p: u64,
    },
    /// Dump a reduction table, or check it against the group engine.
    Tables {
        #[arg(long, value_enum)]
        kind: TableKind,
        #[arg(long)]
        verify: bool,
    },
    /// Valuation lower bounds for theta values, class polynomials and deformations.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Theta constants and derived quantities for period matrices in a JSON file.
    Theta {
        #[arg(long)]
        tau: PathBuf,
        #[arg(value_enum)]
        what: ThetaWhat,
    },
    /// Class polynomials from CM period matrices.
    Classpoly {
        #[arg(long)]
        taus: PathBuf,
        /// `auto` (needs --d --alpha --beta --primes) or a fixed positive integer.
        #[arg(long)]
        denom: String,
        #[arg(long)]
        d: Option<BigInt>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<BigInt>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<BigInt>,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        /// Largest accepted distance from an integer after clearing denominators.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Re-run every worked example and the fixture checks; nonzero exit on any failure.
    Papercheck,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum CmWhat {
    Info,
    Shapes,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum TableKind {
    Cyclic,
    Biquadratic,
    Nongalois,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ThetaWhat {
    Constants,
    Bigtheta,
    Rosenhain,
    Invariants,
}

#[derive(Subcommand)]
pub enum BoundsCmd {
    /// Lower bound for val(f(tau)) of a weight-k modular form.
    Theorem {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: BigInt,
        /// Tr(r) = 2 alpha.
        #[arg(long, allow_hyphen_values = true)]
        tr: BigInt,
    },
    /// Lower bound for the valuation of the coefficient a places below the top of h_i.
    Classpoly {
        #[arg(long)]
        i: u8,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        tr: BigInt,
        #[arg(long)]
        e: u32,
    },
    /// Bound on the valuation of class invariants.
    Classinv {
        #[arg(long)]
        e_star: u32,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        tr: BigInt,
    },
    /// Index bounds for deformations of a superspecial endomorphism ring.
    Deform {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: u64,
        #[arg(long)]
        n: u64,
    },
    /// Check every coefficient of a shipped class polynomial fixture at one prime.
    VerifyFixture {
        #[arg(long)]
        fixture: String,
        #[arg(long)]
        prime: u64,
    },
}

/// What went wrong, and how the process should exit.
pub enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Usage(m),
            e => Failure::Domain(e),
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::ZeroInput => "zero_input",
        Error::Unsupported(_) => "unsupported",
        Error::Parse(_) => "parse",
        Error::Invalid(_) => "invalid",
        Error::FieldMismatch => "field_mismatch",
        Error::Degenerate => "degenerate",
        Error::NotDetermined => "not_determined",
        Error::IndexObstruction(_) => "index_obstruction",
        Error::DegeneratePoint(_) => "degenerate_point",
        Error::PrecisionInfeasible(_) => "precision_infeasible",
        Error::Reconstruction(_) => "reconstruction",
        Error::Internal(_) => "internal",
        Error::Fixture(_) => "fixture",
    }
}

pub fn emit(v: &Value, compact: bool) {
    let s = if compact { serde_json::to_string(v) } else { serde_json::to_string_pretty(v) };
    println!("{}", s.expect("JSON values always serialize"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let compact = std::env::args().any(|a| a == "--json");
            let msg = e.kind().as_str().map(str::to_string).unwrap_or_else(|| "invalid arguments".into());
            emit(&json!({"error": {"kind": "usage", "message": msg}}), compact);
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    let store = cli.fixtures.clone().map(FixtureStore::Dir).unwrap_or_default();
    match commands::run(&cli, &store) {
        Ok((v, ok)) => {
            emit(&v, cli.json);
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            emit(&json!({"error": {"kind": "usage", "message": m}}), cli.json);
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            emit(&json!({"error": {"kind": error_kind(&e), "message": e.to_string()}}), cli.json);
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
