//! Command-line driver: thin argument parsing and report output around the
//! library's experiment functions.
//!
//! Exit codes: 0 success, 2 input error, 3 numeric certification failure.

use clap::{Args, Parser, Subcommand};
use gpnorm::experiments::{self, ExperimentReport, SumsMode};
use gpnorm::lacunary::{parse_poly, ExponentVector};
use gpnorm::{Error, Result};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "gpnorm", version, about = "Cyclotomic norms, Mahler measures, and lattice reductions")]
struct Cli {
    /// Write the report rows as CSV.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write the report metadata and summary as JSON.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Worker threads (overrides the GPNORM_THREADS environment variable;
    /// default: machine parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Top rung of the root-finder precision ladder, in bits.
    #[arg(long, global = true)]
    precision: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BudgetArgs {
    /// Total sampling budget for quadrature estimators.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    /// Randomization seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Exact norm Δ_p(a) for explicit exponents or the order-f period.
    Norm {
        #[arg(long)]
        p: u64,
        /// Subgroup order; uses the Gaussian-period exponent vector.
        #[arg(long, conflicts_with = "a")]
        f: Option<u64>,
        /// Comma-separated exponents a1,a2,…
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_hyphen_values = true)]
        a: Option<Vec<i64>>,
    },
    /// Convergence of log Δ_p/(p−1) toward m(Ω) over primes p ≡ 1 (mod f).
    Convergence {
        #[arg(long)]
        f: u64,
        #[arg(long)]
        pmax: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Census of unit norms and signed coset products.
    Units {
        #[arg(long)]
        f: u64,
        #[arg(long)]
        pmax: u64,
    },
    /// Census of small sums of p-th roots of unity.
    Sums {
        #[arg(long, conflicts_with = "a")]
        f: Option<u64>,
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_hyphen_values = true)]
        a: Option<Vec<i64>>,
        #[arg(long)]
        pmax: u64,
        /// Threshold exponents λ (comma-separated, each ≥ 1).
        #[arg(long, value_delimiter = ',', num_args = 1.., default_value = "1")]
        lambda: Vec<f64>,
        /// Threshold constant: counts |sum| < c⁻¹·p^{−λ}.
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
    /// Substitution-limit errors m(P(X,X^q,…)) − m(P) along a q-list.
    Lawton {
        #[arg(long)]
        poly: String,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        q: Vec<i64>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Sublevel-set volumes vol{x : |P(e(x))| < y}.
    Sublevel {
        #[arg(long)]
        poly: String,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        y: Vec<f64>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Logarithmic Mahler measure of a polynomial.
    Mahler {
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Basis and hypothesis status of the Gaussian-period subgroup.
    Omega {
        #[arg(long)]
        f: u64,
    },
}

fn run(cli: &Cli) -> Result<ExperimentReport> {
    match &cli.command {
        Command::Norm { p, f, a } => match (f, a) {
            (Some(f), None) => experiments::run_norm_periods(*p, *f),
            (None, Some(a)) => experiments::run_norm(&ExponentVector::new(a.clone())?, *p),
            _ => Err(Error::InvalidInput("norm requires exactly one of --f or --a".into())),
        },
        Command::Convergence { f, pmax, budget } => {
            experiments::run_convergence(*f, *pmax, budget.budget, budget.seed)
        }
        Command::Units { f, pmax } => experiments::run_unit_census(*f, *pmax),
        Command::Sums { f, a, pmax, lambda, c } => {
            let mode = match (f, a) {
                (Some(f), None) => SumsMode::Periods { f: *f },
                (None, Some(a)) => SumsMode::Fixed { a: ExponentVector::new(a.clone())? },
                _ => {
                    return Err(Error::InvalidInput(
                        "sums requires exactly one of --f or --a".into(),
                    ))
                }
            };
            experiments::run_small_sums_census(&mode, *pmax, lambda, *c)
        }
        Command::Lawton { poly, q, budget } => {
            experiments::run_lawton_rate(&parse_poly(poly)?, q, budget.budget, budget.seed)
        }
        Command::Sublevel { poly, y, budget } => {
            experiments::run_sublevel(&parse_poly(poly)?, y, budget.budget, budget.seed)
        }
        Command::Mahler { poly, budget } => {
            experiments::run_mahler(&parse_poly(poly)?, budget.budget, budget.seed)
        }
        Command::Omega { f } => experiments::run_omega(*f),
    }
}

fn print_report(report: &ExperimentReport) {
    println!("experiment: {} (v{})", report.experiment, report.version);
    for (k, v) in &report.params {
        println!("  {k} = {v}");
    }
    println!("  seed = {}", report.seed);
    println!();
    println!("{}", report.columns.join(","));
    const PREVIEW: usize = 20;
    for row in report.rows.iter().take(PREVIEW) {
        println!("{}", row.join(","));
    }
    if report.rows.len() > PREVIEW {
        println!("… ({} rows total; use --out for the full CSV)", report.rows.len());
    }
    println!();
    println!("summary:");
    for (k, v) in &report.summary {
        println!("  {k} = {v}");
    }
}

fn main() {
    let cli = Cli::parse();

    let threads = cli
        .threads
        .or_else(|| std::env::var("GPNORM_THREADS").ok().and_then(|s| s.parse().ok()));
    if let Some(k) = threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("gpnorm: could not configure {k} threads: {e}");
            std::process::exit(2);
        }
    }
    if let Some(bits) = cli.precision {
        if bits < 53 {
            eprintln!("gpnorm: --precision must be at least 53 bits");
            std::process::exit(2);
        }
        gpnorm::rootfind::set_default_precision(bits);
    }

    match run(&cli) {
        Ok(report) => {
            print_report(&report);
            if let Some(path) = &cli.out {
                if let Err(e) = report.write_csv(path) {
                    eprintln!("gpnorm: writing {}: {e}", path.display());
                    std::process::exit(2);
                }
            }
            if let Some(path) = &cli.json {
                if let Err(e) = report.write_json(path) {
                    eprintln!("gpnorm: writing {}: {e}", path.display());
                    std::process::exit(2);
                }
            }
        }
        Err(e) => {
            eprintln!("gpnorm: {e}");
            std::process::exit(if e.is_certification_failure() { 3 } else { 2 });
        }
    }
}
