//! Command-line front end: parse operator-spec files, run analyses,
//! verify the catalog, ingest sampled operators, and emit CSV/JSON
//! reports.
//!
//! Exit codes: 0 = pass, 1 = analysis negative, 2 = usage or parse
//! error.

mod commands;
mod report;
mod specfile;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "unikit", version, about = "Uninorms, fuzzy negations and (U,N)-implication analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Grid resolution n (the grid has n+1 points).
    #[arg(long, default_value_t = unikit::numerics::DEFAULT_PAIR_GRID_N)]
    grid: usize,
    /// Equality tolerance for operator values.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Tolerance for closed-form identities (neutral elements, cut endpoints).
    #[arg(long = "exact-tol", default_value_t = 1e-12)]
    exact_tol: f64,
    /// Residual jump above which a discontinuity is declared.
    #[arg(long = "jump-floor", default_value_t = 1e-6)]
    jump_floor: f64,
    /// Seed for the pseudo-random triples of axiom and exchange scans.
    #[arg(long, default_value_t = 0x554E_494E)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Run the bundled worked instances and report pass/fail per relation.
    VerifyCatalog {
        #[command(flatten)]
        common: CommonOpts,
        /// Restrict to the named instances.
        #[arg(long)]
        only: Vec<String>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write one CSV row per verified relation.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check the uninorm axioms (or implication axioms) of an operator.
    Axioms {
        #[command(flatten)]
        common: CommonOpts,
        /// Operator or negation spec file.
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan horizontal cuts and classify their validity.
    Cuts {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        op: PathBuf,
        /// uninorm-cut or implication-cut.
        #[arg(long)]
        role: String,
        /// Explicit comma-separated cut positions.
        #[arg(long)]
        alphas: Option<String>,
        /// Scan the uniform interior grid with this many points instead.
        #[arg(long = "alpha-grid", default_value_t = 99)]
        alpha_grid: usize,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract the (N*, U*) representation of an implication at a cut.
    Extract {
        #[command(flatten)]
        common: CommonOpts,
        /// Implication spec file.
        #[arg(long, conflicts_with = "catalog")]
        op: Option<PathBuf>,
        /// Catalog implication as instance:operator, e.g. example1:I1.
        #[arg(long)]
        catalog: Option<String>,
        #[arg(long)]
        alpha: f64,
        /// Directory receiving n_star.csv, u_star.csv and record.json.
        #[arg(long = "out-dir")]
        out_dir: PathBuf,
    },
    /// Compare two operators on the grid square.
    Equal {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Excluded points as x,y;x,y.
        #[arg(long)]
        exclude: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample an operator to x,y,value CSV in row-major order.
    Sample {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::VerifyCatalog { common, only, out, csv } => commands::verify_catalog(&common, &only, out.as_deref(), csv.as_deref()),
        Command::Axioms { common, op, out } => commands::axioms(&common, &op, out.as_deref()),
        Command::Cuts { common, op, role, alphas, alpha_grid, out } => {
            commands::cuts(&common, &op, &role, alphas.as_deref(), alpha_grid, out.as_deref())
        }
        Command::Extract { common, op, catalog, alpha, out_dir } => {
            commands::extract(&common, op.as_deref(), catalog.as_deref(), alpha, &out_dir)
        }
        Command::Equal { common, a, b, exclude, out } => {
            commands::equal(&common, &a, &b, exclude.as_deref(), out.as_deref())
        }
        Command::Sample { common, op, out } => commands::sample(&common, &op, out.as_deref()),
    };
    match outcome {
        Ok(true) => std::process::exit(0),
        Ok(false) => std::process::exit(1),
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
    }
}
