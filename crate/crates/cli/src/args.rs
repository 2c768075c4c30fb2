use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lgenus::series::{DEFAULT_DELTA, DEFAULT_TOL};
use lgenus::verify::DEFAULT_SEED;

/// Exact coefficients of multiplicative sequences and checks of their
/// multiple zeta value identities.
///
/// Every global flag can also be set through an `LGENUS_*` environment
/// variable, e.g. `LGENUS_DEPTH=200000`.
#[derive(Debug, Parser)]
#[command(name = "lgenus", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Genus: L, Ahat, or custom (with --genus-file).
    #[arg(long, global = true, env = "LGENUS_GENUS", default_value = "L")]
    pub genus: String,

    /// JSON file with the characteristic series of a custom genus.
    #[arg(long, global = true, env = "LGENUS_GENUS_FILE")]
    pub genus_file: Option<PathBuf>,

    /// Truncation depth N of series evaluations [default: 10^6 for r <= 2, 2*10^5 beyond].
    #[arg(long, global = true, env = "LGENUS_DEPTH")]
    pub depth: Option<usize>,

    /// Tolerance of numeric checks (relative for coefficient checks).
    #[arg(long, global = true, env = "LGENUS_TOL", default_value_t = DEFAULT_TOL)]
    pub tol: f64,

    /// Every exponent must be at least 1 + delta.
    #[arg(long, global = true, env = "LGENUS_DELTA", default_value_t = DEFAULT_DELTA)]
    pub delta: f64,

    /// Seed of the tuple sampler.
    #[arg(long, global = true, env = "LGENUS_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Worker threads (1 gives the reference single-threaded run).
    #[arg(long, global = true, env = "LGENUS_THREADS")]
    pub threads: Option<usize>,

    /// Output format: text, latex, json (poly); csv, json (table); text (verify).
    #[arg(long, global = true, env = "LGENUS_FORMAT")]
    pub format: Option<Format>,

    /// Write the output to this file instead of stdout.
    #[arg(long, global = true, env = "LGENUS_OUT")]
    pub out: Option<PathBuf>,

    /// Coefficient cache (JSON), reused and extended across runs.
    #[arg(long, global = true, env = "LGENUS_CACHE")]
    pub cache: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print one coefficient, e.g. `coeff --partition 2,1`.
    Coeff {
        /// Parts separated by `,` or `+`.
        #[arg(long)]
        partition: String,
    },
    /// Print the polynomial of degree k.
    Poly {
        #[arg(long)]
        k: usize,
    },
    /// Write every coefficient of degree 1..=max-k.
    Table {
        #[arg(long)]
        max_k: usize,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// main, ahat, hoffman, multiple-eta, positivity, formal, oracle or signs.
    pub suite: String,

    /// Largest degree checked (all degrees 1..=k are covered).
    #[arg(long, visible_alias = "k")]
    pub max_k: Option<usize>,

    /// Largest tuple length, or ground-set size for the formal suite.
    #[arg(long)]
    pub max_r: Option<usize>,

    /// Level cap of the formal suite.
    #[arg(long, default_value_t = 4)]
    pub n: u32,

    /// Random tuples per length (positivity: in total).
    #[arg(long)]
    pub samples: Option<usize>,
}
