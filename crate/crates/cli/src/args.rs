use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "affine-paths",
    version,
    about = "Energy-graded path counts and alternating-sum identities for affine crystals of type A"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Directory holding cached R-matrix tables.
    #[arg(long, env = "CRYSTAL_CACHE_DIR", global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads for parallel sums (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    /// Rank n of A_{n-1}^{(1)}.
    #[arg(long)]
    pub n: usize,
    /// Factor shapes, leftmost first, e.g. 1x2,2x1,1x1.
    #[arg(long, default_value = "")]
    pub shapes: String,
    /// Level l.
    #[arg(long)]
    pub level: Option<i64>,
    /// Starting weight, e.g. L0 or L0+L2.
    #[arg(long = "Lambda")]
    pub lambda: Option<String>,
    /// Target weight, e.g. 2L0.
    #[arg(long = "LambdaPrime")]
    pub lambda_prime: Option<String>,
    /// Ground-state crystal shape KxL (default 1x<level>).
    #[arg(long)]
    pub b0: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy-graded count of classically restricted (with --lambda) or
    /// level-restricted paths.
    Kostka {
        #[command(flatten)]
        spec: SpecArgs,
        /// Classical highest weight as a partition, e.g. 2,1.
        #[arg(long = "lambda")]
        partition: Option<String>,
    },
    /// Compare the alternating sum with the level-restricted count.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Re-evaluate with the translation bound widened by 2.
        #[arg(long)]
        widen_check: bool,
    },
    /// Level-one identity: the alternating sum is q^E(p) for the unique
    /// restricted path p.
    VerifyOne {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        widen_check: bool,
    },
    /// Level-zero identity and its cancelling involution.
    VerifyZero {
        /// Rank n.
        #[arg(long)]
        n: usize,
        /// Single-column shapes, e.g. 1x1,2x1.
        #[arg(long, default_value = "")]
        shapes: String,
        #[arg(long)]
        widen_check: bool,
    },
    /// Normalize a Schur symbol: `straighten n=3 l=1 alpha=0,-1,2`.
    Straighten {
        /// Tokens of the form n=.., l=.., alpha=..
        tokens: Vec<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        level: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
    },
    /// Manage the R-matrix table cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    /// List cached tables with their checksums.
    List,
    /// Build tables for every ordered pair of the given shapes.
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        shapes: String,
    },
    /// Remove all cached tables.
    Clear,
}
