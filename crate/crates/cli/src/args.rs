use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "gbent", version, about = "Exact spectral analysis of generalized Boolean functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify one function and run every applicable checker.
    Analyze(AnalyzeArgs),
    /// Gray image only (same as `analyze --gray-only`).
    Gray(InputArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Search a space of functions for a property.
    Search(SearchArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Truth table as "k:n:v0,v1,..." or "k:n:hexdigits".
    pub table: Option<String>,
    /// Truth table given inline.
    #[arg(long, conflicts_with = "table")]
    pub tt: Option<String>,
    /// File holding a truth table or a JSON object {"n", "k", "values"}.
    #[arg(long, conflicts_with_all = ["table", "tt"])]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Add floating-point renderings of spectral values (display only).
    #[arg(long)]
    pub approx: bool,
    #[arg(long)]
    pub gray_only: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SuiteName {
    Identities,
    K2,
    K3,
    K4,
    #[value(name = "k4-z4")]
    K4Z4,
    Gsemibent,
    Inductive,
    Gray,
    Regularity,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub suite: SuiteName,
    #[arg(long)]
    pub n: u32,
    /// Level; fixed by the k2/k3/k4 suites, defaults to 4 otherwise.
    #[arg(long)]
    pub k: Option<u32>,
    /// Random samples when the space is too large to enumerate.
    #[arg(long, default_value_t = 1000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeName {
    Exhaustive,
    Random,
    Construct,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub mode: ModeName,
    /// gbent, gsemibent, plateaued:<s> or theorem-discrepancy.
    #[arg(long, default_value = "gbent")]
    pub predicate: String,
    /// scaled-bent, sparse or direct-sum (construct mode).
    #[arg(long, default_value = "sparse")]
    pub family: String,
    /// Candidates in random and construct modes.
    #[arg(long, default_value_t = 1000)]
    pub count: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// JSONL file for matched functions.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
