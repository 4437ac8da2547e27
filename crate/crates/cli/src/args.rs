use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "clusterscore",
    version,
    about = "Score clustering algorithms on empirical features"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic dataset with a ground-truth column as CSV.
    Generate(GenerateArgs),
    /// Score algorithms on a dataset and write a report.
    Score(ScoreArgs),
    /// Merge JSON reports into one best/worst/average table.
    Table(TableArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Gaussian blobs as KxN (K blobs of N points).
    #[arg(long, conflicts_with = "rings", required_unless_present = "rings")]
    pub blobs: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Standard deviation of every blob.
    #[arg(long, default_value_t = 1.0)]
    pub spread: f64,
    /// Concentric rings as RADIUS:COUNT[,RADIUS:COUNT...].
    #[arg(long)]
    pub rings: Option<String>,
    /// Gaussian angular jitter for rings, in radians.
    #[arg(long, requires = "rings")]
    pub jitter: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Every flag can also be set in a JSON config file (same names, with
/// underscores). Flags given on the command line override the file.
#[derive(Debug, Args, Default)]
pub struct ScoreArgs {
    /// JSON run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// CSV dataset; the last column holds truth labels unless --no-truth.
    #[arg(long, conflicts_with = "generate")]
    pub data: Option<PathBuf>,
    /// Generated dataset, e.g. blobs:3x200,dim=2,seed=7 or rings:1:100,2:100.
    #[arg(long)]
    pub generate: Option<String>,
    /// Algorithm to score; repeatable. kmeans:k=3, dbscan:eps=0.5,min_pts=5,
    /// single:k=3, truth, external:"command".
    #[arg(long = "algo")]
    pub algorithms: Vec<String>,
    /// Comma-separated features, or "all".
    #[arg(long)]
    pub features: Option<String>,
    /// JSON ledger overrides: {"feature": {"alpha": .., "beta": .., "weight": ..}}.
    #[arg(long)]
    pub ledger: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Trials per stability batch and noise trials.
    #[arg(long)]
    pub trials: Option<usize>,
    /// text, csv or json.
    #[arg(long)]
    pub format: Option<String>,
    /// Report path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads for the scorers (timing always runs alone).
    #[arg(long)]
    pub parallel: Option<usize>,
    /// The CSV has no header row.
    #[arg(long)]
    pub no_header: bool,
    /// The CSV has no truth column.
    #[arg(long)]
    pub no_truth: bool,
    /// Complexity cost measure: distances (deterministic) or wall.
    #[arg(long)]
    pub complexity_clock: Option<String>,
    /// Comma-separated dataset sizes for complexity timing.
    #[arg(long)]
    pub timing_sizes: Option<String>,
    #[arg(long)]
    pub timing_reps: Option<usize>,
    /// Neighbour rank for mutual-reachability core distances.
    #[arg(long)]
    pub k_mreach: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// JSON reports written by `score --format json`.
    #[arg(required = true)]
    pub reports: Vec<PathBuf>,
    #[arg(long, default_value = "text")]
    pub format: String,
    /// Ledger overrides used for the parameter columns.
    #[arg(long)]
    pub ledger: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
