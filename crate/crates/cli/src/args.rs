use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "trigauge",
    version,
    about = "Exact triangle counting, benchmarking and performance-model fitting"
)]
pub struct Cli {
    /// Kernel worker threads (0 = one per core). Falls back to the config
    /// file, then TRIGAUGE_WORKERS.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// TOML file supplying defaults; explicit flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count triangles in an edge-list file.
    Count(CountArgs),
    /// Generate a synthetic graph.
    Gen(GenArgs),
    /// Time counting kernels and append records to a CSV file.
    Bench(BenchArgs),
    /// Fit T = (Ne/N1)^beta to benchmark records.
    Fit(FitArgs),
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Edge-list file (TSV or whitespace separated).
    #[arg(long)]
    pub input: PathBuf,
    /// adj2, lu, incidence, brute, or all.
    #[arg(long)]
    pub algo: Option<String>,
    /// Largest vertex count the brute-force oracle accepts.
    #[arg(long)]
    pub oracle_limit: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    /// Erdős–Rényi G(n, p).
    Er,
    /// Kronecker power of a seed graph.
    Kron,
    /// Stochastic Kronecker (R-MAT).
    Skron,
}

#[derive(Debug, Clone, Args)]
pub struct GenSpecArgs {
    #[arg(long, value_enum)]
    pub model: Option<ModelArg>,
    /// Vertex count (er).
    #[arg(long)]
    pub n: Option<usize>,
    /// Edge probability (er).
    #[arg(long)]
    pub p: Option<f64>,
    /// Seed graph edge list (kron).
    #[arg(long)]
    pub seed_graph: Option<PathBuf>,
    /// Kronecker power (kron).
    #[arg(long)]
    pub k: Option<u32>,
    /// log2 of the vertex count (skron).
    #[arg(long)]
    pub scale: Option<u32>,
    /// Edge picks per vertex (skron).
    #[arg(long)]
    pub edge_factor: Option<u64>,
    /// Quadrant probabilities a,b,c,d (skron); defaults to 0.57,0.19,0.19,0.05.
    #[arg(long, value_delimiter = ',', num_args = 4)]
    pub initiator: Option<Vec<f64>>,
    #[arg(long)]
    pub rng_seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub spec: GenSpecArgs,
    /// Edge-list output; metadata goes to `<output>.meta.json`.
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Edge-list file to benchmark. Without it, generator flags are used.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub spec: GenSpecArgs,
    /// Comma-separated kernels, or `all`.
    #[arg(long)]
    pub algo: Option<String>,
    #[arg(long)]
    pub reps: Option<u32>,
    /// Records CSV to append to.
    #[arg(long)]
    pub records: PathBuf,
    /// Graph name in the records; defaults to the file stem or generator label.
    #[arg(long)]
    pub graph_id: Option<String>,
    #[arg(long)]
    pub oracle_limit: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    Algorithm,
    Graph,
    AlgorithmWorkers,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Records CSV produced by `bench`.
    #[arg(long)]
    pub records: PathBuf,
    /// Fit only records with at least this many edges. Default: the top
    /// decade of each group's range, and never below 1e6.
    #[arg(long)]
    pub min_edges: Option<f64>,
    /// Split each group into two fits at this edge count.
    #[arg(long)]
    pub breakpoint: Option<f64>,
    #[arg(long, value_enum)]
    pub group_by: Option<GroupArg>,
    /// Aligned text table (also printed to stdout).
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Full-precision fit table as CSV.
    #[arg(long)]
    pub table_csv: Option<PathBuf>,
    /// Observed vs modeled vs reference-line times as CSV.
    #[arg(long)]
    pub plot: Option<PathBuf>,
    /// Per-record speedups against both reference lines as CSV.
    #[arg(long)]
    pub compare: Option<PathBuf>,
}
