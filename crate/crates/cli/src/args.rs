use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hipkernels::AddOp;

#[derive(Debug, Parser)]
#[command(
    name = "hipkernels",
    version,
    about = "Permute, extract and assign 2D-distributed sparse matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// A'[i,j] = A[pvec[i], qvec[j]]
    Permute(PermuteArgs),
    /// B = A(pvec, qvec)
    Extract(ExtractArgs),
    /// A(pvec, qvec) = B
    Assign(AssignArgs),
    /// A(pvec, qvec) = B, then permute rows by rperm and columns by cperm, in one exchange
    AssignPerm(AssignPermArgs),
    /// Print the load imbalance of a matrix on a grid
    Imbalance(ImbalanceArgs),
    /// Repeat a random permutation and record metrics for every run
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct Run {
    /// Input matrix (Matrix Market coordinate)
    #[arg(long)]
    pub matrix: PathBuf,
    /// Number of simulated ranks (a perfect square)
    #[arg(long, default_value_t = 1)]
    pub procs: usize,
    /// Threads per rank
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Write the result here (Matrix Market)
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Append one CSV row of metrics per run
    #[arg(long)]
    pub metrics: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PermuteArgs {
    #[command(flatten)]
    pub run: Run,
    /// Row permutation file (one 1-based index per line)
    #[arg(long)]
    pub pvec: Option<PathBuf>,
    /// Column permutation file
    #[arg(long)]
    pub qvec: Option<PathBuf>,
    /// Seed for generating whichever permutation is not given as a file
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    #[command(flatten)]
    pub run: Run,
    /// Selected rows (one 1-based index per line)
    #[arg(long)]
    pub pvec: PathBuf,
    /// Selected columns
    #[arg(long)]
    pub qvec: PathBuf,
}

#[derive(Debug, Args)]
pub struct AssignArgs {
    #[command(flatten)]
    pub run: Run,
    /// Matrix assigned into the input
    #[arg(long)]
    pub submatrix: PathBuf,
    /// Target rows, one per row of the submatrix
    #[arg(long)]
    pub pvec: PathBuf,
    /// Target columns, one per column of the submatrix
    #[arg(long)]
    pub qvec: PathBuf,
    /// How an incoming value combines with an existing one: sum, second or or
    #[arg(long, default_value = "second")]
    pub addop: AddOp,
}

#[derive(Debug, Args)]
pub struct AssignPermArgs {
    #[command(flatten)]
    pub assign: AssignArgs,
    /// Row permutation applied after the assignment
    #[arg(long)]
    pub rperm: Option<PathBuf>,
    /// Column permutation applied after the assignment
    #[arg(long)]
    pub cperm: Option<PathBuf>,
    /// Seed for generating whichever permutation is not given as a file
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ImbalanceArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub procs: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub run: Run,
    /// Seed of the first run; run k uses seed + 2k
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of runs
    #[arg(long, default_value_t = 3)]
    pub repeat: usize,
}
