use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "awfk", version, about = "Kernel SVM experiments: train, evaluate, sweep and time")]
pub struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a model on a train split, write it and a JSON report on the test split.
    Train(TrainArgs),
    /// Score a dataset with a saved model.
    Predict(PredictArgs),
    /// Compare AWFK against RBF over repeated stratified splits.
    Benchmark(BenchmarkArgs),
    /// Cross-validated grid search for one kernel family.
    Gridsearch(GridsearchArgs),
    /// Cross-validated (s, eta) accuracy grid for AWFK.
    Heatmap(HeatmapArgs),
    /// Decision scores of a 2-D model on a regular grid.
    Boundary(BoundaryArgs),
    /// Time Gram construction and training on random dense data.
    BenchTime(BenchTimeArgs),
    /// Download (or import) the UCI datasets and verify their checksums.
    FetchData(FetchDataArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NamedDataset {
    Ionosphere,
    BreastCancer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Generator {
    Moons,
    Gaussians,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FileFormat {
    /// Decide from the extension: .libsvm/.svm are sparse, anything else CSV.
    Auto,
    Csv,
    Libsvm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelName {
    Awfk,
    Rbf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DeformationName {
    Arcsinh,
    Identity,
}

/// Where the rows come from: a file, a named UCI dataset, or a generator.
#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["data", "dataset", "generate"])))]
pub struct DataArgs {
    /// CSV or LIBSVM file.
    #[arg(long, value_name = "PATH")]
    pub data: Option<PathBuf>,

    /// Named dataset, resolved inside --data-dir (see fetch-data).
    #[arg(long, value_enum)]
    pub dataset: Option<NamedDataset>,

    /// Synthetic generator.
    #[arg(long, value_enum)]
    pub generate: Option<Generator>,

    #[arg(long, value_name = "DIR", default_value = "data")]
    pub data_dir: PathBuf,

    #[arg(long, value_enum, default_value_t = FileFormat::Auto)]
    pub format: FileFormat,

    /// CSV label column: `last` or a zero-based index.
    #[arg(long, default_value = "last")]
    pub label_column: String,

    /// CSV label token mapped to +1; every other token maps to -1.
    #[arg(long, default_value = "1")]
    pub positive: String,

    /// Generated rows (moons, random) or rows per class (gaussians).
    #[arg(long, default_value_t = 400)]
    pub n_samples: usize,

    /// Gaussian noise on the moons.
    #[arg(long, default_value_t = 0.25)]
    pub noise: f64,

    /// Feature count for gaussians/random.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,

    #[arg(long, default_value_t = 4.0)]
    pub separation: f64,

    #[arg(long, default_value_t = 1.0)]
    pub cluster_std: f64,

    #[arg(long, default_value_t = 0)]
    pub n_outliers: usize,

    #[arg(long, default_value_t = 15.0)]
    pub outlier_radius: f64,

    /// Seed of the synthetic generator.
    #[arg(long, default_value_t = 0)]
    pub data_seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct KernelArgs {
    #[arg(long, value_enum, default_value_t = KernelName::Awfk)]
    pub kernel: KernelName,

    /// AWFK tail exponent, in (0, 1].
    #[arg(long, default_value_t = 0.5)]
    pub s: f64,

    /// AWFK length scale, > 0.
    #[arg(long, default_value_t = 3.0)]
    pub lambda: f64,

    /// AWFK amnesia rate, >= 0.
    #[arg(long, default_value_t = 1e-4)]
    pub eta: f64,

    #[arg(long, value_enum, default_value_t = DeformationName::Arcsinh)]
    pub deformation: DeformationName,

    /// RBF width: a positive number or `scale` for 1/(D * mean feature variance).
    #[arg(long, default_value = "scale")]
    pub gamma: String,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Box constraint.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,

    /// KKT violation tolerance.
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,

    #[arg(long, default_value_t = 10_000_000)]
    pub max_iter: u64,

    /// Disable working-set shrinking.
    #[arg(long)]
    pub no_shrink: bool,
}

#[derive(Debug, Clone, Args)]
pub struct TrainArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub kernel: KernelArgs,
    #[command(flatten)]
    pub solver: SolverArgs,

    #[arg(long, default_value_t = 0.25)]
    pub test_fraction: f64,

    /// Split seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long)]
    pub no_stratify: bool,

    /// Train on raw features instead of train-split standardized ones.
    #[arg(long)]
    pub no_standardize: bool,

    #[arg(long, value_name = "PATH", default_value = "model.txt")]
    pub model: PathBuf,

    #[arg(long, value_name = "PATH", default_value = "report.json")]
    pub report: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct PredictArgs {
    #[arg(long, value_name = "PATH")]
    pub model: PathBuf,
    #[command(flatten)]
    pub data: DataArgs,

    /// CSV of index, score, predicted label.
    #[arg(long, value_name = "PATH", default_value = "predictions.csv")]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct BenchmarkArgs {
    #[command(flatten)]
    pub data: DataArgs,

    /// `a..b` (half-open) or a comma list.
    #[arg(long, default_value = "0..20")]
    pub seeds: String,

    #[arg(long, default_value_t = 0.15)]
    pub test_fraction: f64,

    #[arg(long, default_value_t = 5)]
    pub k_folds: usize,

    /// AWFK tail exponent (fixed unless --s-grid is given).
    #[arg(long, default_value_t = 0.5)]
    pub s: f64,
    #[arg(long, default_value_t = 3.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1e-4)]
    pub eta: f64,

    #[arg(long, value_name = "LIST")]
    pub s_grid: Option<String>,
    #[arg(long, value_name = "LIST")]
    pub lambda_grid: Option<String>,
    #[arg(long, value_name = "LIST")]
    pub eta_grid: Option<String>,

    #[arg(long, value_name = "LIST", default_value = "0.001,0.003,0.01,0.03,0.1,0.3,1")]
    pub gamma_grid: String,

    /// C values searched for both kernels.
    #[arg(long, value_name = "LIST", default_value = "0.1,1,10,100,1000")]
    pub c_grid: String,

    #[arg(long, value_name = "PATH", default_value = "benchmark.csv")]
    pub output: PathBuf,

    /// Optional JSON with the full per-seed reports (includes wall-clock timings).
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GridsearchArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub kernel: KernelArgs,

    #[arg(long, value_name = "LIST")]
    pub s_grid: Option<String>,
    #[arg(long, value_name = "LIST")]
    pub lambda_grid: Option<String>,
    #[arg(long, value_name = "LIST")]
    pub eta_grid: Option<String>,
    #[arg(long, value_name = "LIST")]
    pub gamma_grid: Option<String>,

    #[arg(long, value_name = "LIST", default_value = "0.1,1,10,100,1000")]
    pub c_grid: String,

    #[arg(long, default_value_t = 5)]
    pub k_folds: usize,

    /// Fold-assignment seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, value_name = "PATH", default_value = "grid.csv")]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct HeatmapArgs {
    #[command(flatten)]
    pub data: DataArgs,

    #[arg(long, value_name = "LIST", default_value = "linspace:0.1:1:10")]
    pub s_grid: String,

    #[arg(long, value_name = "LIST", default_value = "logspace:-4:0:10")]
    pub eta_grid: String,

    #[arg(long, default_value_t = 3.0)]
    pub lambda: f64,

    #[arg(long, default_value_t = 100.0)]
    pub c: f64,

    #[arg(long, default_value_t = 5)]
    pub k_folds: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, value_name = "PATH", default_value = "heatmap.csv")]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct BoundaryArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub kernel: KernelArgs,
    #[command(flatten)]
    pub solver: SolverArgs,

    /// Nodes per axis.
    #[arg(long, default_value_t = 100)]
    pub resolution: usize,

    /// `min,max`; defaults to the data range padded by 5%.
    #[arg(long, value_name = "MIN,MAX", allow_hyphen_values = true)]
    pub x_range: Option<String>,

    #[arg(long, value_name = "MIN,MAX", allow_hyphen_values = true)]
    pub y_range: Option<String>,

    #[arg(long)]
    pub no_standardize: bool,

    #[arg(long, value_name = "PATH", default_value = "boundary.csv")]
    pub output: PathBuf,

    /// Also save the fitted model.
    #[arg(long, value_name = "PATH")]
    pub model: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BenchTimeArgs {
    /// Row counts to time.
    #[arg(long, value_name = "LIST", default_value = "1000,2000")]
    pub n: String,

    #[arg(long, default_value_t = 20)]
    pub dim: usize,

    #[command(flatten)]
    pub kernel: KernelArgs,
    #[command(flatten)]
    pub solver: SolverArgs,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Gram builds per size; the fastest is reported.
    #[arg(long, default_value_t = 1)]
    pub repeats: usize,

    /// Time only the Gram construction.
    #[arg(long)]
    pub no_train: bool,

    /// Deterministic per-size summary (no wall-clock columns).
    #[arg(long, value_name = "PATH", default_value = "bench_time.csv")]
    pub output: PathBuf,

    /// JSON with the measured timings.
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FetchDataArgs {
    #[arg(long, value_name = "DIR", default_value = "data")]
    pub data_dir: PathBuf,

    /// Read `ionosphere.data` / `wdbc.data` from here instead of downloading.
    #[arg(long, value_name = "DIR")]
    pub source_dir: Option<PathBuf>,

    /// Fetch a single dataset.
    #[arg(long, value_enum)]
    pub only: Option<NamedDataset>,

    /// Overwrite existing files.
    #[arg(long)]
    pub force: bool,
}
