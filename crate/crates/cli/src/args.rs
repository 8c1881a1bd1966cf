use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use csco::experiments::FigureId;
use csco::montecarlo::{Execution, Pooling};
use csco::{EstimatorKind, SpectrumModel};

#[derive(Debug, Parser)]
#[command(
    name = "csco",
    version,
    about = "Poisson spectra, finite-resolution detectors and the odds of a complete set of commuting observables"
)]
pub struct Cli {
    /// File of `key = value` lines, one per flag; flags on the command line win.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form probabilities.
    Predict(PredictArgs),
    /// One Monte Carlo estimate.
    Estimate(EstimateArgs),
    /// Monte Carlo over a grid of detector errors or spectrum lengths.
    Sweep(SweepArgs),
    /// Reproduce a preset figure and gate it against theory.
    Figure(FigureArgs),
    /// Ambiguity of patterns labelled by two independent identifiers.
    Patterns(PatternsArgs),
    /// Print one generated spectrum, one value per line.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    /// Degeneracy probability of sorted neighbours.
    P,
    /// Probability that a site starts a cluster.
    #[value(name = "p_c")]
    PC,
    /// No clusters in the sorted spectrum.
    #[value(name = "no_clusters")]
    NoClusters,
    /// Degeneracy probability of neighbouring state indices.
    Randomized,
    /// One observable is a CSCO.
    Csco1,
    /// Two observables form a CSCO.
    Csco2,
    /// The naive combinatorial models.
    Conjectures,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Model {
    #[default]
    Uniform,
    Exponential,
}

impl From<Model> for SpectrumModel {
    fn from(m: Model) -> Self {
        match m {
            Model::Uniform => SpectrumModel::UniformInterval,
            Model::Exponential => SpectrumModel::ExponentialGaps,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum PoolingArg {
    #[default]
    Site,
    Trial,
}

impl From<PoolingArg> for Pooling {
    fn from(p: PoolingArg) -> Self {
        match p {
            PoolingArg::Site => Pooling::PerSite,
            PoolingArg::Trial => Pooling::PerTrial,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MeanPairsArg {
    Continuous,
    Rounded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VaryArg {
    Delta,
    Levels,
}

/// `--seed`: a number, or `random` for OS entropy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeedArg {
    Fixed(u64),
    Random,
}

impl FromStr for SeedArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "random" {
            return Ok(SeedArg::Random);
        }
        s.parse()
            .map(SeedArg::Fixed)
            .map_err(|_| format!("expected an integer or `random`, got `{s}`"))
    }
}

fn estimator(s: &str) -> Result<EstimatorKind, String> {
    s.parse().map_err(|e: csco::Error| {
        let names: Vec<_> = EstimatorKind::ALL.iter().map(|k| k.name()).collect();
        format!("{e}; expected one of {}", names.join(", "))
    })
}

fn figure(s: &str) -> Result<FigureId, String> {
    s.parse().map_err(|e: csco::Error| e.to_string())
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct PredictArgs {
    #[arg(long, value_enum)]
    pub quantity: Quantity,
    #[arg(long, allow_negative_numbers = true)]
    pub delta1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub delta2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub spacing1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub spacing2: Option<f64>,
    #[arg(long)]
    pub levels: Option<usize>,
    /// How a fractional mean pair count enters the conjectures.
    #[arg(long, value_enum, default_value = "continuous")]
    pub mean_pairs: MeanPairsArg,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

/// Flags shared by `estimate` and `sweep`.
#[derive(Debug, Args)]
pub struct TrialArgs {
    #[arg(long, value_parser = estimator)]
    pub kind: EstimatorKind,
    #[arg(long, default_value_t = csco::experiments::DEFAULT_LEVELS)]
    pub levels: usize,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub spacing: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub delta1: Option<f64>,
    /// Second detector error, for `csco2`.
    #[arg(long, allow_negative_numbers = true)]
    pub delta2: Option<f64>,
    #[arg(long, default_value_t = csco::experiments::DEFAULT_TRIALS)]
    pub trials: u64,
    #[arg(long)]
    pub seed: Option<SeedArg>,
    #[command(flatten)]
    pub workers: WorkersArg,
    #[arg(long, value_enum, default_value = "uniform")]
    pub model: Model,
    #[arg(long, value_enum, default_value = "site")]
    pub pooling: PoolingArg,
}

#[derive(Debug, Args)]
pub struct WorkersArg {
    /// Worker threads; 1 runs serially, 0 uses every core. Output is the same either way.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

impl WorkersArg {
    pub fn execution(&self) -> Execution {
        match self.workers {
            1 => Execution::Serial,
            n => Execution::Parallel(n),
        }
    }
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub trial: TrialArgs,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct SweepArgs {
    #[command(flatten)]
    pub trial: TrialArgs,
    #[arg(long, value_enum)]
    pub vary: VaryArg,
    #[arg(long, allow_negative_numbers = true)]
    pub from: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub to: f64,
    /// Grid points, endpoints included.
    #[arg(long)]
    pub steps: usize,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct FigureArgs {
    /// fig3 .. fig8
    #[arg(long, value_parser = figure)]
    pub id: FigureId,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<SeedArg>,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Largest tolerated |z| before the run counts as failed.
    #[arg(long)]
    pub gate: Option<f64>,
    #[command(flatten)]
    pub workers: WorkersArg,
    #[arg(long)]
    pub levels: Option<usize>,
    #[arg(long, value_enum)]
    pub model: Option<Model>,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct PatternsArgs {
    /// Events per unit of the first identifier (inverse mean spacing).
    #[arg(long, allow_negative_numbers = true)]
    pub rate1: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub error1: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub rate2: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub error2: f64,
    /// Size of the pattern set, for the finite-size value.
    #[arg(long)]
    pub levels: Option<usize>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct GenerateArgs {
    #[arg(long)]
    pub levels: usize,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub spacing: f64,
    #[arg(long)]
    pub seed: Option<SeedArg>,
    /// Print in ascending order instead of state-index order.
    #[arg(long)]
    pub sorted: bool,
    #[arg(long, value_enum, default_value = "uniform")]
    pub model: Model,
}
