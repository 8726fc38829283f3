use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "algstop",
    version,
    about = "ExG and ALG models of stop-signal go reaction times"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate or sample an ExG, AL or ALG distribution.
    Dist(DistCmd),
    /// Split trial sessions into type-A and type-B clusters.
    Partition(PartitionCmd),
    /// Fit an ExG or ALG model to a sample.
    Fit(FitCmd),
    /// Group table of cluster fits from a parameter file.
    Report(ReportCmd),
    /// Write pdf, cdf and hazard on a grid.
    Curves(CurvesCmd),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ExgArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub mu: f64,
    #[arg(long)]
    pub sigma: f64,
    #[arg(long)]
    pub tau: f64,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct AlArgs {
    /// Left (negative) tail scale.
    #[arg(long)]
    pub a1: f64,
    /// Right (positive) tail scale.
    #[arg(long)]
    pub a2: f64,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct AlgArgs {
    #[arg(long)]
    pub a1: f64,
    #[arg(long)]
    pub a2: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub mu: f64,
    #[arg(long)]
    pub sigma: f64,
}

#[derive(Debug, Args)]
pub struct DistCmd {
    #[command(subcommand)]
    pub family: Family,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// Ex-Gaussian: N(mu, sigma^2) plus an exponential with mean tau.
    Exg {
        #[command(flatten)]
        params: ExgArgs,
        #[command(subcommand)]
        query: Query,
    },
    /// Asymmetric Laplace: a2*E2 - a1*E1.
    Al {
        #[command(flatten)]
        params: AlArgs,
        #[command(subcommand)]
        query: Query,
    },
    /// Asymmetric Laplace plus N(mu, sigma^2).
    Alg {
        #[command(flatten)]
        params: AlgArgs,
        #[command(subcommand)]
        query: Query,
    },
}

fn probability(s: &str) -> Result<f64, String> {
    let q: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if q > 0.0 && q < 1.0 {
        Ok(q)
    } else {
        Err(format!("{q} is outside (0, 1)"))
    }
}

#[derive(Debug, Subcommand)]
pub enum Query {
    Pdf(TimePoints),
    Cdf(TimePoints),
    /// Survival function 1 - F(t).
    Sf(TimePoints),
    Hazard(TimePoints),
    Quantile {
        #[arg(long, required = true, num_args = 1.., value_parser = probability)]
        q: Vec<f64>,
    },
    /// Mean, variance, skewness and kurtosis.
    Stats,
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Write draws here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct TimePoints {
    /// Times in ms.
    #[arg(long = "t", required = true, num_args = 1.., allow_negative_numbers = true)]
    pub t: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct PartitionCmd {
    /// Trial CSV: participant_id,trial_index,trial_type,rt_ms,ssd_ms.
    #[arg(long)]
    pub input: PathBuf,
    /// Directory receiving summary.csv and the GORT files.
    #[arg(long)]
    pub output: PathBuf,
    /// Also write differenced GORTs paired with this seed.
    #[arg(long)]
    pub pairing_seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FitTarget {
    ExgMl,
    ExgBayes,
    AlgMl,
}

#[derive(Debug, Args)]
pub struct FitCmd {
    #[arg(value_enum)]
    pub target: FitTarget,
    /// CSV sample with a header row.
    #[arg(long)]
    pub input: PathBuf,
    /// Column holding the values; optional when the file has one column.
    #[arg(long)]
    pub column: Option<String>,
    /// Keep only rows whose participant_id equals this.
    #[arg(long)]
    pub participant: Option<String>,
    /// Seed for the Metropolis chains (required for exg-bayes).
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 3)]
    pub chains: usize,
    #[arg(long, default_value_t = 20_000)]
    pub iters: usize,
    #[arg(long, default_value_t = 5_000)]
    pub burnin: usize,
    #[arg(long, default_value_t = 10.0)]
    pub prior_low: f64,
    #[arg(long, default_value_t = 2000.0)]
    pub prior_high: f64,
    /// Write the estimates as CSV here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["input", "bundled"]))]
pub struct ReportCmd {
    /// Parameter CSV: id,mu_S,mu_A,mu_B,sigma_S,sigma_A,sigma_B,tau_S,tau_A,tau_B.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Use the 44-participant table shipped with the program.
    #[arg(long)]
    pub bundled: bool,
    /// Write the report as CSV here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CurvesCmd {
    #[command(subcommand)]
    pub model: CurveModel,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Defaults to six standard deviations below the mean.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tmin: Option<f64>,
    /// Defaults to six standard deviations above the mean.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tmax: Option<f64>,
    #[arg(long, global = true, default_value_t = 501)]
    pub points: usize,
    /// Output CSV; standard output when omitted.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Component {
    /// The ALG model of B minus A.
    Alg,
    /// Type-A ExG fit.
    A,
    /// Type-B ExG fit.
    B,
}

#[derive(Debug, Subcommand)]
pub enum CurveModel {
    Alg(AlgArgs),
    Exg(ExgArgs),
    /// A participant of a parameter table (1-based row).
    Row {
        #[arg(long)]
        row: usize,
        /// Parameter CSV; the bundled table when omitted.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Component::Alg)]
        component: Component,
    },
}
