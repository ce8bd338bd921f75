//! Command-line argument definitions.

use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use inh_channel::los::LosModelId;
use inh_channel::registry::{Environment, LinkState, ModelFamily, Slope};
use inh_channel::simulator::CdfField;

#[derive(Parser)]
#[command(
    name = "inh",
    version,
    about = "Indoor office / shopping-mall propagation models for 0.5-100 GHz: \
             path-loss evaluation, parameter fitting, LOS-model comparison, and \
             Monte-Carlo link drops"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Evaluate a tabulated path-loss model over one or more distances
    Eval(EvalArgs),
    /// Fit model parameters to a measured path-loss CSV
    Fit(FitArgs),
    /// Score LOS-probability curves by binned MSE and export the curves
    CompareLos(CompareLosArgs),
    /// Run a Monte-Carlo AP/UE link drop from JSON config and floor plan
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum EnvArg {
    Office,
    Mall,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum StateArg {
    Los,
    Nlos,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Ci,
    Cif,
    Abg,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SlopeArg {
    Single,
    Dual,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum CdfFieldArg {
    #[value(name = "total_db")]
    TotalDb,
    #[value(name = "pl_db")]
    PlDb,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum LosModelArg {
    #[value(name = "new_inh")]
    NewInH,
    #[value(name = "itu_original")]
    ItuOriginal,
    #[value(name = "itu_updated")]
    ItuUpdated,
    #[value(name = "winner_b3_original")]
    WinnerB3Original,
    #[value(name = "winner_b3_updated")]
    WinnerB3Updated,
    #[value(name = "winner_a1_original")]
    WinnerA1Original,
    #[value(name = "winner_a1_updated")]
    WinnerA1Updated,
}

impl From<EnvArg> for Environment {
    fn from(v: EnvArg) -> Self {
        match v {
            EnvArg::Office => Environment::IndoorOffice,
            EnvArg::Mall => Environment::ShoppingMall,
        }
    }
}

impl From<StateArg> for LinkState {
    fn from(v: StateArg) -> Self {
        match v {
            StateArg::Los => LinkState::Los,
            StateArg::Nlos => LinkState::Nlos,
        }
    }
}

impl From<FamilyArg> for ModelFamily {
    fn from(v: FamilyArg) -> Self {
        match v {
            FamilyArg::Ci => ModelFamily::Ci,
            FamilyArg::Cif => ModelFamily::Cif,
            FamilyArg::Abg => ModelFamily::Abg,
        }
    }
}

impl From<SlopeArg> for Slope {
    fn from(v: SlopeArg) -> Self {
        match v {
            SlopeArg::Single => Slope::Single,
            SlopeArg::Dual => Slope::Dual,
        }
    }
}

impl From<CdfFieldArg> for CdfField {
    fn from(v: CdfFieldArg) -> Self {
        match v {
            CdfFieldArg::TotalDb => CdfField::TotalDb,
            CdfFieldArg::PlDb => CdfField::PlDb,
        }
    }
}

impl From<LosModelArg> for LosModelId {
    fn from(v: LosModelArg) -> Self {
        match v {
            LosModelArg::NewInH => LosModelId::NewInH,
            LosModelArg::ItuOriginal => LosModelId::ItuOriginal,
            LosModelArg::ItuUpdated => LosModelId::ItuUpdated,
            LosModelArg::WinnerB3Original => LosModelId::WinnerB3Original,
            LosModelArg::WinnerB3Updated => LosModelId::WinnerB3Updated,
            LosModelArg::WinnerA1Original => LosModelId::WinnerA1Original,
            LosModelArg::WinnerA1Updated => LosModelId::WinnerA1Updated,
        }
    }
}

#[derive(Parser)]
#[command(group = ArgGroup::new("distance").required(true).args(["d_m", "d_range"]))]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub env: EnvArg,
    #[arg(long, value_enum)]
    pub state: StateArg,
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long, value_enum, default_value = "single")]
    pub slope: SlopeArg,
    /// Carrier frequency in GHz
    #[arg(long)]
    pub f_ghz: f64,
    /// Single 3D distance in meters
    #[arg(long)]
    pub d_m: Option<f64>,
    /// Distance sweep start:stop:step in meters, inclusive
    #[arg(long)]
    pub d_range: Option<String>,
    /// Add a seeded shadow-fading draw and a total column per row
    #[arg(long)]
    pub with_sf: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also write the rows as CSV
    #[arg(long)]
    pub csv_out: Option<PathBuf>,
    /// Parameter registry JSON (overrides INH_REGISTRY and the built-in table)
    #[arg(long)]
    pub registry: Option<PathBuf>,
}

#[derive(Parser)]
pub struct FitArgs {
    /// Measured samples CSV: f_ghz,d_m,pl_db,env,state
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long, value_enum, default_value = "single")]
    pub slope: SlopeArg,
    /// Keep only samples from this environment
    #[arg(long, value_enum)]
    pub env: Option<EnvArg>,
    /// Keep only samples with this link state
    #[arg(long, value_enum)]
    pub state: Option<StateArg>,
    /// Comma-separated breakpoint candidates in meters (dual slope only;
    /// defaults to a 50-point log grid between the 5th and 95th distance
    /// percentiles)
    #[arg(long)]
    pub bp_grid: Option<String>,
    /// Write the fit result JSON here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write per-sample residuals CSV here
    #[arg(long)]
    pub residuals_csv: Option<PathBuf>,
}

#[derive(Parser)]
#[command(group = ArgGroup::new("source").required(true).args(["obs", "synthetic"]))]
pub struct CompareLosArgs {
    /// LOS observations CSV: d_m,los with los in {0,1}
    #[arg(long)]
    pub obs: Option<PathBuf>,
    /// Generate observations from this curve instead of reading a file
    #[arg(long, value_enum)]
    pub synthetic: Option<LosModelArg>,
    #[arg(long, default_value_t = 100_000)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Maximum synthetic distance in meters
    #[arg(long, default_value_t = 70.0)]
    pub d_max: f64,
    /// MSE bin width in meters
    #[arg(long, default_value_t = 1.0)]
    pub bin_width: f64,
    /// Write per-model probability curves CSV here
    #[arg(long)]
    pub curves_out: Option<PathBuf>,
    #[arg(long, default_value_t = 0.1)]
    pub curves_step: f64,
    #[arg(long, default_value_t = 70.0)]
    pub curves_max: f64,
}

#[derive(Parser)]
pub struct SimulateArgs {
    /// Drop configuration JSON
    #[arg(long)]
    pub config: PathBuf,
    /// Floor plan JSON
    #[arg(long)]
    pub plan: PathBuf,
    /// Output prefix: writes <prefix>_links.csv and <prefix>_cdf.csv
    #[arg(long)]
    pub out_prefix: String,
    #[arg(long, value_enum, default_value = "total_db")]
    pub cdf_field: CdfFieldArg,
    /// Also write the links in the fitting CSV schema
    #[arg(long)]
    pub samples_out: Option<PathBuf>,
    /// Material penetration table JSON (overrides INH_MATERIALS and the
    /// built-in table)
    #[arg(long)]
    pub materials: Option<PathBuf>,
    /// Parameter registry JSON (overrides INH_REGISTRY and the built-in table)
    #[arg(long)]
    pub registry: Option<PathBuf>,
}
