use std::path::PathBuf;

use casimir_core::pressure::{CavityConfig, FieldKind, Twist};
use casimir_core::{SeriesControl, TailMode};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::CliError;

/// Casimir pressure between compactified boundaries, in natural units
/// (hbar = c = k_B = 1).
///
/// Any subcommand accepts `--config FILE`: a flat `key = value` file whose
/// keys are flag names (`L = 2`, `massless = true`). Flags given on the
/// command line win over the file.
#[derive(Debug, Parser)]
#[command(name = "casimir", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vacuum, thermal and cross components of the pressure at one point.
    #[command(args_override_self = true)]
    Pressure(PressureArgs),
    /// Massless D = 4 profile g(xi), xi = L T.
    #[command(args_override_self = true)]
    G(GArgs),
    /// Root xi* of g, where the pressure changes sign.
    #[command(args_override_self = true)]
    Crossover(CrossoverArgs),
    /// Sign and size of the massless D = 4 pressure on an (L, T) grid.
    #[command(args_override_self = true)]
    PhaseDiagram(PhaseArgs),
    /// Write the CSV data behind figure 1-6.
    #[command(args_override_self = true)]
    Figure(FigureArgs),
    /// Compare production routines with the independent oracles.
    #[command(args_override_self = true)]
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    Scalar,
    Fermion,
}

impl From<FieldArg> for FieldKind {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::Scalar => FieldKind::Scalar,
            FieldArg::Fermion => FieldKind::Fermion,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TailArg {
    ExpBound,
    ShellDoubling,
    IntegralCompare,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output format [default: pretty, json for `oracle`]
    #[arg(long, value_enum)]
    pub output: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SeriesArgs {
    /// Relative tolerance of every truncated series.
    #[arg(long)]
    pub rel_tol: Option<f64>,
    /// Absolute floor below which values count as zero.
    #[arg(long)]
    pub abs_floor: Option<f64>,
    /// Term budget per series.
    #[arg(long)]
    pub max_terms: Option<u64>,
    #[arg(long, value_enum)]
    pub tail_mode: Option<TailArg>,
}

impl SeriesArgs {
    pub fn control(&self) -> Result<SeriesControl, CliError> {
        let mut c = SeriesControl::default();
        if let Some(v) = self.rel_tol {
            c.rel_tol = v;
        }
        if let Some(v) = self.abs_floor {
            c.abs_floor = v;
        }
        if let Some(v) = self.max_terms {
            c.max_terms = v;
        }
        if let Some(t) = self.tail_mode {
            c.tail_mode = match t {
                TailArg::ExpBound => TailMode::ExpBound,
                TailArg::ShellDoubling => TailMode::ShellDoubling,
                TailArg::IntegralCompare => TailMode::IntegralCompare,
            };
        }
        c.validate()?;
        Ok(c)
    }
}

#[derive(Debug, Clone, Args)]
pub struct PhysArgs {
    #[arg(long, value_enum, default_value = "scalar")]
    pub field: FieldArg,
    /// Spacetime dimension.
    #[arg(long = "D", default_value_t = 4)]
    pub dim: u32,
    /// Length of the compact direction.
    #[arg(long = "L", default_value_t = 1.0, allow_negative_numbers = true)]
    pub length: f64,
    /// Field mass.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub m: f64,
    /// Inverse temperature; omit for T = 0.
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Spatial twist: 0 periodic, 1 antiperiodic.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    /// Force m = 0.
    #[arg(long)]
    pub massless: bool,
}

impl PhysArgs {
    pub fn cavity(&self) -> Result<CavityConfig, CliError> {
        let mass = if self.massless { 0.0 } else { self.m };
        let beta = self.beta.unwrap_or(f64::INFINITY);
        Ok(CavityConfig::new(
            self.dim,
            self.length,
            beta,
            mass,
            self.theta,
        )?)
    }
}

#[derive(Debug, Clone, Args)]
pub struct PressureArgs {
    #[command(flatten)]
    pub phys: PhysArgs,
    /// Scalar between Dirichlet plates at separation L (massless, periodic mapping).
    #[arg(long)]
    pub dirichlet: bool,
    /// With --dirichlet: count both photon polarisations.
    #[arg(long, requires = "dirichlet")]
    pub electromagnetic: bool,
    #[command(flatten)]
    pub series: SeriesArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TwistArgs {
    #[arg(long, value_enum, default_value = "scalar")]
    pub field: FieldArg,
    /// Spatial twist, 0 or 1.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
}

impl TwistArgs {
    pub fn twist(&self) -> Result<Twist, CliError> {
        Ok(Twist::from_theta(self.theta)?)
    }
}

#[derive(Debug, Clone, Args)]
pub struct GArgs {
    #[command(flatten)]
    pub twist: TwistArgs,
    /// Explicit xi values (comma separated); overrides the range.
    #[arg(long, value_delimiter = ',')]
    pub xi: Vec<f64>,
    #[arg(long, default_value_t = 0.05)]
    pub xi_min: f64,
    #[arg(long, default_value_t = 3.0)]
    pub xi_max: f64,
    #[arg(long, default_value_t = 60)]
    pub points: usize,
    #[command(flatten)]
    pub series: SeriesArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CrossoverArgs {
    #[command(flatten)]
    pub twist: TwistArgs,
    #[command(flatten)]
    pub series: SeriesArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 0.1)]
    pub l_min: f64,
    #[arg(long, default_value_t = 3.0)]
    pub l_max: f64,
    #[arg(long, default_value_t = 60)]
    pub nl: usize,
    #[arg(long, default_value_t = 0.1)]
    pub t_min: f64,
    #[arg(long, default_value_t = 3.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 60)]
    pub nt: usize,
}

#[derive(Debug, Clone, Args)]
pub struct PhaseArgs {
    #[command(flatten)]
    pub twist: TwistArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub series: SeriesArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    /// Figure number, 1-6.
    #[arg(value_parser = clap::value_parser!(u8).range(1..=6))]
    pub id: u8,
    /// Directory for the CSV files.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Samples along each curve axis.
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub series: SeriesArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleTarget {
    Bessel,
    Zeta,
    Derivative,
    Lattice,
    Pressure,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// Run every oracle.
    #[arg(long)]
    pub all: bool,
    /// Run only these oracles.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub target: Vec<OracleTarget>,
    /// Largest acceptable relative difference.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}
