//! Fully resolved run configuration. Every default is filled in before any
//! computation, so an envelope's `config` alone reproduces its payload.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use spinphase::{GridSize, HalfInt, OptimizationConfig, RandomSeed, SpinJ};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandConfig,
    pub format: Format,
    pub out: Option<PathBuf>,
    /// Worker cap; results do not depend on it.
    pub threads: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum CommandConfig {
    State(StateConfig),
    Channel(ChannelConfig),
    Table(TableConfig),
    Sweep(SweepConfig),
    Random(RandomConfig),
    Maxwehrl(MaxWehrlConfig),
}

impl CommandConfig {
    pub fn name(&self) -> &'static str {
        match self {
            CommandConfig::State(_) => "state",
            CommandConfig::Channel(_) => "channel",
            CommandConfig::Table(_) => "table",
            CommandConfig::Sweep(_) => "sweep",
            CommandConfig::Random(_) => "random",
            CommandConfig::Maxwehrl(_) => "maxwehrl",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum StateKind {
    Coherent,
    Dicke,
    Qubit,
    Thermal,
    Noon,
    Squeeze1,
    Squeeze2,
    RandomPure,
    RandomMixed,
}

/// Parameters irrelevant to the kind are stored as `None`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateConfig {
    pub kind: StateKind,
    pub j: SpinJ,
    pub theta: Option<f64>,
    pub phi: Option<f64>,
    pub mu: Option<HalfInt>,
    pub r: Option<f64>,
    pub beta: Option<f64>,
    pub eta: Option<f64>,
    pub seed: Option<RandomSeed>,
    pub grid: GridSize,
    /// Also evaluate on the doubled grid and report the change.
    pub certify: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelKind {
    Identity,
    X,
    Z,
    Fourier,
    Phase,
    Squeeze1,
    Squeeze2,
    Damping,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Both,
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelConfig {
    pub kind: ChannelKind,
    pub j: SpinJ,
    pub eta: Option<f64>,
    pub p: Option<f64>,
    pub side: Side,
    pub grid: GridSize,
    pub optimization: OptimizationConfig,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum TableName {
    Table1,
    Table2,
    Table3,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableConfig {
    pub table: TableName,
    pub js: Vec<SpinJ>,
    /// `None` means the default grid of each row's `j`.
    pub grid: Option<GridSize>,
    pub optimization: OptimizationConfig,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SweepKind {
    Squeeze1,
    Squeeze2,
    DampingTheta,
    DampingP,
    ThermalBeta,
    QubitR,
}

/// `n` evenly spaced parameter values over `[min, max]`; `fixed` holds the
/// other parameter of the damping sweeps (`p` or `theta`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub kind: SweepKind,
    pub j: SpinJ,
    pub min: f64,
    pub max: f64,
    pub n: usize,
    pub fixed: Option<f64>,
    pub grid: GridSize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomConfig {
    pub j: SpinJ,
    pub n: usize,
    pub seed: RandomSeed,
    pub grid: GridSize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaxWehrlConfig {
    pub j: SpinJ,
    pub grid: GridSize,
    pub optimization: OptimizationConfig,
}
