//! Command-line surface and its resolution into a [`RunConfig`].

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use spinphase::{GridSize, HalfInt, OptimizationConfig, RandomSeed, SpinJ};

use crate::config::*;
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "spinphase", version, about = "Phase-space complexity of spin states and channels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,

    /// Write the report here instead of stdout. With CSV, the JSON envelope
    /// is written next to it as `<out>.envelope.json`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads (results do not depend on this).
    #[arg(long, env = "SPINPHASE_THREADS", global = true)]
    pub threads: Option<usize>,

    /// Record the wall-clock time in the envelope (breaks byte-identical output).
    #[arg(long, global = true)]
    pub timestamp: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Wehrl entropy, Fisher information and complexity of one state.
    State(StateArgs),
    /// Complexity generating and breaking power of a channel.
    Channel(ChannelArgs),
    /// Reproduce a reference table with per-cell deviations.
    Table(TableArgs),
    /// Plot-ready parameter sweeps.
    Sweep(SweepArgs),
    /// Random mixed states: per-sample values and a complexity histogram.
    Random(RandomArgs),
    /// Maximal Wehrl entropy over pure states.
    Maxwehrl(MaxWehrlArgs),
    /// Re-run the configuration embedded in an envelope file.
    Replay(ReplayArgs),
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Polar nodes (default depends on j).
    #[arg(long)]
    pub n_theta: Option<usize>,
    /// Azimuthal nodes (default depends on j).
    #[arg(long)]
    pub n_phi: Option<usize>,
}

impl GridArgs {
    fn overrides(&self) -> bool {
        self.n_theta.is_some() || self.n_phi.is_some()
    }

    fn resolve(&self, j: SpinJ) -> Result<GridSize, CliError> {
        let d = GridSize::default_for(j);
        let size = GridSize { n_theta: self.n_theta.unwrap_or(d.n_theta), n_phi: self.n_phi.unwrap_or(d.n_phi) };
        size.validate(j).map_err(CliError::from)?;
        Ok(size)
    }
}

#[derive(Debug, Args)]
pub struct OptArgs {
    /// Random starts of multi-start searches.
    #[arg(long)]
    pub restarts: Option<usize>,
    /// Coarse candidates that are refined.
    #[arg(long)]
    pub candidates: Option<usize>,
    /// Seed of the optimizer's random starts.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Simplex tolerance on function values.
    #[arg(long)]
    pub refine_tol: Option<f64>,
    /// Iteration budget per refinement (times the number of parameters).
    #[arg(long)]
    pub max_iter: Option<usize>,
}

impl OptArgs {
    fn resolve(&self) -> Result<OptimizationConfig, CliError> {
        let mut c = OptimizationConfig::default();
        if let Some(v) = self.restarts {
            c.restarts = v;
        }
        if let Some(v) = self.candidates {
            c.candidates = v;
        }
        if let Some(v) = self.seed {
            c.seed = RandomSeed(v);
        }
        if let Some(v) = self.refine_tol {
            c.refine_tol = v;
        }
        if let Some(v) = self.max_iter {
            c.refine_max_iter = v;
        }
        c.validate().map_err(CliError::from)?;
        Ok(c)
    }
}

#[derive(Debug, Args)]
pub struct StateArgs {
    #[arg(long, value_enum)]
    pub kind: StateKind,
    /// Spin as "1/2", "1", "3/2", ...
    #[arg(long, default_value = "1/2")]
    pub j: SpinJ,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    /// Magnetic number of a Dicke state, e.g. "-1/2".
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<HalfInt>,
    /// Bloch radius of a qubit state.
    #[arg(long)]
    pub r: Option<f64>,
    /// Inverse temperature of a thermal state.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// Squeezing parameter.
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also evaluate on the doubled grid and report the change.
    #[arg(long)]
    pub certify: bool,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct ChannelArgs {
    #[arg(long, value_enum)]
    pub kind: ChannelKind,
    #[arg(long, default_value = "1")]
    pub j: SpinJ,
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<f64>,
    /// Damping probability.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, value_enum, default_value = "both")]
    pub side: Side,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub opt: OptArgs,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub table: TableName,
    /// A single row.
    #[arg(long, conflicts_with = "j_max")]
    pub j: Option<SpinJ>,
    /// All rows up to this spin.
    #[arg(long)]
    pub j_max: Option<SpinJ>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub opt: OptArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub kind: SweepKind,
    #[arg(long)]
    pub j: Option<SpinJ>,
    /// Number of parameter values.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub max: Option<f64>,
    /// Alias of --max for the squeezing sweeps.
    #[arg(long, conflicts_with = "max")]
    pub eta_max: Option<f64>,
    /// Damping probability held fixed in `damping-theta`.
    #[arg(long)]
    pub p: Option<f64>,
    /// Input polar angle held fixed in `damping-p`.
    #[arg(long)]
    pub theta: Option<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[arg(long, default_value = "1")]
    pub j: SpinJ,
    /// Number of samples.
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct MaxWehrlArgs {
    #[arg(long)]
    pub j: SpinJ,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub opt: OptArgs,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    /// Envelope JSON written by an earlier run.
    pub envelope: PathBuf,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn forbid(kind: &str, name: &str, v: bool) -> Result<(), CliError> {
    if v {
        Err(usage(format!("--{name} does not apply to {kind}")))
    } else {
        Ok(())
    }
}

impl StateArgs {
    pub fn resolve(&self) -> Result<StateConfig, CliError> {
        use StateKind::*;
        let kind_name = format!("--kind {}", serde_json::to_value(self.kind).unwrap().as_str().unwrap_or(""));
        let wants = |theta: bool, mu: bool, r: bool, beta: bool, eta: bool, seed: bool| -> Result<(), CliError> {
            forbid(&kind_name, "theta", !theta && self.theta.is_some())?;
            forbid(&kind_name, "phi", !theta && self.phi.is_some())?;
            forbid(&kind_name, "mu", !mu && self.mu.is_some())?;
            forbid(&kind_name, "r", !r && self.r.is_some())?;
            forbid(&kind_name, "beta", !beta && self.beta.is_some())?;
            forbid(&kind_name, "eta", !eta && self.eta.is_some())?;
            forbid(&kind_name, "seed", !seed && self.seed.is_some())
        };
        let j = self.j;
        let mut c = StateConfig {
            kind: self.kind,
            j,
            theta: None,
            phi: None,
            mu: None,
            r: None,
            beta: None,
            eta: None,
            seed: None,
            grid: self.grid.resolve(j)?,
            certify: self.certify,
        };
        match self.kind {
            Coherent => {
                wants(true, false, false, false, false, false)?;
                c.theta = Some(self.theta.unwrap_or(0.0));
                c.phi = Some(self.phi.unwrap_or(0.0));
            }
            Dicke => {
                wants(false, true, false, false, false, false)?;
                let mu = self.mu.ok_or_else(|| usage("--kind dicke needs --mu"))?;
                j.index_of(mu).map_err(|_| usage(format!("mu = {mu} is out of range for j = {j}")))?;
                c.mu = Some(mu);
            }
            Qubit => {
                wants(true, false, true, false, false, false)?;
                if j.twice_j() != 1 {
                    return Err(usage("--kind qubit requires --j 1/2"));
                }
                let r = self.r.ok_or_else(|| usage("--kind qubit needs --r"))?;
                if !(0.0..=1.0).contains(&r) {
                    return Err(usage(format!("--r {r} must lie in [0, 1]")));
                }
                c.r = Some(r);
                c.theta = Some(self.theta.unwrap_or(0.0));
                c.phi = Some(self.phi.unwrap_or(0.0));
            }
            Thermal => {
                wants(false, false, false, true, false, false)?;
                let beta = self.beta.ok_or_else(|| usage("--kind thermal needs --beta"))?;
                if !(beta >= 0.0 && beta.is_finite()) {
                    return Err(usage(format!("--beta {beta} must be finite and nonnegative")));
                }
                c.beta = Some(beta);
            }
            Noon => wants(false, false, false, false, false, false)?,
            Squeeze1 | Squeeze2 => {
                wants(false, false, false, false, true, false)?;
                let eta = self.eta.ok_or_else(|| usage(format!("{kind_name} needs --eta")))?;
                if !eta.is_finite() {
                    return Err(usage("--eta must be finite"));
                }
                c.eta = Some(eta);
            }
            RandomPure | RandomMixed => {
                wants(false, false, false, false, false, true)?;
                c.seed = Some(RandomSeed(self.seed.unwrap_or(7)));
            }
        }
        Ok(c)
    }
}

impl ChannelArgs {
    pub fn resolve(&self) -> Result<ChannelConfig, CliError> {
        let squeeze = matches!(self.kind, ChannelKind::Squeeze1 | ChannelKind::Squeeze2);
        let damping = self.kind == ChannelKind::Damping;
        forbid("this channel", "eta", !squeeze && self.eta.is_some())?;
        forbid("this channel", "p", !damping && self.p.is_some())?;
        let eta = match (squeeze, self.eta) {
            (true, None) => return Err(usage("squeezing channels need --eta")),
            (true, Some(e)) if !e.is_finite() => return Err(usage("--eta must be finite")),
            (_, e) => e,
        };
        let p = match (damping, self.p) {
            (true, None) => return Err(usage("--kind damping needs --p")),
            (true, Some(p)) if !(0.0..=1.0).contains(&p) => return Err(usage(format!("--p {p} must lie in [0, 1]"))),
            (_, p) => p,
        };
        Ok(ChannelConfig {
            kind: self.kind,
            j: self.j,
            eta,
            p,
            side: self.side,
            grid: self.grid.resolve(self.j)?,
            optimization: self.opt.resolve()?,
        })
    }
}

/// Rows each table covers, keyed by `2j`.
pub fn table_rows(table: TableName) -> std::ops::RangeInclusive<u32> {
    match table {
        TableName::Table1 => 2..=9,
        TableName::Table2 => 1..=9,
        TableName::Table3 => 2..=5,
    }
}

impl TableArgs {
    pub fn resolve(&self) -> Result<TableConfig, CliError> {
        let rows = table_rows(self.table);
        let spin = |t: u32| SpinJ::from_twice(t).expect("positive");
        let describe = || format!("{} <= j <= {}", spin(*rows.start()), spin(*rows.end()));
        let js: Vec<SpinJ> = match (self.j, self.j_max) {
            (Some(j), _) => {
                if !rows.contains(&j.twice_j()) {
                    return Err(usage(format!("j = {j} is not covered; this table needs {}", describe())));
                }
                vec![j]
            }
            (None, Some(jm)) => {
                if jm.twice_j() > *rows.end() || jm.twice_j() < *rows.start() {
                    return Err(usage(format!("--j-max {jm} is not covered; this table needs {}", describe())));
                }
                (*rows.start()..=jm.twice_j()).map(|t| SpinJ::from_twice(t).expect("positive")).collect()
            }
            (None, None) => rows.map(|t| SpinJ::from_twice(t).expect("positive")).collect(),
        };
        let grid = if self.grid.overrides() {
            for &j in &js {
                self.grid.resolve(j)?;
            }
            let d = GridSize::default_for(js[0]);
            Some(GridSize { n_theta: self.grid.n_theta.unwrap_or(d.n_theta), n_phi: self.grid.n_phi.unwrap_or(d.n_phi) })
        } else {
            None
        };
        Ok(TableConfig { table: self.table, js, grid, optimization: self.opt.resolve()? })
    }
}

impl SweepArgs {
    pub fn resolve(&self) -> Result<SweepConfig, CliError> {
        use SweepKind::*;
        let j = match (self.kind, self.j) {
            (QubitR, Some(j)) if j.twice_j() != 1 => return Err(usage("--kind qubit-r requires --j 1/2")),
            (QubitR, _) => SpinJ::from_twice(1).expect("valid"),
            (_, Some(j)) => j,
            (_, None) => SpinJ::from_twice(2).expect("valid"),
        };
        let squeeze = matches!(self.kind, Squeeze1 | Squeeze2);
        forbid("this sweep", "eta-max", !squeeze && self.eta_max.is_some())?;
        forbid("this sweep", "p", self.kind != DampingTheta && self.p.is_some())?;
        forbid("this sweep", "theta", self.kind != DampingP && self.theta.is_some())?;
        let (min, max, n, fixed) = match self.kind {
            Squeeze1 => (0.0, PI, 201, None),
            Squeeze2 => (0.0, TAU, 201, None),
            DampingTheta => (0.0, PI, 61, Some(self.p.unwrap_or(0.3))),
            DampingP => (0.0, 1.0, 51, Some(self.theta.unwrap_or(FRAC_PI_2))),
            ThermalBeta => (0.0, 5.0, 51, None),
            QubitR => (0.0, 1.0, 101, None),
        };
        let min = self.min.unwrap_or(min);
        let max = self.max.or(self.eta_max).unwrap_or(max);
        let n = self.n.unwrap_or(n);
        if n < 1 {
            return Err(usage("--n must be at least 1"));
        }
        if !(min.is_finite() && max.is_finite() && min <= max) {
            return Err(usage(format!("invalid range [{min}, {max}]")));
        }
        let bounded = match self.kind {
            DampingP | QubitR => Some((0.0, 1.0)),
            ThermalBeta => Some((0.0, f64::INFINITY)),
            _ => None,
        };
        if let Some((lo, hi)) = bounded {
            if min < lo || max > hi {
                return Err(usage(format!("range [{min}, {max}] leaves the domain [{lo}, {hi}]")));
            }
        }
        if self.kind == DampingTheta && !(0.0..=1.0).contains(&fixed.unwrap_or(0.0)) {
            return Err(usage("--p must lie in [0, 1]"));
        }
        Ok(SweepConfig { kind: self.kind, j, min, max, n, fixed, grid: self.grid.resolve(j)? })
    }
}

impl RandomArgs {
    pub fn resolve(&self) -> Result<RandomConfig, CliError> {
        if self.n < 1 {
            return Err(usage("--n must be at least 1"));
        }
        Ok(RandomConfig { j: self.j, n: self.n, seed: RandomSeed(self.seed), grid: self.grid.resolve(self.j)? })
    }
}

impl MaxWehrlArgs {
    pub fn resolve(&self) -> Result<MaxWehrlConfig, CliError> {
        Ok(MaxWehrlConfig { j: self.j, grid: self.grid.resolve(self.j)?, optimization: self.opt.resolve()? })
    }
}
