//! Execution of a resolved [`CommandConfig`].

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use spinphase::algebra::coherent_state;
use spinphase::channel::{self, amplitude_damping, squeeze_unitary_one_axis, squeeze_unitary_two_axis};
use spinphase::channel_power::{channel_power, c_minus, c_plus, default_eta_grid, squeeze_power_scan};
use spinphase::closed_form::{
    complexity_from_parts, dicke_wehrl_closed, qubit_complexity_closed, qubit_complexity_from_purity, thermal_closed,
};
use spinphase::complexity::{complexity, complexity_pure};
use spinphase::conjecture::{conjecture_evidence, conjecture_sweep, ConjectureEvidence};
use spinphase::factory::{self, dicke, qubit_bloch, random_mixed, random_pure, thermal};
use spinphase::max_wehrl::max_wehrl_search_on;
use spinphase::{
    reference, BlochPoint, ChannelComplexityReport, DensityMatrix, GridSize, MaxWehrlResult, PhaseSpaceReport,
    QuantumChannel, SphereGrid, SpinJ, SqueezeAxis, StateVector,
};

use crate::config::*;
use crate::error::CliError;
use crate::output::{CsvTable, Diagnostics};

pub struct Outcome {
    pub payload: Value,
    pub table: CsvTable,
    pub diagnostics: Diagnostics,
}

fn to_value(x: &impl Serialize) -> Result<Value, CliError> {
    serde_json::to_value(x).map_err(|e| CliError::Numerical(format!("cannot serialize payload: {e}")))
}

fn grid_for(j: SpinJ, size: GridSize) -> Result<SphereGrid, CliError> {
    Ok(SphereGrid::with_size(j, size)?)
}

fn text(x: &impl Serialize) -> String {
    serde_json::to_value(x).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

pub fn execute(cmd: &CommandConfig) -> Result<Outcome, CliError> {
    match cmd {
        CommandConfig::State(c) => run_state(c),
        CommandConfig::Channel(c) => run_channel(c),
        CommandConfig::Table(c) => run_table(c),
        CommandConfig::Sweep(c) => run_sweep(c),
        CommandConfig::Random(c) => run_random(c),
        CommandConfig::Maxwehrl(c) => run_maxwehrl(c),
    }
}

// ---------------------------------------------------------------- state

/// Closed-form values that exist for the state, next to the quadrature.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ClosedFormValues {
    pub wehrl: Option<f64>,
    pub fisher: Option<f64>,
    pub complexity: Option<f64>,
    pub purity: Option<f64>,
    /// Largest `|quadrature - closed form|` over the fields present.
    pub max_discrepancy: f64,
}

impl ClosedFormValues {
    fn pure(j: SpinJ, wehrl: Option<f64>) -> Self {
        let fisher = f64::from(j.twice_j());
        Self {
            wehrl,
            fisher: Some(fisher),
            complexity: wehrl.map(|w| complexity_from_parts(j, w, fisher)),
            purity: Some(1.0),
            max_discrepancy: 0.0,
        }
    }

    fn with_discrepancy(mut self, r: &PhaseSpaceReport) -> Self {
        let pairs = [(self.wehrl, r.wehrl), (self.fisher, r.fisher), (self.complexity, r.complexity), (self.purity, r.purity)];
        self.max_discrepancy = pairs.iter().filter_map(|&(c, q)| c.map(|c| (c - q).abs())).fold(0.0, f64::max);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReferenceRow {
    pub wehrl: f64,
    pub complexity: f64,
    pub wehrl_deviation: f64,
    pub complexity_deviation: f64,
}

impl ReferenceRow {
    fn new((wehrl, complexity): (f64, f64), got_wehrl: f64, got_complexity: f64) -> Self {
        Self { wehrl, complexity, wehrl_deviation: got_wehrl - wehrl, complexity_deviation: got_complexity - complexity }
    }
}

#[derive(Clone, Debug, Serialize)]
struct StatePayload {
    kind: StateKind,
    report: PhaseSpaceReport,
    closed_form: Option<ClosedFormValues>,
    reference: Option<ReferenceRow>,
}

enum Built {
    Pure(StateVector),
    Mixed(DensityMatrix),
}

fn build_state(c: &StateConfig) -> Result<(Built, Option<ClosedFormValues>), CliError> {
    use StateKind::*;
    let j = c.j;
    let point = || BlochPoint::new(c.theta.unwrap_or(0.0), c.phi.unwrap_or(0.0));
    Ok(match c.kind {
        Coherent => (Built::Pure(coherent_state(j, point())), Some(ClosedFormValues::pure(j, Some(j.coherent_wehrl())))),
        Dicke => {
            let mu = c.mu.ok_or_else(|| CliError::Usage("dicke state needs mu".into()))?;
            (Built::Pure(dicke(j, mu)?), Some(ClosedFormValues::pure(j, Some(dicke_wehrl_closed(j, mu)?))))
        }
        Qubit => {
            let r = c.r.ok_or_else(|| CliError::Usage("qubit state needs r".into()))?;
            let v = point().to_cartesian();
            let cf = qubit_complexity_closed(r)?;
            let closed = ClosedFormValues {
                wehrl: Some(cf.wehrl),
                fisher: Some(cf.fisher),
                complexity: Some(cf.complexity),
                purity: Some(0.5 * (1.0 + r * r)),
                max_discrepancy: 0.0,
            };
            (Built::Mixed(qubit_bloch([r * v[0], r * v[1], r * v[2]])?), Some(closed))
        }
        Thermal => {
            let beta = c.beta.ok_or_else(|| CliError::Usage("thermal state needs beta".into()))?;
            let t = thermal_closed(j, beta)?;
            let closed = ClosedFormValues {
                wehrl: Some(t.wehrl),
                fisher: Some(t.fisher),
                complexity: Some(t.complexity),
                purity: Some(t.purity),
                max_discrepancy: 0.0,
            };
            (Built::Mixed(thermal(j, beta)?), Some(closed))
        }
        Noon => (Built::Pure(factory::noon(j)), Some(ClosedFormValues::pure(j, None))),
        Squeeze1 => {
            let eta = c.eta.unwrap_or(0.0);
            (Built::Pure(factory::squeeze_one_axis_state(j, eta)), Some(ClosedFormValues::pure(j, None)))
        }
        Squeeze2 => {
            let eta = c.eta.unwrap_or(0.0);
            (Built::Pure(factory::squeeze_two_axis_state(j, eta)?), Some(ClosedFormValues::pure(j, None)))
        }
        RandomPure => {
            let seed = c.seed.ok_or_else(|| CliError::Usage("random state needs a seed".into()))?;
            (Built::Pure(random_pure(j, seed)), Some(ClosedFormValues::pure(j, None)))
        }
        RandomMixed => {
            let seed = c.seed.ok_or_else(|| CliError::Usage("random state needs a seed".into()))?;
            (Built::Mixed(random_mixed(j, seed)), None)
        }
    })
}

fn evaluate(state: &Built, grid: &SphereGrid) -> Result<PhaseSpaceReport, CliError> {
    Ok(match state {
        Built::Pure(psi) => complexity_pure(psi, grid)?,
        Built::Mixed(rho) => complexity(rho, grid)?,
    })
}

fn run_state(c: &StateConfig) -> Result<Outcome, CliError> {
    let grid = grid_for(c.j, c.grid)?;
    let (state, closed) = build_state(c)?;
    let mut report = evaluate(&state, &grid)?;
    if c.certify {
        let fine = evaluate(&state, &grid.doubled())?;
        report.grid_meta.convergence_delta =
            Some((fine.wehrl - report.wehrl).abs().max((fine.fisher - report.fisher).abs()));
    }
    let closed = closed.map(|cf| cf.with_discrepancy(&report));
    let reference = match c.kind {
        StateKind::Noon => reference::noon(c.j.twice_j()).map(|r| ReferenceRow::new(r, report.wehrl, report.complexity)),
        _ => None,
    };

    let mut table = CsvTable::new(vec![
        "kind",
        "j",
        "wehrl",
        "fisher",
        "complexity",
        "purity",
        "normalization",
        "n_theta",
        "n_phi",
        "convergence_delta",
        "closed_wehrl",
        "closed_fisher",
        "closed_complexity",
        "closed_purity",
        "max_discrepancy",
        "reference_wehrl",
        "reference_complexity",
    ]);
    let cf = closed.clone().unwrap_or_default();
    table.push(vec![
        text(&c.kind).into(),
        c.j.to_string().into(),
        report.wehrl.into(),
        report.fisher.into(),
        report.complexity.into(),
        report.purity.into(),
        report.normalization.into(),
        report.grid_meta.n_theta.into(),
        report.grid_meta.n_phi.into(),
        report.grid_meta.convergence_delta.into(),
        cf.wehrl.into(),
        cf.fisher.into(),
        cf.complexity.into(),
        cf.purity.into(),
        closed.as_ref().map(|c| c.max_discrepancy).into(),
        reference.as_ref().map(|r| r.wehrl).into(),
        reference.as_ref().map(|r| r.complexity).into(),
    ]);
    let diagnostics = Diagnostics {
        converged: true,
        notes: if report.clamp_count > 0 {
            vec![format!("{} quadrature nodes had Q clamped at zero", report.clamp_count)]
        } else {
            Vec::new()
        },
        convergence_delta: report.grid_meta.convergence_delta,
        evaluations: None,
    };
    let payload = StatePayload { kind: c.kind, report, closed_form: closed, reference };
    Ok(Outcome { payload: to_value(&payload)?, table, diagnostics })
}

// ---------------------------------------------------------------- channel

fn build_channel(c: &ChannelConfig) -> Result<QuantumChannel, CliError> {
    let j = c.j;
    Ok(match c.kind {
        ChannelKind::Identity => QuantumChannel::identity(j),
        ChannelKind::X => channel::gate_x(j),
        ChannelKind::Z => channel::gate_z(j),
        ChannelKind::Fourier => channel::gate_fourier(j),
        ChannelKind::Phase => channel::gate_phase(j),
        ChannelKind::Squeeze1 => squeeze_unitary_one_axis(j, c.eta.unwrap_or(0.0)),
        ChannelKind::Squeeze2 => squeeze_unitary_two_axis(j, c.eta.unwrap_or(0.0))?,
        ChannelKind::Damping => amplitude_damping(j, c.p.unwrap_or(0.0))?,
    })
}

#[derive(Clone, Debug, Serialize)]
struct ChannelPayload {
    report: ChannelComplexityReport,
    /// Published generating power of the gate and the deviation from it.
    reference_c_plus: Option<f64>,
    c_plus_deviation: Option<f64>,
}

fn gate_column(kind: ChannelKind) -> Option<usize> {
    match kind {
        ChannelKind::X => Some(0),
        ChannelKind::Z => Some(1),
        ChannelKind::Fourier => Some(2),
        ChannelKind::Phase => Some(3),
        _ => None,
    }
}

fn run_channel(c: &ChannelConfig) -> Result<Outcome, CliError> {
    let grid = grid_for(c.j, c.grid)?;
    let ch = build_channel(c)?;
    let report = match c.side {
        Side::Both => channel_power(&ch, &c.optimization, &grid)?,
        Side::Plus => c_plus(&ch, &c.optimization, &grid)?,
        Side::Minus => c_minus(&ch, &c.optimization, &grid)?,
    };
    let reference_c_plus = gate_column(c.kind).and_then(|k| reference::gate_power(c.j.twice_j()).map(|row| row[k]));
    let c_plus_deviation = reference_c_plus.map(|r| report.c_plus - r);

    let mut table = CsvTable::new(vec![
        "channel",
        "j",
        "c_plus",
        "c_minus",
        "argmax_theta",
        "argmax_phi",
        "argmin_theta",
        "argmin_phi",
        "evaluations",
        "converged",
        "reference_c_plus",
        "c_plus_deviation",
    ]);
    table.push(vec![
        report.label.clone().into(),
        c.j.to_string().into(),
        report.c_plus.into(),
        report.c_minus.into(),
        report.argmax_omega.theta.into(),
        report.argmax_omega.phi.into(),
        report.argmin_omega.theta.into(),
        report.argmin_omega.phi.into(),
        report.diagnostics.evaluations.into(),
        report.diagnostics.refinements_converged.into(),
        reference_c_plus.into(),
        c_plus_deviation.into(),
    ]);
    let converged = report.diagnostics.refinements_converged;
    let diagnostics = Diagnostics {
        converged,
        notes: if converged { Vec::new() } else { vec!["a local refinement hit its evaluation budget".into()] },
        convergence_delta: None,
        evaluations: Some(report.diagnostics.evaluations),
    };
    let payload = ChannelPayload { report, reference_c_plus, c_plus_deviation };
    Ok(Outcome { payload: to_value(&payload)?, table, diagnostics })
}

// ---------------------------------------------------------------- tables

#[derive(Clone, Debug, Serialize)]
struct Table1Row {
    j: SpinJ,
    best_wehrl: f64,
    best_complexity: f64,
    runner_up_wehrl: Option<f64>,
    converged: bool,
    reference: Option<ReferenceRow>,
    result: MaxWehrlResult,
}

#[derive(Clone, Debug, Serialize)]
struct Table2Row {
    j: SpinJ,
    wehrl: f64,
    complexity: f64,
    reference: Option<ReferenceRow>,
}

#[derive(Clone, Debug, Serialize)]
struct Table3Cell {
    j: SpinJ,
    column: &'static str,
    c_plus: f64,
    /// Breaking power; only the gates report it.
    c_minus: Option<f64>,
    /// Squeezing parameter attaining the maximum (scan columns).
    best_eta: Option<f64>,
    reference: Option<f64>,
    deviation: Option<f64>,
    converged: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
enum TableRows {
    Table1(Vec<Table1Row>),
    Table2(Vec<Table2Row>),
    Table3(Vec<Table3Cell>),
}

#[derive(Clone, Debug, Serialize)]
struct TablePayload {
    table: TableName,
    rows: TableRows,
    max_abs_deviation: f64,
}

fn row_grid(c: &TableConfig, j: SpinJ) -> Result<SphereGrid, CliError> {
    grid_for(j, c.grid.unwrap_or_else(|| GridSize::default_for(j)))
}

fn run_table(c: &TableConfig) -> Result<Outcome, CliError> {
    let mut notes = Vec::new();
    let mut evaluations = 0usize;
    let mut max_dev: f64 = 0.0;
    let (rows, table) = match c.table {
        TableName::Table1 => {
            let mut table = CsvTable::new(vec![
                "j",
                "best_wehrl",
                "best_complexity",
                "reference_wehrl",
                "reference_complexity",
                "wehrl_deviation",
                "complexity_deviation",
                "runner_up_wehrl",
                "converged",
            ]);
            let mut rows = Vec::new();
            for &j in &c.js {
                let r = max_wehrl_search_on(j, &c.optimization, &row_grid(c, j)?)?;
                evaluations += r.evaluations;
                if !r.converged {
                    notes.push(format!(
                        "j={j}: best two restarts differ by {}; reduced confidence",
                        disagreement(&r)
                    ));
                }
                let reference = reference::max_wehrl(j.twice_j()).map(|x| ReferenceRow::new(x, r.best_wehrl, r.best_complexity));
                if let Some(rr) = &reference {
                    max_dev = max_dev.max(rr.wehrl_deviation.abs()).max(rr.complexity_deviation.abs());
                }
                table.push(vec![
                    j.to_string().into(),
                    r.best_wehrl.into(),
                    r.best_complexity.into(),
                    reference.as_ref().map(|x| x.wehrl).into(),
                    reference.as_ref().map(|x| x.complexity).into(),
                    reference.as_ref().map(|x| x.wehrl_deviation).into(),
                    reference.as_ref().map(|x| x.complexity_deviation).into(),
                    r.runner_up_wehrl.into(),
                    r.converged.into(),
                ]);
                rows.push(Table1Row {
                    j,
                    best_wehrl: r.best_wehrl,
                    best_complexity: r.best_complexity,
                    runner_up_wehrl: r.runner_up_wehrl,
                    converged: r.converged,
                    reference,
                    result: r,
                });
            }
            (TableRows::Table1(rows), table)
        }
        TableName::Table2 => {
            let mut table = CsvTable::new(vec![
                "j",
                "wehrl",
                "complexity",
                "reference_wehrl",
                "reference_complexity",
                "wehrl_deviation",
                "complexity_deviation",
            ]);
            let rows = c
                .js
                .par_iter()
                .map(|&j| {
                    let r = complexity_pure(&factory::noon(j), &row_grid(c, j)?)?;
                    let reference = reference::noon(j.twice_j()).map(|x| ReferenceRow::new(x, r.wehrl, r.complexity));
                    Ok(Table2Row { j, wehrl: r.wehrl, complexity: r.complexity, reference })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            for r in &rows {
                if let Some(rr) = &r.reference {
                    max_dev = max_dev.max(rr.wehrl_deviation.abs()).max(rr.complexity_deviation.abs());
                }
                table.push(vec![
                    r.j.to_string().into(),
                    r.wehrl.into(),
                    r.complexity.into(),
                    r.reference.as_ref().map(|x| x.wehrl).into(),
                    r.reference.as_ref().map(|x| x.complexity).into(),
                    r.reference.as_ref().map(|x| x.wehrl_deviation).into(),
                    r.reference.as_ref().map(|x| x.complexity_deviation).into(),
                ]);
            }
            (TableRows::Table2(rows), table)
        }
        TableName::Table3 => {
            let mut table = CsvTable::new(vec![
                "j",
                "column",
                "c_plus",
                "c_minus",
                "best_eta",
                "reference",
                "deviation",
                "converged",
            ]);
            let mut cells = Vec::new();
            for &j in &c.js {
                let grid = row_grid(c, j)?;
                let refs = reference::gate_power(j.twice_j());
                let gates = [channel::gate_x(j), channel::gate_z(j), channel::gate_fourier(j), channel::gate_phase(j)];
                for (k, gate) in gates.iter().enumerate() {
                    let r = channel_power(gate, &c.optimization, &grid)?;
                    evaluations += r.diagnostics.evaluations;
                    let reference = refs.map(|row| row[k]);
                    cells.push(Table3Cell {
                        j,
                        column: reference::GATE_COLUMNS[k],
                        c_plus: r.c_plus,
                        c_minus: Some(r.c_minus),
                        best_eta: None,
                        reference,
                        deviation: reference.map(|x| r.c_plus - x),
                        converged: r.diagnostics.refinements_converged,
                    });
                }
                for (k, axis) in [(4, SqueezeAxis::OneAxis), (5, SqueezeAxis::TwoAxis)] {
                    let s = squeeze_power_scan(j, axis, &default_eta_grid(axis), &c.optimization, &grid)?;
                    evaluations += s.evaluations;
                    let reference = refs.map(|row| row[k]);
                    cells.push(Table3Cell {
                        j,
                        column: reference::GATE_COLUMNS[k],
                        c_plus: s.max_c_plus,
                        c_minus: None,
                        best_eta: Some(s.best_eta),
                        reference,
                        deviation: reference.map(|x| s.max_c_plus - x),
                        converged: s.converged,
                    });
                }
            }
            for cell in &cells {
                if let Some(d) = cell.deviation {
                    max_dev = max_dev.max(d.abs());
                }
                if !cell.converged {
                    notes.push(format!("j={} {}: refinement hit its evaluation budget", cell.j, cell.column));
                }
                table.push(vec![
                    cell.j.to_string().into(),
                    cell.column.into(),
                    cell.c_plus.into(),
                    cell.c_minus.into(),
                    cell.best_eta.into(),
                    cell.reference.into(),
                    cell.deviation.into(),
                    cell.converged.into(),
                ]);
            }
            (TableRows::Table3(cells), table)
        }
    };
    let diagnostics = Diagnostics {
        converged: notes.is_empty(),
        notes,
        convergence_delta: None,
        evaluations: (evaluations > 0).then_some(evaluations),
    };
    let payload = TablePayload { table: c.table, rows, max_abs_deviation: max_dev };
    Ok(Outcome { payload: to_value(&payload)?, table, diagnostics })
}

// ---------------------------------------------------------------- sweeps

#[derive(Clone, Debug, Serialize)]
struct SweepRow {
    parameter: f64,
    wehrl: f64,
    fisher: f64,
    complexity: f64,
    purity: f64,
}

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Trend {
    Increasing,
    Decreasing,
    Constant,
    NonMonotone,
}

#[derive(Clone, Debug, Serialize)]
struct SweepPayload {
    kind: SweepKind,
    j: SpinJ,
    /// Name of the swept parameter.
    parameter: &'static str,
    rows: Vec<SweepRow>,
    max_complexity: f64,
    argmax_parameter: f64,
    /// Shape of the complexity column (steps below 1e-12 count as flat).
    complexity_trend: Trend,
}

fn trend(xs: &[f64]) -> Trend {
    const FLAT: f64 = 1e-12;
    let up = xs.windows(2).any(|w| w[1] > w[0] + FLAT);
    let down = xs.windows(2).any(|w| w[1] < w[0] - FLAT);
    match (up, down) {
        (true, false) => Trend::Increasing,
        (false, true) => Trend::Decreasing,
        (false, false) => Trend::Constant,
        (true, true) => Trend::NonMonotone,
    }
}

pub fn sweep_values(min: f64, max: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![min];
    }
    (0..n).map(|k| if k + 1 == n { max } else { min + (max - min) * k as f64 / (n - 1) as f64 }).collect()
}

fn run_sweep(c: &SweepConfig) -> Result<Outcome, CliError> {
    use SweepKind::*;
    let j = c.j;
    let grid = grid_for(j, c.grid)?;
    let values = sweep_values(c.min, c.max, c.n);
    let fixed = c.fixed.unwrap_or(0.0);
    let damping = match c.kind {
        DampingTheta => Some(amplitude_damping(j, fixed)?),
        _ => None,
    };
    let reports = values
        .par_iter()
        .map(|&v| -> Result<PhaseSpaceReport, CliError> {
            Ok(match c.kind {
                Squeeze1 => complexity_pure(&factory::squeeze_one_axis_state(j, v), &grid)?,
                Squeeze2 => complexity_pure(&factory::squeeze_two_axis_state(j, v)?, &grid)?,
                DampingTheta => damping.as_ref().expect("built above").output_complexity(BlochPoint::new(v, 0.0), &grid)?,
                DampingP => amplitude_damping(j, v)?.output_complexity(BlochPoint::new(fixed, 0.0), &grid)?,
                ThermalBeta => complexity(&thermal(j, v)?, &grid)?,
                QubitR => complexity(&qubit_bloch([0.0, 0.0, v])?, &grid)?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let rows: Vec<SweepRow> = values
        .iter()
        .zip(&reports)
        .map(|(&parameter, r)| SweepRow {
            parameter,
            wehrl: r.wehrl,
            fisher: r.fisher,
            complexity: r.complexity,
            purity: r.purity,
        })
        .collect();
    let mut table = CsvTable::new(vec!["parameter", "wehrl", "fisher", "complexity", "purity"]);
    for r in &rows {
        table.push(vec![r.parameter.into(), r.wehrl.into(), r.fisher.into(), r.complexity.into(), r.purity.into()]);
    }
    let best = rows.iter().max_by(|a, b| a.complexity.total_cmp(&b.complexity)).expect("n >= 1");
    let cs: Vec<f64> = rows.iter().map(|r| r.complexity).collect();
    let parameter = match c.kind {
        Squeeze1 | Squeeze2 => "eta",
        DampingTheta => "theta",
        DampingP => "p",
        ThermalBeta => "beta",
        QubitR => "r",
    };
    let payload = SweepPayload {
        kind: c.kind,
        j,
        parameter,
        max_complexity: best.complexity,
        argmax_parameter: best.parameter,
        complexity_trend: trend(&cs),
        rows,
    };
    let diagnostics = Diagnostics { converged: true, ..Diagnostics::default() };
    Ok(Outcome { payload: to_value(&payload)?, table, diagnostics })
}

// ---------------------------------------------------------------- random

#[derive(Clone, Debug, Serialize)]
struct Bin {
    lower: f64,
    upper: f64,
    count: usize,
}

#[derive(Clone, Debug, Serialize)]
struct RandomPayload {
    j: SpinJ,
    seed: spinphase::RandomSeed,
    n: usize,
    samples: Vec<spinphase::conjecture::SweepSample>,
    bin_width: f64,
    histogram: Vec<Bin>,
    mode: Option<(f64, f64)>,
    /// Mode after a 3-bin moving average, less sensitive to sampling noise.
    smoothed_mode: Option<(f64, f64)>,
    max_complexity: f64,
    argmax_sample: usize,
    /// Comparison of the sample maximum with the best pure state.
    pure_optimum: Option<ConjectureEvidence>,
    /// `j = 1/2` only: largest distance from the closed-form purity curve.
    qubit_curve_deviation: Option<f64>,
}

const CONJECTURE_TOLERANCE: f64 = 1e-3;

fn run_random(c: &RandomConfig) -> Result<Outcome, CliError> {
    let grid = grid_for(c.j, c.grid)?;
    let sweep = conjecture_sweep(c.j, c.n, c.seed, &grid)?;
    let optimum = match c.j.twice_j() {
        1 => Some(1.0),
        t => reference::max_wehrl(t).map(|(_, cmax)| cmax),
    };
    let evidence = optimum.map(|o| conjecture_evidence(&sweep, o, CONJECTURE_TOLERANCE));
    let qubit_curve_deviation = if c.j.twice_j() == 1 {
        let mut worst: f64 = 0.0;
        for s in &sweep.samples {
            let cf = qubit_complexity_from_purity(s.purity)?;
            worst = worst.max((cf.complexity - s.complexity).abs());
        }
        Some(worst)
    } else {
        None
    };
    let h = &sweep.histogram;
    let histogram = (0..h.counts.len())
        .map(|b| {
            let (lower, upper) = h.bin_range(b);
            Bin { lower, upper, count: h.counts[b] }
        })
        .collect();
    let mut table = CsvTable::new(vec!["sample", "purity", "wehrl", "fisher", "complexity"]);
    for (i, s) in sweep.samples.iter().enumerate() {
        table.push(vec![i.into(), s.purity.into(), s.wehrl.into(), s.fisher.into(), s.complexity.into()]);
    }
    let mut notes = Vec::new();
    if let Some(e) = &evidence {
        if !e.consistent {
            notes.push(format!("sample maximum exceeds the pure-state optimum by {:.3e}", e.excess));
        }
    }
    let payload = RandomPayload {
        j: c.j,
        seed: c.seed,
        n: c.n,
        bin_width: h.bin_width,
        mode: h.mode(),
        smoothed_mode: h.smoothed_mode(),
        histogram,
        max_complexity: sweep.max_complexity,
        argmax_sample: sweep.argmax_sample,
        pure_optimum: evidence,
        qubit_curve_deviation,
        samples: sweep.samples,
    };
    // Exceeding the pure optimum is evidence about a conjecture, not a numerical failure.
    let diagnostics = Diagnostics { converged: true, notes, convergence_delta: None, evaluations: Some(c.n) };
    Ok(Outcome { payload: to_value(&payload)?, table, diagnostics })
}

// ---------------------------------------------------------------- maxwehrl

fn disagreement(r: &MaxWehrlResult) -> String {
    match r.runner_up_wehrl {
        Some(u) => format!("{:.2e}", (r.best_wehrl - u).abs()),
        None => "an unknown amount (single candidate)".to_string(),
    }
}

#[derive(Clone, Debug, Serialize)]
struct MaxWehrlPayload {
    result: MaxWehrlResult,
    reference: Option<ReferenceRow>,
}

fn run_maxwehrl(c: &MaxWehrlConfig) -> Result<Outcome, CliError> {
    let grid = grid_for(c.j, c.grid)?;
    let r = max_wehrl_search_on(c.j, &c.optimization, &grid)?;
    let reference = match c.j.twice_j() {
        1 => Some(ReferenceRow::new((c.j.coherent_wehrl(), 1.0), r.best_wehrl, r.best_complexity)),
        t => reference::max_wehrl(t).map(|x| ReferenceRow::new(x, r.best_wehrl, r.best_complexity)),
    };
    let mut table = CsvTable::new(vec![
        "j",
        "best_wehrl",
        "best_complexity",
        "runner_up_wehrl",
        "restarts",
        "evaluations",
        "converged",
        "reference_wehrl",
        "reference_complexity",
    ]);
    table.push(vec![
        c.j.to_string().into(),
        r.best_wehrl.into(),
        r.best_complexity.into(),
        r.runner_up_wehrl.into(),
        r.restarts_used.into(),
        r.evaluations.into(),
        r.converged.into(),
        reference.as_ref().map(|x| x.wehrl).into(),
        reference.as_ref().map(|x| x.complexity).into(),
    ]);
    let diagnostics = Diagnostics {
        converged: r.converged,
        notes: if r.converged {
            Vec::new()
        } else {
            vec![format!("best two restarts differ by {}; reduced confidence", disagreement(&r))]
        },
        convergence_delta: None,
        evaluations: Some(r.evaluations),
    };
    let payload = MaxWehrlPayload { result: r, reference };
    Ok(Outcome { payload: to_value(&payload)?, table, diagnostics })
}
