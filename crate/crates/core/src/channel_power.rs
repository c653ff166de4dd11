//! Complexity generating and breaking powers `C+` and `C-` of a channel,
//! extremized over coherent-state inputs.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::coherent_state;
use crate::channel::{squeeze_unitary_one_axis, squeeze_unitary_two_axis, QuantumChannel};
use crate::closed_form::complexity_from_parts;
use crate::error::{domain, Result};
use crate::optimize::{NelderMead, OptimizationConfig};
use crate::phase_space::{integrate_pure, Integrals};
use crate::quadrature::SphereGrid;
use crate::spin::{BlochPoint, SpinJ};

/// Output complexities below `1 - UNITARY_CHECK_TOL` at the verification
/// points disable the unitary shortcut for `C-`.
pub const UNITARY_CHECK_TOL: f64 = 1e-7;

/// Coherent-state inputs per axis used for each `eta` of a squeeze scan.
const SQUEEZE_OMEGA_POINTS: usize = 24;

/// Refined extremum of `Omega -> C(E(|Omega><Omega|))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub complexity: f64,
    pub omega: BlochPoint,
    /// False when the extremum comes from the coarse scan alone or a
    /// refinement ran out of evaluations.
    pub refined: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ChannelDiagnostics {
    pub coarse_points: usize,
    pub refined_candidates: usize,
    pub evaluations: usize,
    pub refinements_converged: bool,
    /// `C-` was set to zero after the unitary verification pass.
    pub unitary_shortcut: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelComplexityReport {
    pub j: SpinJ,
    pub label: String,
    pub c_plus: f64,
    pub c_minus: f64,
    pub argmax_omega: BlochPoint,
    pub argmin_omega: BlochPoint,
    pub sup: Extremum,
    pub inf: Extremum,
    pub diagnostics: ChannelDiagnostics,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sides {
    Sup,
    Inf,
    Both,
}

impl Sides {
    fn sup(self) -> bool {
        self != Sides::Inf
    }
    fn inf(self) -> bool {
        self != Sides::Sup
    }
}

/// Coarse input grid over `[0, pi] x [0, 2 pi)`; each pole appears once.
pub fn coarse_inputs(n_theta: usize, n_phi: usize) -> Vec<BlochPoint> {
    let mut pts = Vec::with_capacity(n_theta * n_phi);
    for i in 0..n_theta {
        let theta = PI * i as f64 / (n_theta - 1) as f64;
        if i == 0 || i == n_theta - 1 {
            pts.push(BlochPoint::new(theta, 0.0));
            continue;
        }
        for k in 0..n_phi {
            pts.push(BlochPoint::new(theta, TAU * k as f64 / n_phi as f64));
        }
    }
    pts
}

/// Fixed inputs of the unitary `C-` verification pass.
fn verification_inputs() -> [BlochPoint; 9] {
    [
        BlochPoint::new(0.0, 0.0),
        BlochPoint::new(PI, 0.0),
        BlochPoint::new(PI / 2.0, 0.0),
        BlochPoint::new(PI / 2.0, PI / 2.0),
        BlochPoint::new(PI / 2.0, PI),
        BlochPoint::new(PI / 2.0, 1.5 * PI),
        BlochPoint::new(PI / 4.0, 0.3),
        BlochPoint::new(3.0 * PI / 4.0, 2.1),
        BlochPoint::new(1.1, 4.4),
    ]
}

/// Complexity of `E(|omega><omega|)`. Unitary outputs are pure, so their
/// Fisher factor is one and only the Wehrl entropy is integrated.
fn fast_output_complexity(channel: &QuantumChannel, omega: BlochPoint, grid: &SphereGrid) -> Result<f64> {
    let j = channel.j();
    match channel.as_unitary() {
        Some(u) => {
            let psi = coherent_state(j, omega).apply(u)?;
            let s = integrate_pure(&psi, grid, Integrals::WehrlOnly);
            Ok(complexity_from_parts(j, s.wehrl, f64::from(j.twice_j())))
        }
        None => Ok(channel.output_complexity(omega, grid)?.complexity),
    }
}

fn refine(
    channel: &QuantumChannel,
    start: BlochPoint,
    sign: f64,
    step: f64,
    config: &OptimizationConfig,
    grid: &SphereGrid,
) -> (Extremum, usize, bool) {
    let nm = NelderMead {
        max_evals: config.refine_max_iter * 2,
        ftol: config.refine_tol,
        xtol: 1e-7,
        initial_step: step,
        adaptive: true,
    };
    let objective = |x: &[f64]| match channel.output_complexity(BlochPoint::new(x[0], x[1]), grid) {
        Ok(r) => sign * r.complexity,
        Err(_) => f64::INFINITY,
    };
    let m = nm.minimize_restarting(objective, &[start.theta, start.phi], 3);
    let ext = Extremum { complexity: sign * m.value, omega: BlochPoint::new(m.x[0], m.x[1]), refined: m.converged };
    (ext, m.evals, m.converged)
}

fn top_candidates(points: &[BlochPoint], values: &[f64], k: usize, largest: bool) -> Vec<BlochPoint> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| {
        let o = values[a].total_cmp(&values[b]);
        if largest { o.reverse() } else { o }
    });
    idx.into_iter().take(k).map(|i| points[i]).collect()
}

fn run(channel: &QuantumChannel, config: &OptimizationConfig, grid: &SphereGrid, sides: Sides) -> Result<ChannelComplexityReport> {
    config.validate()?;
    let j = channel.j();
    if grid.j() != j {
        return Err(crate::Error::DimensionMismatch { expected: j.dim(), found: grid.j().dim() });
    }
    let search = SphereGrid::search_for(j);
    let mut diag = ChannelDiagnostics { refinements_converged: true, ..Default::default() };

    let unitary_verified = if channel.as_unitary().is_some() && sides.inf() {
        let checks = verification_inputs()
            .par_iter()
            .map(|&w| fast_output_complexity(channel, w, grid))
            .collect::<Result<Vec<f64>>>()?;
        diag.evaluations += checks.len();
        checks.iter().all(|&c| c >= 1.0 - UNITARY_CHECK_TOL)
    } else {
        false
    };

    let points = coarse_inputs(config.coarse_n_theta, config.coarse_n_phi);
    let values = points
        .par_iter()
        .map(|&w| fast_output_complexity(channel, w, &search))
        .collect::<Result<Vec<f64>>>()?;
    diag.coarse_points = points.len();
    diag.evaluations += points.len();
    let step = PI / (config.coarse_n_theta - 1) as f64;

    let mut extremum = |largest: bool, do_refine: bool| -> Result<Extremum> {
        let sign = if largest { -1.0 } else { 1.0 };
        let starts = top_candidates(&points, &values, config.candidates, largest);
        if !do_refine {
            let w = starts[0];
            let c = channel.output_complexity(w, grid)?.complexity;
            diag.evaluations += 1;
            return Ok(Extremum { complexity: c, omega: w, refined: false });
        }
        let refined: Vec<(Extremum, usize, bool)> =
            starts.par_iter().map(|&w| refine(channel, w, sign, step, config, grid)).collect();
        diag.refined_candidates += refined.len();
        diag.evaluations += refined.iter().map(|r| r.1).sum::<usize>();
        diag.refinements_converged &= refined.iter().all(|r| r.2);
        let best = refined
            .into_iter()
            .map(|r| r.0)
            .min_by(|a, b| (sign * a.complexity).total_cmp(&(sign * b.complexity)))
            .expect("at least one candidate");
        Ok(best)
    };

    let sup = extremum(true, sides.sup())?;
    let inf = extremum(false, sides.inf() && !unitary_verified)?;
    diag.unitary_shortcut = unitary_verified;
    let c_minus = if unitary_verified { 0.0 } else { (1.0 - inf.complexity).clamp(0.0, 1.0) };
    Ok(ChannelComplexityReport {
        j,
        label: channel.label().to_string(),
        c_plus: (sup.complexity - 1.0).max(0.0),
        c_minus,
        argmax_omega: sup.omega,
        argmin_omega: inf.omega,
        sup,
        inf,
        diagnostics: diag,
    })
}

/// Both powers, with the supremum and infimum each refined.
pub fn channel_power(channel: &QuantumChannel, config: &OptimizationConfig, grid: &SphereGrid) -> Result<ChannelComplexityReport> {
    run(channel, config, grid, Sides::Both)
}

/// Refines only the supremum; the infimum is reported from the coarse scan.
pub fn c_plus(channel: &QuantumChannel, config: &OptimizationConfig, grid: &SphereGrid) -> Result<ChannelComplexityReport> {
    run(channel, config, grid, Sides::Sup)
}

/// Refines only the infimum; the supremum is reported from the coarse scan.
pub fn c_minus(channel: &QuantumChannel, config: &OptimizationConfig, grid: &SphereGrid) -> Result<ChannelComplexityReport> {
    run(channel, config, grid, Sides::Inf)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SqueezeAxis {
    OneAxis,
    TwoAxis,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SqueezeScan {
    pub j: SpinJ,
    pub axis: SqueezeAxis,
    pub best_eta: f64,
    pub max_c_plus: f64,
    pub argmax_omega: BlochPoint,
    /// Coarse `(eta, C+)` per grid value.
    pub per_eta: Vec<(f64, f64)>,
    pub converged: bool,
    pub evaluations: usize,
}

pub fn squeeze_channel(j: SpinJ, axis: SqueezeAxis, eta: f64) -> Result<QuantumChannel> {
    match axis {
        SqueezeAxis::OneAxis => Ok(squeeze_unitary_one_axis(j, eta)),
        SqueezeAxis::TwoAxis => squeeze_unitary_two_axis(j, eta),
    }
}

/// `max_eta C+(S(eta))`: coarse `(eta, Omega)` scan, then a joint
/// refinement of `(eta, theta, phi)` from the best few starts.
pub fn squeeze_power_scan(
    j: SpinJ,
    axis: SqueezeAxis,
    eta_grid: &[f64],
    config: &OptimizationConfig,
    grid: &SphereGrid,
) -> Result<SqueezeScan> {
    if eta_grid.is_empty() {
        return domain("eta grid must not be empty");
    }
    config.validate()?;
    let search = SphereGrid::search_for(j);
    let inputs = coarse_inputs(SQUEEZE_OMEGA_POINTS, SQUEEZE_OMEGA_POINTS);
    let mut evaluations = 0;
    // (eta, best coarse complexity, input)
    let mut coarse: Vec<(f64, f64, BlochPoint)> = Vec::with_capacity(eta_grid.len());
    for &eta in eta_grid {
        let channel = squeeze_channel(j, axis, eta)?;
        let values = inputs
            .par_iter()
            .map(|&w| fast_output_complexity(&channel, w, &search))
            .collect::<Result<Vec<f64>>>()?;
        evaluations += values.len();
        let (k, &c) = values.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).expect("nonempty inputs");
        coarse.push((eta, c, inputs[k]));
    }
    let per_eta = coarse.iter().map(|&(eta, c, _)| (eta, (c - 1.0).max(0.0))).collect();

    let mut order: Vec<usize> = (0..coarse.len()).collect();
    order.sort_by(|&a, &b| coarse[b].1.total_cmp(&coarse[a].1));
    let eta_step = if eta_grid.len() > 1 {
        (eta_grid[eta_grid.len() - 1] - eta_grid[0]).abs() / (eta_grid.len() - 1) as f64
    } else {
        0.1
    };
    let nm = NelderMead {
        max_evals: config.refine_max_iter * 3,
        ftol: config.refine_tol,
        xtol: 1e-7,
        initial_step: (0.5 * eta_step).clamp(1e-3, 0.2),
        adaptive: true,
    };
    let objective = |x: &[f64]| {
        let c = squeeze_channel(j, axis, x[0])
            .and_then(|ch| fast_output_complexity(&ch, BlochPoint::new(x[1], x[2]), grid));
        c.map_or(f64::INFINITY, |c| -c)
    };
    let refined: Vec<_> = order
        .iter()
        .take(config.candidates.min(3))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&&i| {
            let (eta, _, w) = coarse[i];
            nm.minimize_restarting(objective, &[eta, w.theta, w.phi], 3)
        })
        .collect();
    evaluations += refined.iter().map(|m| m.evals).sum::<usize>();
    let converged = refined.iter().all(|m| m.converged);
    let best = refined.into_iter().min_by(|a, b| a.value.total_cmp(&b.value)).expect("at least one start");
    Ok(SqueezeScan {
        j,
        axis,
        best_eta: best.x[0],
        max_c_plus: (-best.value - 1.0).max(0.0),
        argmax_omega: BlochPoint::new(best.x[1], best.x[2]),
        per_eta,
        converged,
        evaluations,
    })
}

/// Default `eta` window: `[0, pi]` (one full period) for one-axis
/// twisting and `[0, 2 pi]` for countertwisting, whose orbit is not
/// periodic for every `j`.
pub fn default_eta_grid(axis: SqueezeAxis) -> Vec<f64> {
    let (max, n) = match axis {
        SqueezeAxis::OneAxis => (PI, 64),
        SqueezeAxis::TwoAxis => (TAU, 128),
    };
    (0..=n).map(|k| max * k as f64 / n as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{amplitude_damping, gate_x, gate_z};

    fn spin(t: u32) -> SpinJ {
        SpinJ::from_twice(t).unwrap()
    }

    fn quick() -> OptimizationConfig {
        OptimizationConfig { coarse_n_theta: 16, coarse_n_phi: 16, candidates: 2, ..Default::default() }
    }

    #[test]
    fn coarse_inputs_visit_poles_once() {
        let pts = coarse_inputs(16, 16);
        assert_eq!(pts.len(), 14 * 16 + 2);
        assert_eq!(pts.iter().filter(|w| w.theta == 0.0).count(), 1);
    }

    #[test]
    fn displacement_gate_generates_nothing() {
        let j = spin(2);
        let r = channel_power(&gate_z(j), &quick(), &SphereGrid::default_for(j)).unwrap();
        assert!(r.c_plus < 1e-6, "{}", r.c_plus);
        assert_eq!(r.c_minus, 0.0);
        assert!(r.diagnostics.unitary_shortcut);
    }

    #[test]
    fn shift_gate_spin_one() {
        let j = spin(2);
        let r = c_plus(&gate_x(j), &quick(), &SphereGrid::default_for(j)).unwrap();
        assert!((r.c_plus - 0.3591).abs() < 5e-3, "{}", r.c_plus);
    }

    #[test]
    fn qubit_damping_destroys_everything_at_half() {
        let j = spin(1);
        let r = c_minus(&amplitude_damping(j, 0.5).unwrap(), &quick(), &SphereGrid::default_for(j)).unwrap();
        assert!((r.c_minus - 1.0).abs() < 1e-4, "{}", r.c_minus);
        assert!((r.argmin_omega.theta - PI).abs() < 1e-3);
    }

    #[test]
    fn eta_windows() {
        let one = default_eta_grid(SqueezeAxis::OneAxis);
        let two = default_eta_grid(SqueezeAxis::TwoAxis);
        assert_eq!((one[0], *one.last().unwrap()), (0.0, PI));
        assert_eq!(*two.last().unwrap(), TAU);
        assert!(squeeze_power_scan(spin(2), SqueezeAxis::OneAxis, &[], &quick(), &SphereGrid::default_for(spin(2))).is_err());
    }
}
