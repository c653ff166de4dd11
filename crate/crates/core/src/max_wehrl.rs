//! Multi-start search for the pure state of maximal Wehrl entropy.

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_form::complexity_from_parts;
use crate::error::Result;
use crate::linalg::{CVector, C64};
use crate::optimize::{NelderMead, OptimizationConfig};
use crate::phase_space::{integrate_pure, Integrals};
use crate::quadrature::SphereGrid;
use crate::spin::SpinJ;
use crate::state::StateVector;

/// Two restarts agreeing within this count as convergence.
pub const AGREEMENT_TOL: f64 = 1e-4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaxWehrlResult {
    pub j: SpinJ,
    pub best_wehrl: f64,
    /// `exp(best_wehrl - 2j/(2j+1))`; the Fisher factor of a pure state is 1.
    pub best_complexity: f64,
    #[serde(with = "state_serde")]
    pub best_state: StateVector,
    /// Second best polished value, used by the agreement check; `None`
    /// with a single candidate.
    pub runner_up_wehrl: Option<f64>,
    pub restarts_used: usize,
    pub evaluations: usize,
    pub converged: bool,
}

/// Maps `2(2j+1)` unconstrained reals onto a normalized state.
pub fn state_from_params(j: SpinJ, x: &[f64]) -> Option<StateVector> {
    let d = j.dim();
    debug_assert_eq!(x.len(), 2 * d);
    let v = CVector::from_iterator(d, (0..d).map(|n| C64::new(x[2 * n], x[2 * n + 1])));
    StateVector::normalized(j, v).ok()
}

fn negative_wehrl(j: SpinJ, grid: &SphereGrid, x: &[f64], which: Integrals) -> f64 {
    match state_from_params(j, x) {
        Some(psi) => -integrate_pure(&psi, grid, which).wehrl,
        None => f64::INFINITY,
    }
}

struct Run {
    x: Vec<f64>,
    value: f64,
    evals: usize,
}

/// Maximal Wehrl entropy over pure states, polished on the default grid.
pub fn max_wehrl_search(j: SpinJ, config: &OptimizationConfig) -> Result<MaxWehrlResult> {
    max_wehrl_search_on(j, config, &SphereGrid::default_for(j))
}

/// Random starts are optimized on a coarse search grid; the best
/// `config.candidates` of them are then re-optimized on `grid`.
pub fn max_wehrl_search_on(j: SpinJ, config: &OptimizationConfig, grid: &SphereGrid) -> Result<MaxWehrlResult> {
    config.validate()?;
    if grid.j() != j {
        return Err(crate::Error::DimensionMismatch { expected: j.dim(), found: grid.j().dim() });
    }
    let search = SphereGrid::search_for(j);
    let n_params = 2 * j.dim();
    let coarse_nm = NelderMead {
        max_evals: config.refine_max_iter * n_params,
        ftol: 1e-9,
        xtol: 1e-6,
        initial_step: 0.5,
        adaptive: true,
    };

    let mut runs: Vec<Run> = (0..config.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = config.seed.for_sample(r as u64).rng();
            let x0: Vec<f64> = (0..n_params).map(|_| StandardNormal.sample(&mut rng)).collect();
            let m = coarse_nm.minimize_restarting(|x| negative_wehrl(j, &search, x, Integrals::WehrlSearch), &x0, 6);
            Run { x: m.x, value: m.value, evals: m.evals }
        })
        .collect();
    let mut evaluations: usize = runs.iter().map(|r| r.evals).sum();
    runs.sort_by(|a, b| a.value.total_cmp(&b.value));

    let polish_nm = NelderMead {
        max_evals: config.refine_max_iter * n_params,
        ftol: config.refine_tol,
        xtol: 1e-7,
        initial_step: 0.05,
        adaptive: true,
    };
    let keep = config.candidates.min(runs.len());
    let mut polished: Vec<Run> = runs[..keep]
        .par_iter()
        .map(|run| {
            let m = polish_nm.minimize_restarting(|x| negative_wehrl(j, grid, x, Integrals::WehrlOnly), &run.x, 3);
            Run { x: m.x, value: m.value, evals: m.evals }
        })
        .collect();
    evaluations += polished.iter().map(|r| r.evals).sum::<usize>();
    polished.sort_by(|a, b| a.value.total_cmp(&b.value));

    let best = &polished[0];
    let best_state = state_from_params(j, &best.x).expect("optimizer returns a nonzero vector");
    let best_wehrl = -best.value;
    let runner_up_wehrl = polished.get(1).map(|r| -r.value);
    let converged = runner_up_wehrl.is_some_and(|r| (best_wehrl - r).abs() <= AGREEMENT_TOL);
    Ok(MaxWehrlResult {
        j,
        best_wehrl,
        best_complexity: complexity_from_parts(j, best_wehrl, f64::from(j.twice_j())),
        best_state,
        runner_up_wehrl,
        restarts_used: config.restarts,
        evaluations,
        converged,
    })
}

mod state_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::linalg::{CVector, C64};
    use crate::spin::SpinJ;
    use crate::state::StateVector;

    #[derive(Serialize, Deserialize)]
    struct Repr {
        j: SpinJ,
        re: Vec<f64>,
        im: Vec<f64>,
    }

    pub fn serialize<S: Serializer>(psi: &StateVector, s: S) -> Result<S::Ok, S::Error> {
        Repr {
            j: psi.j(),
            re: psi.amplitudes().iter().map(|z| z.re).collect(),
            im: psi.amplitudes().iter().map(|z| z.im).collect(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<StateVector, D::Error> {
        let r = Repr::deserialize(d)?;
        let v = CVector::from_iterator(r.re.len(), r.re.iter().zip(&r.im).map(|(&a, &b)| C64::new(a, b)));
        StateVector::normalized(r.j, v).map_err(serde::de::Error::custom)
    }
}
