//! Derivative-free minimization (Nelder-Mead) and the shared optimizer
//! configuration.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::factory::RandomSeed;

/// Settings for the coarse-scan plus refinement searches.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizationConfig {
    /// Coarse `theta` samples over `[0, pi]` (channel scans).
    pub coarse_n_theta: usize,
    /// Coarse `phi` samples over `[0, 2 pi)` (channel scans).
    pub coarse_n_phi: usize,
    /// Simplex tolerance on function values.
    pub refine_tol: f64,
    /// Iteration budget per refinement, scaled by the number of parameters.
    pub refine_max_iter: usize,
    /// Random starts of the multi-start searches.
    pub restarts: usize,
    /// Number of coarse-scan candidates that are refined.
    pub candidates: usize,
    pub seed: RandomSeed,
}

impl Default for OptimizationConfig {
    fn default() -> Self {
        Self {
            coarse_n_theta: 48,
            coarse_n_phi: 48,
            refine_tol: 1e-9,
            refine_max_iter: 400,
            restarts: 40,
            candidates: 5,
            seed: RandomSeed(20_240_611),
        }
    }
}

impl OptimizationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.coarse_n_theta < 16 || self.coarse_n_phi < 16 {
            return domain("coarse grids need at least 16 points per axis");
        }
        if !(self.refine_tol > 0.0) {
            return domain("refine_tol must be positive");
        }
        if self.restarts == 0 {
            return domain("at least one restart is required");
        }
        if self.candidates == 0 || self.refine_max_iter == 0 {
            return domain("candidates and refine_max_iter must be positive");
        }
        Ok(())
    }
}

/// Nelder-Mead simplex minimizer.
///
/// With `adaptive` set, the reflection/expansion/contraction/shrink
/// coefficients scale with the dimension (Gao and Han), which keeps the
/// method effective above a handful of parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NelderMead {
    pub max_evals: usize,
    /// Stop when `f_max - f_min` over the simplex is below this...
    pub ftol: f64,
    /// ...and every vertex is within this distance of the best one.
    pub xtol: f64,
    pub initial_step: f64,
    pub adaptive: bool,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self { max_evals: 10_000, ftol: 1e-10, xtol: 1e-8, initial_step: 0.5, adaptive: true }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    pub converged: bool,
}

impl NelderMead {
    pub fn minimize(&self, mut f: impl FnMut(&[f64]) -> f64, x0: &[f64]) -> Minimum {
        let n = x0.len();
        let evals = std::cell::Cell::new(0usize);
        let mut eval = |x: &[f64]| {
            evals.set(evals.get() + 1);
            let v = f(x);
            if v.is_nan() { f64::INFINITY } else { v }
        };
        if n == 0 {
            let value = eval(x0);
            return Minimum { x: vec![], value, evals: 1, converged: true };
        }
        let nf = n as f64;
        let (alpha, gamma, rho, sigma) = if self.adaptive && n > 2 {
            (1.0, 1.0 + 2.0 / nf, 0.75 - 1.0 / (2.0 * nf), 1.0 - 1.0 / nf)
        } else {
            (1.0, 2.0, 0.5, 0.5)
        };

        let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
        simplex.push(x0.to_vec());
        for i in 0..n {
            let mut p = x0.to_vec();
            p[i] += if p[i] != 0.0 { self.initial_step * p[i].abs().max(1.0) } else { self.initial_step };
            simplex.push(p);
        }
        let mut values: Vec<f64> = simplex.iter().map(|p| eval(p)).collect();
        let mut converged = false;
        let mut centroid = vec![0.0; n];
        let mut trial = vec![0.0; n];
        let mut trial2 = vec![0.0; n];

        loop {
            // Order vertices by value (stable, so ties keep insertion order).
            let mut order: Vec<usize> = (0..=n).collect();
            order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
            simplex = order.iter().map(|&i| simplex[i].clone()).collect();
            values = order.iter().map(|&i| values[i]).collect();

            let spread = values[n] - values[0];
            let size = simplex[1..]
                .iter()
                .map(|p| p.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
                .fold(0.0, f64::max);
            if spread <= self.ftol && size <= self.xtol {
                converged = true;
                break;
            }
            if spread <= self.ftol && values[0].is_finite() && size <= self.xtol.max(1e-4) {
                // Flat simplex: values agree but points still spread; accept.
                converged = true;
                break;
            }
            if evals.get() >= self.max_evals {
                break;
            }

            centroid.iter_mut().for_each(|c| *c = 0.0);
            for p in &simplex[..n] {
                for (c, x) in centroid.iter_mut().zip(p) {
                    *c += x / nf;
                }
            }
            let worst = &simplex[n];
            for k in 0..n {
                trial[k] = centroid[k] + alpha * (centroid[k] - worst[k]);
            }
            let fr = eval(&trial);
            if fr < values[0] {
                for k in 0..n {
                    trial2[k] = centroid[k] + gamma * (trial[k] - centroid[k]);
                }
                let fe = eval(&trial2);
                if fe < fr {
                    simplex[n].copy_from_slice(&trial2);
                    values[n] = fe;
                } else {
                    simplex[n].copy_from_slice(&trial);
                    values[n] = fr;
                }
                continue;
            }
            if fr < values[n - 1] {
                simplex[n].copy_from_slice(&trial);
                values[n] = fr;
                continue;
            }
            // Contraction, outside if the reflection improved on the worst point.
            let outside = fr < values[n];
            for k in 0..n {
                trial2[k] = if outside {
                    centroid[k] + rho * (trial[k] - centroid[k])
                } else {
                    centroid[k] + rho * (simplex[n][k] - centroid[k])
                };
            }
            let fc = eval(&trial2);
            if (outside && fc <= fr) || (!outside && fc < values[n]) {
                simplex[n].copy_from_slice(&trial2);
                values[n] = fc;
                continue;
            }
            // Shrink toward the best vertex.
            let best = simplex[0].clone();
            for i in 1..=n {
                for k in 0..n {
                    simplex[i][k] = best[k] + sigma * (simplex[i][k] - best[k]);
                }
                values[i] = eval(&simplex[i]);
            }
        }
        let (bi, _) = values.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).expect("nonempty simplex");
        Minimum { x: simplex[bi].clone(), value: values[bi], evals: evals.get(), converged }
    }

    /// Repeats [`minimize`](Self::minimize) from the current best point with a
    /// fresh simplex until a round improves by less than `ftol`; this escapes
    /// the premature collapses Nelder-Mead is prone to in higher dimensions.
    pub fn minimize_restarting(&self, mut f: impl FnMut(&[f64]) -> f64, x0: &[f64], max_rounds: usize) -> Minimum {
        let mut best = self.minimize(&mut f, x0);
        let mut total = best.evals;
        let mut step = self.initial_step;
        for _ in 1..max_rounds.max(1) {
            step = (step * 0.5).max(1e-3);
            let nm = NelderMead { initial_step: step, ..self.clone() };
            let next = nm.minimize(&mut f, &best.x);
            total += next.evals;
            let improved = best.value - next.value;
            if next.value < best.value {
                best = Minimum { evals: total, ..next };
            }
            if improved <= self.ftol.max(1e-14) {
                break;
            }
        }
        best.evals = total;
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rosenbrock(x: &[f64]) -> f64 {
        x.windows(2).map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2)).sum()
    }

    #[test]
    fn minimizes_quadratic() {
        let nm = NelderMead::default();
        let m = nm.minimize(|x| (x[0] - 1.0).powi(2) + 4.0 * (x[1] + 2.0).powi(2) + 3.0, &[0.0, 0.0]);
        assert!(m.converged);
        assert!((m.x[0] - 1.0).abs() < 1e-6 && (m.x[1] + 2.0).abs() < 1e-6);
        assert!((m.value - 3.0).abs() < 1e-10);
    }

    #[test]
    fn minimizes_rosenbrock_in_several_dimensions() {
        let nm = NelderMead { max_evals: 40_000, ftol: 1e-14, xtol: 1e-9, ..NelderMead::default() };
        for n in [2usize, 4, 6] {
            let m = nm.minimize_restarting(rosenbrock, &vec![-1.0; n], 10);
            assert!(m.value < 1e-8, "n={n}: {}", m.value);
        }
    }

    #[test]
    fn nan_is_treated_as_infinite() {
        let nm = NelderMead::default();
        let m = nm.minimize(|x| if x[0] < 0.0 { f64::NAN } else { (x[0] - 2.0).powi(2) }, &[1.0]);
        assert!((m.x[0] - 2.0).abs() < 1e-4);
    }

    #[test]
    fn config_validation() {
        assert!(OptimizationConfig::default().validate().is_ok());
        let bad = OptimizationConfig { coarse_n_theta: 8, ..OptimizationConfig::default() };
        assert!(bad.validate().is_err());
        let bad = OptimizationConfig { refine_tol: 0.0, ..OptimizationConfig::default() };
        assert!(bad.validate().is_err());
        let bad = OptimizationConfig { restarts: 0, ..OptimizationConfig::default() };
        assert!(bad.validate().is_err());
    }
}
