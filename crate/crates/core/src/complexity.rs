//! The complexity quantifier and its report.

use serde::{Deserialize, Serialize};

use crate::closed_form::complexity_from_parts;
use crate::error::Result;
use crate::phase_space::{integrate, integrate_pure, Integrals, QuadratureSummary};
use crate::quadrature::{GridSize, SphereGrid};
use crate::spin::SpinJ;
use crate::state::{DensityMatrix, StateVector};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridMeta {
    pub n_theta: usize,
    pub n_phi: usize,
    /// `max(|dS_W|, |dI|)` between this grid and the doubled grid, when computed.
    pub convergence_delta: Option<f64>,
}

/// Wehrl entropy, Fisher information, and complexity of one state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpaceReport {
    pub j: SpinJ,
    pub wehrl: f64,
    pub fisher: f64,
    pub complexity: f64,
    pub purity: f64,
    pub normalization: f64,
    pub grid_meta: GridMeta,
    pub clamp_count: usize,
}

impl PhaseSpaceReport {
    fn from_summary(j: SpinJ, s: QuadratureSummary, purity: f64, size: GridSize) -> Self {
        Self {
            j,
            wehrl: s.wehrl,
            fisher: s.fisher,
            complexity: complexity_from_parts(j, s.wehrl, s.fisher),
            purity,
            normalization: s.normalization,
            grid_meta: GridMeta { n_theta: size.n_theta, n_phi: size.n_phi, convergence_delta: None },
            clamp_count: s.clamp_count,
        }
    }
}

pub fn complexity(rho: &DensityMatrix, grid: &SphereGrid) -> Result<PhaseSpaceReport> {
    let s = integrate(rho, grid)?;
    Ok(PhaseSpaceReport::from_summary(rho.j(), s, rho.purity(), grid.size()))
}

/// Pure-state complexity without forming or decomposing `|psi><psi|`.
pub fn complexity_pure(psi: &StateVector, grid: &SphereGrid) -> Result<PhaseSpaceReport> {
    if psi.j() != grid.j() {
        return Err(crate::Error::DimensionMismatch { expected: grid.j().dim(), found: psi.j().dim() });
    }
    let s = integrate_pure(psi, grid, Integrals::All);
    Ok(PhaseSpaceReport::from_summary(psi.j(), s, 1.0, grid.size()))
}

/// [`complexity`] plus a convergence certificate from the doubled grid.
pub fn complexity_certified(rho: &DensityMatrix, grid: &SphereGrid) -> Result<PhaseSpaceReport> {
    let mut report = complexity(rho, grid)?;
    let fine = complexity(rho, &grid.doubled())?;
    let delta = (fine.wehrl - report.wehrl).abs().max((fine.fisher - report.fisher).abs());
    report.grid_meta.convergence_delta = Some(delta);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factory::{coherent_projector, noon, random_pure, RandomSeed};
    use crate::spin::BlochPoint;

    fn spin(t: u32) -> SpinJ {
        SpinJ::from_twice(t).unwrap()
    }

    #[test]
    fn report_is_self_consistent() {
        let j = spin(4);
        let grid = SphereGrid::default_for(j);
        let r = complexity(&random_pure(j, RandomSeed(3)).to_density(), &grid).unwrap();
        let c = (r.wehrl - 0.8).exp() * r.fisher / 4.0;
        assert!((r.complexity - c).abs() < 1e-12);
        assert!(r.complexity >= 1.0 - 1e-7);
    }

    #[test]
    fn pure_fast_path_matches_density_path() {
        for t in 1..=6 {
            let j = spin(t);
            let grid = SphereGrid::default_for(j);
            let psi = random_pure(j, RandomSeed(t as u64));
            let a = complexity_pure(&psi, &grid).unwrap();
            let b = complexity(&psi.to_density(), &grid).unwrap();
            assert!((a.wehrl - b.wehrl).abs() < 1e-12);
            assert!((a.fisher - b.fisher).abs() < 1e-9);
        }
    }

    #[test]
    fn coherent_and_noon() {
        let j = spin(5);
        let grid = SphereGrid::default_for(j);
        let r = complexity_certified(&coherent_projector(j, BlochPoint::new(0.7, 1.2)), &grid).unwrap();
        assert!((r.complexity - 1.0).abs() < 1e-8);
        assert!(r.grid_meta.convergence_delta.unwrap() < 1e-9);
        let j = spin(4);
        let r = complexity(&noon(j).to_density(), &SphereGrid::default_for(j)).unwrap();
        assert!((r.wehrl - 1.38723).abs() < 5e-4 && (r.complexity - 1.7990).abs() < 5e-4);
    }
}
