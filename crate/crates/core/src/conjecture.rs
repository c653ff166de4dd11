//! Random-state sweeps: purity against complexity, histograms, and the
//! comparison with the pure-state optimum.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexity::complexity;
use crate::error::{domain, Result};
use crate::factory::{random_mixed, RandomSeed};
use crate::quadrature::SphereGrid;
use crate::spin::SpinJ;

pub const HISTOGRAM_BIN_WIDTH: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSample {
    pub purity: f64,
    pub wehrl: f64,
    pub fisher: f64,
    pub complexity: f64,
}

/// Fixed-width histogram starting at zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub bin_width: f64,
    pub counts: Vec<usize>,
}

impl Histogram {
    pub fn from_values(values: impl IntoIterator<Item = f64>, bin_width: f64) -> Self {
        let mut counts: Vec<usize> = Vec::new();
        for v in values {
            let b = (v.max(0.0) / bin_width).floor() as usize;
            if b >= counts.len() {
                counts.resize(b + 1, 0);
            }
            counts[b] += 1;
        }
        Self { bin_width, counts }
    }

    /// `[lo, hi)` of bin `b`.
    pub fn bin_range(&self, b: usize) -> (f64, f64) {
        (b as f64 * self.bin_width, (b + 1) as f64 * self.bin_width)
    }

    /// Fullest bin; ties go to the lower bin.
    pub fn mode(&self) -> Option<(f64, f64)> {
        let (b, _) = self.counts.iter().enumerate().rev().max_by_key(|(_, &c)| c)?;
        Some(self.bin_range(b))
    }

    /// Mode of the three-bin moving average, which is far less sensitive
    /// to sampling noise than [`mode`](Self::mode) when the peak is flat.
    pub fn smoothed_mode(&self) -> Option<(f64, f64)> {
        let c = &self.counts;
        let (b, _) = (0..c.len())
            .map(|b| (b, c[b.saturating_sub(1)..(b + 2).min(c.len())].iter().sum::<usize>()))
            .rev()
            .max_by_key(|&(_, s)| s)?;
        Some(self.bin_range(b))
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureSweep {
    pub j: SpinJ,
    pub seed: RandomSeed,
    pub samples: Vec<SweepSample>,
    pub histogram: Histogram,
    pub max_complexity: f64,
    pub argmax_sample: usize,
}

/// Complexity of `n_samples` Hilbert-Schmidt random states; sample `i`
/// uses `seed.for_sample(i)`.
pub fn conjecture_sweep(j: SpinJ, n_samples: usize, seed: RandomSeed, grid: &SphereGrid) -> Result<ConjectureSweep> {
    if n_samples == 0 {
        return domain("n_samples must be at least 1");
    }
    if grid.j() != j {
        return Err(crate::Error::DimensionMismatch { expected: j.dim(), found: grid.j().dim() });
    }
    let samples = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let rho = random_mixed(j, seed.for_sample(i as u64));
            let r = complexity(&rho, grid)?;
            Ok(SweepSample { purity: r.purity, wehrl: r.wehrl, fisher: r.fisher, complexity: r.complexity })
        })
        .collect::<Result<Vec<_>>>()?;
    let histogram = Histogram::from_values(samples.iter().map(|s| s.complexity), HISTOGRAM_BIN_WIDTH);
    let (argmax_sample, max_complexity) = samples
        .iter()
        .map(|s| s.complexity)
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, c)| if c > acc.1 { (i, c) } else { acc });
    Ok(ConjectureSweep { j, seed, samples, histogram, max_complexity, argmax_sample })
}

/// Whether any sampled mixed state beats the pure-state optimum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureEvidence {
    pub pure_optimum: f64,
    pub sample_max: f64,
    /// `sample_max - pure_optimum`; positive values are violations.
    pub excess: f64,
    pub tolerance: f64,
    pub consistent: bool,
}

pub fn conjecture_evidence(sweep: &ConjectureSweep, pure_optimum: f64, tolerance: f64) -> ConjectureEvidence {
    let excess = sweep.max_complexity - pure_optimum;
    ConjectureEvidence { pure_optimum, sample_max: sweep.max_complexity, excess, tolerance, consistent: excess <= tolerance }
}
