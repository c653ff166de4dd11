//! Shared fixtures for the benchmarks.

use spinphase::factory::{random_mixed, random_pure};
use spinphase::{DensityMatrix, RandomSeed, SpinJ, StateVector};

/// Spins covered by the quadrature benchmarks, as `2j`.
pub const TWICE_J: [u32; 4] = [1, 2, 4, 6];

pub fn spin(twice_j: u32) -> SpinJ {
    SpinJ::from_twice(twice_j).expect("valid spin")
}

pub fn mixed_fixture(j: SpinJ) -> DensityMatrix {
    random_mixed(j, RandomSeed(42))
}

pub fn pure_fixture(j: SpinJ) -> StateVector {
    random_pure(j, RandomSeed(42))
}
