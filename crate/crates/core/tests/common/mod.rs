//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use spinphase::phase_space::husimi;
use spinphase::{BlochPoint, DensityMatrix, SphereGrid, SpinJ};

pub fn spin(twice_j: u32) -> SpinJ {
    SpinJ::from_twice(twice_j).unwrap()
}

pub const FD_STEP: f64 = 1e-5;

/// Central differences `(dQ/dtheta, dQ/dphi / sin theta)`.
pub fn fd_gradient(rho: &DensityMatrix, w: BlochPoint) -> (f64, f64) {
    fd_gradient_of(|p| husimi(rho, p), w)
}

pub fn fd_gradient_of(f: impl Fn(BlochPoint) -> f64, w: BlochPoint) -> (f64, f64) {
    let h = FD_STEP;
    let dt = (f(BlochPoint::new(w.theta + h, w.phi)) - f(BlochPoint::new(w.theta - h, w.phi))) / (2.0 * h);
    let dp = (f(BlochPoint::new(w.theta, w.phi + h)) - f(BlochPoint::new(w.theta, w.phi - h))) / (2.0 * h);
    (dt, dp / w.theta.sin())
}

/// Fisher information in the form `int 4 |grad sqrt(Q)|^2`, with the
/// gradient of `sqrt(Q)` taken by central differences.
pub fn fisher_sqrt_form(rho: &DensityMatrix, grid: &SphereGrid) -> f64 {
    grid.integrate(|w| {
        let (a, b) = fd_gradient_of(|p| husimi(rho, p).sqrt(), w);
        4.0 * (a * a + b * b)
    })
}

/// Wehrl entropy by direct pointwise summation over the grid.
pub fn wehrl_pointwise(rho: &DensityMatrix, grid: &SphereGrid) -> f64 {
    grid.integrate(|w| {
        let q = husimi(rho, w);
        if q > 1e-300 { -q * q.ln() } else { 0.0 }
    })
}

/// Strictly increasing within `slack`.
pub fn increasing(xs: &[f64], slack: f64) -> bool {
    xs.windows(2).all(|w| w[1] > w[0] - slack)
}
