//! Product quadrature on the sphere: Gauss-Legendre in `theta` (weighted by
//! `sin(theta)`) times the trapezoid rule in `phi`, normalized with the
//! measure `(2j+1)/(4 pi) dOmega`.
//!
//! Nodes are placed in `theta` rather than `u = cos(theta)` because states
//! whose `Q` vanishes at a pole make `Q ln Q` log-singular at the end of the
//! `u` interval; in `theta` the extra `sin(theta)` factor smooths it out.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::algebra::{coherent_profile, sqrt_binomials};
use crate::error::{domain, Result};
use crate::linalg::{pairwise_sum, C64};
use crate::spin::{BlochPoint, SpinJ};

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess for the i-th largest root.
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
        nodes[i] = -x;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Node counts of a [`SphereGrid`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSize {
    pub n_theta: usize,
    pub n_phi: usize,
}

impl GridSize {
    /// Default sizes for spin `j`.
    ///
    /// For `j >= 1` this is `max(64, 16(2j+1))` by `max(128, 8(2j+1)+2)`.
    /// At `j = 1/2` the zeros of a pure-state `Q` are only quadratic and
    /// `Q ln Q` converges slowly, so the grid is 384 x 384.
    pub fn default_for(j: SpinJ) -> GridSize {
        if j.twice_j() == 1 {
            return GridSize { n_theta: 384, n_phi: 384 };
        }
        let d = j.dim();
        GridSize { n_theta: 64.max(16 * d), n_phi: 128.max(8 * d + 2) }
    }

    /// Smaller grid for optimizer inner loops, accurate to roughly 1e-6 in `S_W`.
    pub fn search_for(j: SpinJ) -> GridSize {
        let d = j.dim();
        GridSize { n_theta: 24.max(4 * d), n_phi: 32.max(4 * d + 2) }
    }

    pub fn doubled(self) -> GridSize {
        GridSize { n_theta: 2 * self.n_theta, n_phi: 2 * self.n_phi }
    }

    pub fn validate(self, j: SpinJ) -> Result<()> {
        if self.n_theta < 2 {
            return domain(format!("n_theta = {} must be at least 2", self.n_theta));
        }
        let min_phi = 2 * j.twice_j() as usize + 2;
        if self.n_phi < min_phi {
            return domain(format!("n_phi = {} must be at least 4j+2 = {min_phi}", self.n_phi));
        }
        Ok(())
    }
}

/// Quadrature nodes and weights on `S^2` for spin `j`, together with
/// precomputed coherent-state profiles on every ring.
///
/// The weight of node `(theta_i, phi_l)` is
/// `(2j+1)/(4 pi) * (pi/2) w_i sin(theta_i) * 2pi/n_phi` where `w_i` is the
/// Gauss-Legendre weight of `theta_i` mapped from `[-1, 1]` to `[0, pi]`.
#[derive(Clone, Debug)]
pub struct SphereGrid {
    j: SpinJ,
    size: GridSize,
    theta: Vec<f64>,
    sin_theta: Vec<f64>,
    ring_weight: Vec<f64>,
    phi: Vec<f64>,
    /// `n_theta x d`, row-major.
    profile: Vec<f64>,
    dprofile: Vec<f64>,
    /// `n_phi x d`, entry `(l, k) = exp(i k phi_l)`.
    phases: Vec<C64>,
}

impl SphereGrid {
    pub fn build(j: SpinJ, n_theta: usize, n_phi: usize) -> Result<Self> {
        let size = GridSize { n_theta, n_phi };
        size.validate(j)?;
        let d = j.dim();
        let (x, w) = gauss_legendre(n_theta);
        let scale = j.dim() as f64 / (4.0 * PI) * (TAU / n_phi as f64);
        let theta: Vec<f64> = x.iter().map(|xi| 0.5 * PI * (xi + 1.0)).collect();
        let sin_theta: Vec<f64> = theta.iter().map(|t| t.sin()).collect();
        let ring_weight: Vec<f64> = w.iter().zip(&sin_theta).map(|(wi, s)| 0.5 * PI * wi * s * scale).collect();
        let phi: Vec<f64> = (0..n_phi).map(|l| TAU * l as f64 / n_phi as f64).collect();
        let sb = sqrt_binomials(j);
        let mut profile = Vec::with_capacity(n_theta * d);
        let mut dprofile = Vec::with_capacity(n_theta * d);
        for &t in &theta {
            let (a, da) = coherent_profile(j, &sb, t);
            profile.extend(a);
            dprofile.extend(da);
        }
        let mut phases = Vec::with_capacity(n_phi * d);
        for &p in &phi {
            phases.extend((0..d).map(|k| C64::from_polar(1.0, k as f64 * p)));
        }
        Ok(Self { j, size, theta, sin_theta, ring_weight, phi, profile, dprofile, phases })
    }

    pub fn with_size(j: SpinJ, size: GridSize) -> Result<Self> {
        Self::build(j, size.n_theta, size.n_phi)
    }

    pub fn default_for(j: SpinJ) -> Self {
        Self::with_size(j, GridSize::default_for(j)).expect("default grid sizes are valid")
    }

    pub fn search_for(j: SpinJ) -> Self {
        Self::with_size(j, GridSize::search_for(j)).expect("search grid sizes are valid")
    }

    pub fn doubled(&self) -> Self {
        Self::with_size(self.j, self.size.doubled()).expect("doubling keeps sizes valid")
    }

    pub fn j(&self) -> SpinJ {
        self.j
    }

    pub fn size(&self) -> GridSize {
        self.size
    }

    pub fn n_theta(&self) -> usize {
        self.size.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.size.n_phi
    }

    pub fn len(&self) -> usize {
        self.size.n_theta * self.size.n_phi
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All `(node, weight)` pairs, ring by ring.
    pub fn nodes(&self) -> impl Iterator<Item = (BlochPoint, f64)> + '_ {
        self.theta.iter().zip(&self.ring_weight).flat_map(move |(&t, &w)| {
            self.phi.iter().map(move |&p| (BlochPoint { theta: t, phi: p }, w))
        })
    }

    /// `sum_nodes w f(Omega)` with a fixed summation tree.
    pub fn integrate(&self, mut f: impl FnMut(BlochPoint) -> f64) -> f64 {
        let rings: Vec<f64> = (0..self.size.n_theta)
            .map(|i| {
                let t = self.theta[i];
                let s: f64 = self.phi.iter().map(|&p| f(BlochPoint { theta: t, phi: p })).sum();
                s * self.ring_weight[i]
            })
            .collect();
        pairwise_sum(&rings)
    }

    pub(crate) fn ring(&self, i: usize) -> Ring<'_> {
        let d = self.j.dim();
        Ring {
            cos_theta: self.theta[i].cos(),
            sin_theta: self.sin_theta[i],
            weight: self.ring_weight[i],
            profile: &self.profile[i * d..(i + 1) * d],
            dprofile: &self.dprofile[i * d..(i + 1) * d],
        }
    }

    pub(crate) fn phase_row(&self, l: usize) -> &[C64] {
        let d = self.j.dim();
        &self.phases[l * d..(l + 1) * d]
    }
}

pub(crate) struct Ring<'a> {
    pub cos_theta: f64,
    pub sin_theta: f64,
    pub weight: f64,
    pub profile: &'a [f64],
    pub dprofile: &'a [f64],
}
