//! Husimi function, its spherical gradient, and the Wehrl entropy and
//! Fisher information integrals.

use serde::{Deserialize, Serialize};

use crate::algebra::{coherent_state, coherent_state_derivatives};
use crate::error::{domain, Error, Result};
use crate::majorana::{log_zero_integrals, zeros_of, Zero};
use crate::linalg::{hermitian_eigen, pairwise_sum, CMatrix, CVector, C64};
use crate::quadrature::SphereGrid;
use crate::spin::BlochPoint;
use crate::state::{DensityMatrix, StateVector};

/// Below this `Q` contributes nothing to the entropy (`0 ln 0 = 0`) and the
/// Fisher denominator is clamped.
pub const Q_FLOOR: f64 = 1e-300;
/// Upper cap on the Fisher integrand `|grad Q|^2 / Q`.
pub const FISHER_INTEGRAND_CAP: f64 = 1e12;

/// `Q` and its spherical gradient `(dQ/dtheta, (1/sin theta) dQ/dphi)` at one point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HusimiSample {
    pub q: f64,
    pub dq_dtheta: f64,
    pub dq_dphi_over_sin: f64,
}

impl HusimiSample {
    pub fn gradient_norm_sqr(&self) -> f64 {
        self.dq_dtheta * self.dq_dtheta + self.dq_dphi_over_sin * self.dq_dphi_over_sin
    }
}

/// `Q(Omega|rho) = <Omega|rho|Omega>`, clamped to `[0, 1]`.
pub fn husimi(rho: &DensityMatrix, omega: BlochPoint) -> f64 {
    let v = coherent_state(rho.j(), omega);
    let a = v.amplitudes();
    a.dotc(&(rho.entries() * a)).re.clamp(0.0, 1.0)
}

/// Analytic gradient from `dQ = 2 Re <dOmega|rho|Omega>`.
///
/// The azimuthal component is divided by `sin(theta)`, so the poles are
/// rejected.
pub fn husimi_gradient(rho: &DensityMatrix, omega: BlochPoint) -> Result<HusimiSample> {
    let s = omega.theta.sin();
    if s == 0.0 || omega.theta == 0.0 || omega.theta == std::f64::consts::PI {
        return domain("the spherical gradient is undefined at the poles");
    }
    let j = rho.j();
    let v = coherent_state(j, omega);
    let rv = rho.entries() * v.amplitudes();
    let (dt, dp) = coherent_state_derivatives(j, omega);
    Ok(HusimiSample {
        q: v.amplitudes().dotc(&rv).re.clamp(0.0, 1.0),
        dq_dtheta: 2.0 * dt.dotc(&rv).re,
        dq_dphi_over_sin: 2.0 * dp.dotc(&rv).re / s,
    })
}

/// The three sphere integrals of one state, from a single pass over the grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSummary {
    /// `int Q`; equals 1 for every state up to quadrature error.
    pub normalization: f64,
    pub wehrl: f64,
    pub fisher: f64,
    /// Nodes where the Fisher denominator clamp or integrand cap fired.
    pub clamp_count: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Integrals {
    WehrlOnly,
    All,
    /// Plain quadrature of the Wehrl entropy, without the exact treatment
    /// of pure-state zeros; for optimizer inner loops.
    WehrlSearch,
}

fn check_grid(rho: &DensityMatrix, grid: &SphereGrid) -> Result<()> {
    if rho.j() != grid.j() {
        return Err(Error::DimensionMismatch { expected: grid.j().dim(), found: rho.j().dim() });
    }
    Ok(())
}

/// Smallest `lambda_min / lambda_max` for which the ring-Fourier evaluation
/// is used. Below it `Q` has (near) zeros where the Fourier sum cancels
/// catastrophically, so `Q` is evaluated as a sum of squared moduli instead.
const FOURIER_CONDITION: f64 = 1e-6;
/// Eigencomponents below this fraction of the largest are dropped.
const COMPONENT_CUTOFF: f64 = 1e-14;

#[derive(Default)]
struct Accumulator {
    norm: Vec<f64>,
    wehrl: Vec<f64>,
    fisher: Vec<f64>,
    clamp_count: usize,
}

impl Accumulator {
    /// `g` divides `Q` inside the logarithm (1 for the plain entropy).
    fn node(&mut self, q: f64, g: f64, qt: f64, qp: f64, want_grad: bool, sums: &mut [f64; 3]) {
        let q = q.max(0.0);
        sums[0] += q;
        if q >= Q_FLOOR && g > 0.0 {
            sums[1] -= q * (q / g).ln();
        }
        if want_grad {
            let g2 = qt * qt + qp * qp;
            let mut val = if q < Q_FLOOR {
                self.clamp_count += 1;
                g2 / Q_FLOOR
            } else {
                g2 / q
            };
            if val > FISHER_INTEGRAND_CAP {
                self.clamp_count += 1;
                val = FISHER_INTEGRAND_CAP;
            }
            sums[2] += val;
        }
    }

    fn ring(&mut self, weight: f64, sums: [f64; 3]) {
        self.norm.push(sums[0] * weight);
        self.wehrl.push(sums[1] * weight);
        self.fisher.push(sums[2] * weight);
    }

    fn finish(self, want_grad: bool) -> QuadratureSummary {
        QuadratureSummary {
            normalization: pairwise_sum(&self.norm),
            wehrl: pairwise_sum(&self.wehrl),
            fisher: if want_grad { pairwise_sum(&self.fisher) } else { f64::NAN },
            clamp_count: self.clamp_count,
        }
    }
}

/// Ring-Fourier evaluation for well-conditioned mixed states.
///
/// On a ring of fixed `theta` with real profile `a_n` the Husimi function is
/// the trigonometric polynomial `Q(phi) = Re sum_k c_k e^{i k phi}` (doubled for
/// `k > 0`), with `c_k = sum_n a_n a_{n+k} rho_{n,n+k}`.
fn integrate_fourier(rho: &CMatrix, grid: &SphereGrid, want_grad: bool) -> QuadratureSummary {
    let d = rho.nrows();
    let mut c = vec![C64::new(0.0, 0.0); d];
    let mut dc = vec![C64::new(0.0, 0.0); d];
    let mut acc = Accumulator::default();
    for i in 0..grid.n_theta() {
        let ring = grid.ring(i);
        let a = ring.profile;
        let da = ring.dprofile;
        for k in 0..d {
            let mut ck = C64::new(0.0, 0.0);
            let mut dck = C64::new(0.0, 0.0);
            for n in 0..d - k {
                let r = rho[(n, n + k)];
                ck += r * (a[n] * a[n + k]);
                dck += r * (da[n] * a[n + k] + a[n] * da[n + k]);
            }
            let f = if k == 0 { 1.0 } else { 2.0 };
            c[k] = ck * f;
            dc[k] = dck * f;
        }
        let inv_sin = 1.0 / ring.sin_theta;
        let mut sums = [0.0; 3];
        for l in 0..grid.n_phi() {
            let e = grid.phase_row(l);
            let mut q = c[0].re;
            let mut qt = dc[0].re;
            let mut qp = 0.0;
            for k in 1..d {
                q += c[k].re * e[k].re - c[k].im * e[k].im;
                if want_grad {
                    qt += dc[k].re * e[k].re - dc[k].im * e[k].im;
                    // d/dphi Re(c e^{ik phi}) = -k Im(c e^{ik phi})
                    qp -= k as f64 * (c[k].re * e[k].im + c[k].im * e[k].re);
                }
            }
            acc.node(q, 1.0, qt, qp * inv_sin, want_grad, &mut sums);
        }
        acc.ring(ring.weight, sums);
    }
    acc.finish(want_grad)
}

/// Evaluation of `Q = sum_r |<Omega|u_r>|^2` for a list of (unnormalized)
/// components `u_r`; each term and its gradient stay consistent near zeros.
///
/// With `zeros` (pure states only) the Wehrl sum integrates the smooth
/// `Q ln(Q / prod_k sin^2(gamma_k/2))` and the caller adds the exact
/// logarithmic part.
fn integrate_components(
    components: &[CVector],
    grid: &SphereGrid,
    want_grad: bool,
    zeros: Option<&[Zero]>,
) -> QuadratureSummary {
    let d = grid.j().dim();
    let nc = components.len();
    let mut b = vec![C64::new(0.0, 0.0); nc * d];
    let mut db = vec![C64::new(0.0, 0.0); nc * d];
    let mut acc = Accumulator::default();
    for i in 0..grid.n_theta() {
        let ring = grid.ring(i);
        for (r, u) in components.iter().enumerate() {
            for n in 0..d {
                b[r * d + n] = u[n] * ring.profile[n];
                db[r * d + n] = u[n] * ring.dprofile[n];
            }
        }
        let inv_sin = 1.0 / ring.sin_theta;
        let mut sums = [0.0; 3];
        for l in 0..grid.n_phi() {
            let e = grid.phase_row(l);
            let (mut q, mut qt, mut qp) = (0.0, 0.0, 0.0);
            for r in 0..nc {
                let br = &b[r * d..(r + 1) * d];
                // <Omega|u> = sum_n a_n u_n e^{-i n phi}
                let mut amp = C64::new(0.0, 0.0);
                for n in 0..d {
                    amp += br[n] * e[n].conj();
                }
                q += amp.norm_sqr();
                if want_grad {
                    let dbr = &db[r * d..(r + 1) * d];
                    let mut at = C64::new(0.0, 0.0);
                    let mut ap = C64::new(0.0, 0.0);
                    for n in 0..d {
                        let en = e[n].conj();
                        at += dbr[n] * en;
                        ap += br[n] * en * (n as f64);
                    }
                    // d/dphi <Omega|u> = -i sum_n n a_n u_n e^{-i n phi}
                    let ap = ap * C64::new(0.0, -1.0);
                    qt += 2.0 * (amp.conj() * at).re;
                    qp += 2.0 * (amp.conj() * ap).re;
                }
            }
            let g = match zeros {
                Some(zs) => {
                    let (cos_t, sin_t) = (ring.cos_theta, ring.sin_theta);
                    let n = [sin_t * e[1].re, sin_t * e[1].im, cos_t];
                    zs.iter()
                        .map(|z| {
                            let dx = [n[0] - z.unit[0], n[1] - z.unit[1], n[2] - z.unit[2]];
                            0.25 * (dx[0] * dx[0] + dx[1] * dx[1] + dx[2] * dx[2])
                        })
                        .product()
                }
                None => 1.0,
            };
            acc.node(q, g, qt, qp * inv_sin, want_grad, &mut sums);
        }
        acc.ring(ring.weight, sums);
    }
    acc.finish(want_grad)
}

/// Single-component evaluation with the exact treatment of the zeros of
/// `Q`; falls back to plain quadrature if the zeros cannot be located.
fn integrate_single(u: &CVector, grid: &SphereGrid, want_grad: bool) -> QuadratureSummary {
    let j = grid.j();
    let corrected = zeros_of(j, u).and_then(|zs| {
        let log_part = log_zero_integrals(j, u, &zs)?;
        Ok((zs, log_part))
    });
    match corrected {
        Ok((zs, log_part)) => {
            let mut s = integrate_components(std::slice::from_ref(u), grid, want_grad, Some(&zs));
            s.wehrl -= log_part;
            s
        }
        Err(_) => integrate_components(std::slice::from_ref(u), grid, want_grad, None),
    }
}

pub(crate) fn integrate_with(rho: &DensityMatrix, grid: &SphereGrid, which: Integrals) -> QuadratureSummary {
    let want_grad = which == Integrals::All;
    let decomposition = hermitian_eigen(rho.entries());
    if let Ok((vals, vecs)) = decomposition {
        let top = vals.iter().copied().fold(0.0, f64::max);
        let bottom = vals.iter().copied().fold(f64::INFINITY, f64::min);
        if bottom < FOURIER_CONDITION * top {
            let components: Vec<CVector> = vals
                .iter()
                .enumerate()
                .filter(|(_, &l)| l > COMPONENT_CUTOFF * top)
                .map(|(c, &l)| vecs.column(c).into_owned().scale(l.sqrt()))
                .collect();
            return match components.as_slice() {
                [u] => integrate_single(u, grid, want_grad),
                _ => integrate_components(&components, grid, want_grad, None),
            };
        }
    }
    integrate_fourier(rho.entries(), grid, want_grad)
}

/// Pure-state fast path that skips the eigendecomposition.
pub(crate) fn integrate_pure(psi: &StateVector, grid: &SphereGrid, which: Integrals) -> QuadratureSummary {
    match which {
        Integrals::WehrlSearch => integrate_components(std::slice::from_ref(psi.amplitudes()), grid, false, None),
        _ => integrate_single(psi.amplitudes(), grid, which == Integrals::All),
    }
}

/// Normalization, Wehrl entropy, and Fisher information of `rho`.
pub fn integrate(rho: &DensityMatrix, grid: &SphereGrid) -> Result<QuadratureSummary> {
    check_grid(rho, grid)?;
    Ok(integrate_with(rho, grid, Integrals::All))
}

/// `S_W = -int Q ln Q`, with `0 ln 0 = 0`.
pub fn wehrl_entropy(rho: &DensityMatrix, grid: &SphereGrid) -> Result<f64> {
    check_grid(rho, grid)?;
    Ok(integrate_with(rho, grid, Integrals::WehrlOnly).wehrl)
}

/// `I = int |grad Q|^2 / Q`.
pub fn fisher_information(rho: &DensityMatrix, grid: &SphereGrid) -> Result<f64> {
    Ok(integrate(rho, grid)?.fisher)
}
