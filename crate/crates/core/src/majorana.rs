//! Zeros of the Husimi function of a pure state (the antipodes of its
//! Majorana constellation) and the exact logarithmic part of its Wehrl
//! entropy.
//!
//! For a pure state `Q(Omega) = K prod_k sin^2(gamma_k / 2)`, where
//! `gamma_k` is the angle from `Omega` to the `k`-th zero. Each
//! `int Q ln sin^2(gamma_k / 2)` is a digamma sum over the state's weights
//! in the Dicke basis quantized along the zero, leaving only the smooth
//! `Q ln(Q / prod_k sin^2(gamma_k / 2))` to the quadrature.

use nalgebra::linalg::Schur;

use crate::algebra::{angular_momentum_ops, coherent_state};
use crate::closed_form::digamma_int;
use crate::error::Result;
use crate::linalg::{hermitian_eigen, CMatrix, CVector, C64};
use crate::spin::{BlochPoint, SpinJ};
use crate::state::StateVector;

/// Coefficients below this fraction of the largest count as zero.
const COEFF_CUTOFF: f64 = 1e-13;

/// A zero of `Q` as a point on the sphere and as a unit vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Zero {
    pub point: BlochPoint,
    pub unit: [f64; 3],
}

impl Zero {
    fn from_w(w: Option<C64>) -> Self {
        // <Omega|psi> is proportional to F(w) with w = tan(theta/2) e^{-i phi}.
        let point = match w {
            Some(w) => BlochPoint::new(2.0 * w.norm().atan(), -w.arg()),
            None => BlochPoint::new(std::f64::consts::PI, 0.0),
        };
        Self { point, unit: point.to_cartesian() }
    }
}

/// `2j` zeros (with multiplicity) of `Q` for the pure state with Dicke
/// amplitudes `amps`.
pub(crate) fn zeros_of(j: SpinJ, amps: &CVector) -> Result<Vec<Zero>> {
    let d = j.dim();
    let sb = crate::algebra::sqrt_binomials(j);
    let f: Vec<C64> = (0..d).map(|n| amps[n] * sb[n]).collect();
    let scale = f.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let tiny = |z: &C64| z.norm() <= COEFF_CUTOFF * scale;
    let low = f.iter().take_while(|z| tiny(z)).count();
    let high = f.iter().rev().take_while(|z| tiny(z)).count();
    let mut zeros = Vec::with_capacity(d - 1);
    zeros.extend(std::iter::repeat_n(Zero::from_w(Some(C64::new(0.0, 0.0))), low));
    zeros.extend(std::iter::repeat_n(Zero::from_w(None), high));
    if low + high < d - 1 {
        let core = &f[low..d - high];
        let roots = poly_roots(core).or_else(|| {
            // Symmetric root sets (e.g. w^m + c) can stall the unshifted QR
            // iteration; shifting the variable breaks the symmetry.
            let s = C64::new(0.123_456_7, 0.076_543_2);
            poly_roots(&taylor_shift(core, s)).map(|r| r.into_iter().map(|w| w + s).collect())
        });
        let roots = roots.ok_or(crate::Error::Eigen { dim: core.len() - 1, max_abs: scale, asymmetry: f64::NAN })?;
        for w0 in roots {
            zeros.push(Zero::from_w(Some(polish_root(core, w0))));
        }
    }
    Ok(zeros)
}

/// Roots of `sum_k c_k w^k` from the companion matrix.
fn poly_roots(c: &[C64]) -> Option<Vec<C64>> {
    let m = c.len() - 1;
    let lead = c[m];
    let mut comp = CMatrix::zeros(m, m);
    for r in 1..m {
        comp[(r, r - 1)] = C64::new(1.0, 0.0);
    }
    for r in 0..m {
        comp[(r, m - 1)] = -c[r] / lead;
    }
    let vals = Schur::try_new(comp, 1e-15, 10_000)?.eigenvalues()?;
    let roots: Vec<C64> = vals.iter().copied().collect();
    roots.iter().all(|w| w.re.is_finite() && w.im.is_finite()).then_some(roots)
}

/// Coefficients of `p(w + s)`.
fn taylor_shift(c: &[C64], s: C64) -> Vec<C64> {
    let mut a = c.to_vec();
    let m = a.len() - 1;
    for i in 0..m {
        for k in (i..m).rev() {
            let next = a[k + 1];
            a[k] += s * next;
        }
    }
    a
}

fn eval_poly(c: &[C64], w: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for &ck in c.iter().rev() {
        dp = dp * w + p;
        p = p * w + ck;
    }
    (p, dp)
}

/// A few guarded Newton steps.
fn polish_root(c: &[C64], mut w: C64) -> C64 {
    let (mut p, mut dp) = eval_poly(c, w);
    for _ in 0..3 {
        if dp.norm() == 0.0 {
            break;
        }
        let next = w - p / dp;
        let (pn, dpn) = eval_poly(c, next);
        if !(pn.norm() < p.norm()) {
            break;
        }
        (w, p, dp) = (next, pn, dpn);
    }
    w
}

/// Points where the Husimi function of `psi` vanishes, with multiplicity.
pub fn husimi_zeros(psi: &StateVector) -> Result<Vec<BlochPoint>> {
    Ok(zeros_of(psi.j(), psi.amplitudes())?.into_iter().map(|z| z.point).collect())
}

/// Weights `|<n; zero|psi>|^2` in the Dicke basis quantized along `point`,
/// where `n = 0` is the coherent state at `point`.
fn weights_along(j: SpinJ, amps: &CVector, point: BlochPoint) -> Result<Vec<f64>> {
    let ops = angular_momentum_ops(j);
    let z = coherent_state(j, point);
    let mean = |op: &CMatrix| (z.amplitudes().dotc(&(op * z.amplitudes()))).re;
    let js = [ops.j1.entries(), ops.j2.entries(), ops.j3.entries()];
    let axis: Vec<f64> = js.iter().map(|op| -mean(op) / j.value()).collect();
    let a = js[0] * C64::new(axis[0], 0.0) + js[1] * C64::new(axis[1], 0.0) + js[2] * C64::new(axis[2], 0.0);
    let (vals, vecs) = hermitian_eigen(&a)?;
    let mut order: Vec<usize> = (0..vals.len()).collect();
    order.sort_by(|&x, &y| vals[x].total_cmp(&vals[y]));
    Ok(order.into_iter().map(|c| vecs.column(c).dotc(amps).norm_sqr()).collect())
}

/// `sum_k int Q ln sin^2(gamma_k / 2)` over the measure `(2j+1)/(4 pi) dOmega`.
pub(crate) fn log_zero_integrals(j: SpinJ, amps: &CVector, zeros: &[Zero]) -> Result<f64> {
    let d = j.dim() as u32;
    let psi_top = digamma_int(d + 1);
    let coeffs: Vec<f64> = (0..d).map(|n| digamma_int(n + 1) - psi_top).collect();
    let mut total = 0.0;
    let mut cache: Vec<(BlochPoint, f64)> = Vec::new();
    for z in zeros {
        if let Some(&(_, v)) = cache.iter().find(|(p, _)| *p == z.point) {
            total += v;
            continue;
        }
        let w = weights_along(j, amps, z.point)?;
        let v: f64 = w.iter().zip(&coeffs).map(|(wn, c)| wn * c).sum::<f64>();
        cache.push((z.point, v));
        total += v;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factory::{dicke, noon, random_pure, RandomSeed};
    use crate::spin::HalfInt;

    fn spin(t: u32) -> SpinJ {
        SpinJ::from_twice(t).unwrap()
    }

    #[test]
    fn zeros_are_zeros() {
        for t in 1..=9 {
            let j = spin(t);
            let psi = random_pure(j, RandomSeed(t as u64));
            let zs = husimi_zeros(&psi).unwrap();
            assert_eq!(zs.len(), t as usize);
            for z in zs {
                assert!(coherent_state(j, z).overlap(&psi) < 1e-10, "j={j}");
            }
        }
    }

    #[test]
    fn structured_states() {
        let j = spin(4);
        let zs = husimi_zeros(&dicke(j, HalfInt::from_twice(0)).unwrap()).unwrap();
        assert_eq!(zs.iter().filter(|z| z.theta == 0.0).count(), 2);
        assert_eq!(zs.iter().filter(|z| z.theta == std::f64::consts::PI).count(), 2);
        let north = coherent_state(j, BlochPoint::NORTH);
        assert!(husimi_zeros(&north).unwrap().iter().all(|z| z.theta == std::f64::consts::PI));
        // NOON zeros sit on the equator, equally spaced.
        for z in husimi_zeros(&noon(j)).unwrap() {
            assert!((z.theta - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        }
    }

    #[test]
    fn coherent_log_integral() {
        // Q = cos^{4j}(theta/2) has K = 1, so S_W = -sum_k I_k = 2j/(2j+1).
        for t in 1..=6 {
            let j = spin(t);
            let psi = coherent_state(j, BlochPoint::NORTH);
            let zs = zeros_of(j, psi.amplitudes()).unwrap();
            let s = -log_zero_integrals(j, psi.amplitudes(), &zs).unwrap();
            assert!((s - j.coherent_wehrl()).abs() < 1e-13, "j={j}: {s}");
        }
    }

    #[test]
    fn shift_is_exact() {
        let c = [C64::new(1.0, 0.0), C64::new(-3.0, 0.0), C64::new(2.0, 0.0)];
        let s = C64::new(0.5, -0.25);
        let shifted = taylor_shift(&c, s);
        for w in [C64::new(0.3, 0.1), C64::new(-1.0, 2.0)] {
            assert!((eval_poly(&shifted, w).0 - eval_poly(&c, w + s).0).norm() < 1e-13);
        }
    }
}
