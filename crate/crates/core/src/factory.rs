//! Constructors for every state family: Dicke, qubit, thermal, NOON,
//! squeezed, and random states.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::algebra::{angular_momentum_ops, coherent_state, sqrt_binomials};
use crate::error::{domain, Result};
use crate::linalg::{exp_anti_hermitian, CMatrix, CVector, C64};
use crate::spin::{BlochPoint, HalfInt, SpinJ};
use crate::state::{DensityMatrix, StateVector};

/// Seed of a deterministic sample stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RandomSeed(pub u64);

impl RandomSeed {
    /// Independent stream for sample `index`; parallel sampling partitions
    /// the seed space this way instead of sharing a generator.
    pub fn for_sample(self, index: u64) -> RandomSeed {
        RandomSeed(self.0.wrapping_add(index))
    }

    pub(crate) fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

pub fn dicke(j: SpinJ, mu: HalfInt) -> Result<StateVector> {
    let idx = j.index_of(mu)?;
    let mut v = CVector::zeros(j.dim());
    v[idx] = C64::new(1.0, 0.0);
    Ok(StateVector::from_parts_unchecked(j, v))
}

/// `(I + r . sigma) / 2` in the Dicke basis of `j = 1/2`.
///
/// `sigma_3 = diag(1, -1)` acts on `(|1/2,-1/2>, |1/2,1/2>)`, so a positive
/// `r_3` weights the ground state.
pub fn qubit_bloch(r: [f64; 3]) -> Result<DensityMatrix> {
    let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    if !norm.is_finite() || norm > 1.0 + 1e-12 {
        return domain(format!("Bloch vector norm {norm} exceeds 1"));
    }
    let j = SpinJ::from_twice(1)?;
    let m = CMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new((1.0 + r[2]) / 2.0, 0.0),
            C64::new(r[0] / 2.0, -r[1] / 2.0),
            C64::new(r[0] / 2.0, r[1] / 2.0),
            C64::new((1.0 - r[2]) / 2.0, 0.0),
        ],
    );
    Ok(DensityMatrix::from_parts_unchecked(j, m))
}

/// Gibbs weights `exp(-beta mu) / Z`, evaluated with the largest exponent
/// subtracted so no `beta` overflows.
pub fn thermal_weights(j: SpinJ, beta: f64) -> Result<Vec<f64>> {
    if !beta.is_finite() {
        return domain(format!("inverse temperature must be finite, got {beta}"));
    }
    let exps: Vec<f64> = j.mu_values().map(|mu| -beta * mu.value()).collect();
    let top = exps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = exps.iter().map(|e| (e - top).exp()).collect();
    let z: f64 = w.iter().sum();
    Ok(w.into_iter().map(|x| x / z).collect())
}

pub fn thermal(j: SpinJ, beta: f64) -> Result<DensityMatrix> {
    let w = thermal_weights(j, beta)?;
    let diag = CVector::from_iterator(w.len(), w.into_iter().map(|x| C64::new(x, 0.0)));
    Ok(DensityMatrix::from_parts_unchecked(j, CMatrix::from_diagonal(&diag)))
}

/// `(|j,-j> + |j,j>) / sqrt(2)`.
pub fn noon(j: SpinJ) -> StateVector {
    let mut v = CVector::zeros(j.dim());
    let a = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    v[0] = a;
    v[j.dim() - 1] = a;
    StateVector::from_parts_unchecked(j, v)
}

/// One-axis twisted state `exp(-i eta J3^2) |theta = pi/2, phi = 0>`.
pub fn squeeze_one_axis_state(j: SpinJ, eta: f64) -> StateVector {
    let norm = std::f64::consts::FRAC_1_SQRT_2.powi(j.twice_j() as i32);
    let sb = sqrt_binomials(j);
    let v = CVector::from_iterator(
        j.dim(),
        j.mu_values().zip(&sb).map(|(mu, &b)| {
            let m = mu.value();
            C64::from_polar(norm * b, -eta * m * m)
        }),
    );
    StateVector::from_parts_unchecked(j, v)
}

/// Generator `-eta (J+^2 - J-^2) / 2` of two-axis countertwisting.
pub(crate) fn two_axis_generator(j: SpinJ, eta: f64) -> CMatrix {
    let ops = angular_momentum_ops(j);
    let p2 = ops.jplus.entries() * ops.jplus.entries();
    let m2 = ops.jminus.entries() * ops.jminus.entries();
    (p2 - m2).map(|z| z * (-0.5 * eta))
}

/// Two-axis countertwisted state `exp(-eta (J+^2 - J-^2) / 2) |j,-j>`.
pub fn squeeze_two_axis_state(j: SpinJ, eta: f64) -> Result<StateVector> {
    let u = exp_anti_hermitian(&two_axis_generator(j, eta))?;
    Ok(StateVector::from_parts_unchecked(j, u.column(0).into_owned()))
}

fn complex_normal(rng: &mut ChaCha8Rng) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im)
}

/// Haar-random pure state: a normalized complex Gaussian vector.
pub fn random_pure(j: SpinJ, seed: RandomSeed) -> StateVector {
    let mut rng = seed.rng();
    loop {
        let v = CVector::from_fn(j.dim(), |_, _| complex_normal(&mut rng));
        if let Ok(psi) = StateVector::normalized(j, v) {
            return psi;
        }
    }
}

/// Hilbert-Schmidt random mixed state `G G^dagger / tr(G G^dagger)` from a
/// square Ginibre matrix `G`.
pub fn random_mixed(j: SpinJ, seed: RandomSeed) -> DensityMatrix {
    let d = j.dim();
    let mut rng = seed.rng();
    let g = CMatrix::from_fn(d, d, |_, _| complex_normal(&mut rng));
    let mut m = &g * g.adjoint();
    let tr = m.trace().re;
    m.unscale_mut(tr);
    // Exact Hermitian symmetry; the product is only Hermitian up to rounding.
    let m = (&m + m.adjoint()).map(|z| z * 0.5);
    DensityMatrix::from_parts_unchecked(j, m)
}

pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.purity()
}

/// Convenience: the coherent-state projector `|Omega><Omega|`.
pub fn coherent_projector(j: SpinJ, omega: BlochPoint) -> DensityMatrix {
    coherent_state(j, omega).to_density()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use std::f64::consts::PI;

    fn spin(t: u32) -> SpinJ {
        SpinJ::from_twice(t).unwrap()
    }

    #[test]
    fn dicke_examples() {
        let v = dicke(spin(1), HalfInt::from_twice(-1)).unwrap();
        assert_eq!(v.amplitudes().as_slice(), &[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        let v = dicke(spin(4), HalfInt::from_twice(0)).unwrap();
        assert_eq!(v.amplitudes()[2], C64::new(1.0, 0.0));
        assert!(dicke(spin(2), HalfInt::from_twice(3)).is_err());
    }

    #[test]
    fn qubit_examples() {
        let up = qubit_bloch([0.0, 0.0, 1.0]).unwrap();
        assert_eq!(up.entries()[(0, 0)].re, 1.0);
        assert_eq!(up.entries()[(1, 1)].re, 0.0);
        let mixed = qubit_bloch([0.0; 3]).unwrap();
        assert!(max_abs_diff(mixed.entries(), DensityMatrix::maximally_mixed(spin(1)).entries()) < 1e-16);
        let x = qubit_bloch([1.0, 0.0, 0.0]).unwrap();
        assert!((x.purity() - 1.0).abs() < 1e-12);
        assert!(x.validate().is_ok());
        assert!(qubit_bloch([0.8, 0.7, 0.0]).is_err());
    }

    #[test]
    fn thermal_examples() {
        for t in 1..=6 {
            let j = spin(t);
            let m = thermal(j, 0.0).unwrap();
            assert!(max_abs_diff(m.entries(), DensityMatrix::maximally_mixed(j).entries()) < 1e-15);
            let cold = thermal(j, 700.0 / j.value()).unwrap();
            assert!((cold.entries()[(0, 0)].re - 1.0).abs() < 1e-12);
            let hot = thermal(j, -1e5).unwrap();
            assert!(hot.validate().is_ok());
            for beta in [0.3, 1.0, 2.5] {
                let rho = thermal(j, beta).unwrap();
                let d = j.dim() as f64;
                let closed = (beta.exp() - 1.0) * ((d * beta).exp() + 1.0)
                    / ((beta.exp() + 1.0) * ((d * beta).exp() - 1.0));
                assert!((rho.purity() - closed).abs() < 1e-12, "t={t} beta={beta}");
            }
        }
        assert!(thermal(spin(2), f64::NAN).is_err());
    }

    #[test]
    fn noon_examples() {
        let n = noon(spin(2));
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(n.amplitudes().as_slice(), &[C64::new(r, 0.0), C64::new(0.0, 0.0), C64::new(r, 0.0)]);
        for t in 1..=9 {
            assert!((noon(spin(t)).norm() - 1.0).abs() < 1e-15);
        }
        let half = noon(spin(1));
        let eq = coherent_state(spin(1), BlochPoint::new(PI / 2.0, 0.0));
        assert!((half.overlap(&eq) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn one_axis_squeezing() {
        for t in 1..=8 {
            let j = spin(t);
            let s0 = squeeze_one_axis_state(j, 0.0);
            let cs = coherent_state(j, BlochPoint::new(PI / 2.0, 0.0));
            assert!((s0.amplitudes() - cs.amplitudes()).norm() < 1e-13);
            let ops = angular_momentum_ops(j);
            for eta in [0.3, 1.7, -2.2] {
                let s = squeeze_one_axis_state(j, eta);
                let twisted = CVector::from_iterator(
                    j.dim(),
                    (0..j.dim()).map(|n| {
                        let m = ops.j3.entries()[(n, n)].re;
                        C64::from_polar(1.0, -eta * m * m) * cs.amplitudes()[n]
                    }),
                );
                let diff = (s.amplitudes() - twisted).iter().map(|z| z.norm()).fold(0.0, f64::max);
                assert!(diff < 1e-13);
            }
        }
    }

    /// Closed-form two-axis expansions for j = 1, 3/2, 2, 5/2.
    fn two_axis_closed(t: u32, eta: f64) -> Vec<f64> {
        let s3 = 3f64.sqrt();
        let s7 = 7f64.sqrt();
        match t {
            2 => vec![eta.cos(), 0.0, -eta.sin()],
            3 => vec![(s3 * eta).cos(), 0.0, -(s3 * eta).sin(), 0.0],
            4 => {
                let (s, c) = (2.0 * s3 * eta).sin_cos();
                vec![(1.0 + c) / 2.0, 0.0, -s / 2f64.sqrt(), 0.0, (1.0 - c) / 2.0]
            }
            5 => {
                let (s, c) = (2.0 * s7 * eta).sin_cos();
                vec![
                    (9.0 + 5.0 * c) / 14.0,
                    0.0,
                    -5f64.sqrt() * s / 14f64.sqrt(),
                    0.0,
                    45f64.sqrt() * (1.0 - c) / 14.0,
                    0.0,
                ]
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn two_axis_matches_closed_forms() {
        for t in 2..=5 {
            let j = spin(t);
            for k in 0..20 {
                let eta = 2.0 * k as f64 / 19.0;
                let s = squeeze_two_axis_state(j, eta).unwrap();
                let expected = two_axis_closed(t, eta);
                let e = CVector::from_iterator(j.dim(), expected.iter().map(|&x| C64::new(x, 0.0)));
                // Compare up to a global phase.
                let phase = {
                    let ip = e.dotc(s.amplitudes());
                    if ip.norm() > 0.0 { ip / ip.norm() } else { C64::new(1.0, 0.0) }
                };
                let diff = (s.amplitudes() - e.map(|z| z * phase)).iter().map(|z| z.norm()).fold(0.0, f64::max);
                assert!(diff < 1e-10, "t={t} eta={eta} diff={diff}");
            }
        }
        let s = squeeze_two_axis_state(spin(4), 0.0).unwrap();
        assert!((s.amplitudes()[0] - C64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn random_states_are_valid_and_deterministic() {
        for t in 1..=6 {
            let j = spin(t);
            for s in 0..20 {
                let rho = random_mixed(j, RandomSeed(s));
                rho.validate().unwrap();
                let psi = random_pure(j, RandomSeed(s));
                assert!((psi.norm() - 1.0).abs() < 1e-12);
            }
            let a = random_mixed(j, RandomSeed(99));
            let b = random_mixed(j, RandomSeed(99));
            assert_eq!(a, b);
            assert_eq!(random_pure(j, RandomSeed(5)), random_pure(j, RandomSeed(5)));
            assert_ne!(random_mixed(j, RandomSeed(1)), random_mixed(j, RandomSeed(2)));
        }
    }
}
