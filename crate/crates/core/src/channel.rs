//! Quantum channels in Kraus form: unitary gates, squeezing unitaries, and
//! amplitude damping.

use std::f64::consts::PI;

use crate::algebra::coherent_state;
use crate::complexity::{complexity, complexity_pure, PhaseSpaceReport};
use crate::error::{domain, Error, Result};
use crate::factory::two_axis_generator;
use crate::linalg::{exp_anti_hermitian, max_abs_diff, CMatrix, C64};
use crate::quadrature::SphereGrid;
use crate::spin::{BlochPoint, SpinJ};
use crate::state::{DensityMatrix, StateVector};

/// Tolerance on `sum K^dagger K = I`.
pub const COMPLETENESS_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct QuantumChannel {
    j: SpinJ,
    kraus: Vec<CMatrix>,
    label: String,
}

impl QuantumChannel {
    /// Validates shapes and trace preservation.
    pub fn new(j: SpinJ, kraus: Vec<CMatrix>, label: impl Into<String>) -> Result<Self> {
        let d = j.dim();
        if kraus.is_empty() {
            return domain("a channel needs at least one Kraus operator");
        }
        for k in &kraus {
            if k.nrows() != d || k.ncols() != d {
                return Err(Error::DimensionMismatch { expected: d, found: k.nrows().max(k.ncols()) });
            }
        }
        let channel = Self { j, kraus, label: label.into() };
        let defect = channel.completeness_defect();
        if !(defect <= COMPLETENESS_TOL) {
            return Err(Error::InvalidState(format!("Kraus operators are not trace preserving (defect {defect:e})")));
        }
        Ok(channel)
    }

    pub fn unitary(j: SpinJ, u: CMatrix, label: impl Into<String>) -> Result<Self> {
        Self::new(j, vec![u], label)
    }

    pub fn identity(j: SpinJ) -> Self {
        Self { j, kraus: vec![CMatrix::identity(j.dim(), j.dim())], label: "identity".into() }
    }

    pub fn j(&self) -> SpinJ {
        self.j
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `max |sum K^dagger K - I|`.
    pub fn completeness_defect(&self) -> f64 {
        let d = self.j.dim();
        let sum = self.kraus.iter().fold(CMatrix::zeros(d, d), |acc, k| acc + k.adjoint() * k);
        max_abs_diff(&sum, &CMatrix::identity(d, d))
    }

    /// The single Kraus operator of a unitary channel.
    pub fn as_unitary(&self) -> Option<&CMatrix> {
        match self.kraus.as_slice() {
            [u] => Some(u),
            _ => None,
        }
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.j() != self.j {
            return Err(Error::DimensionMismatch { expected: self.j.dim(), found: rho.j().dim() });
        }
        let d = self.j.dim();
        let out = self.kraus.iter().fold(CMatrix::zeros(d, d), |acc, k| acc + k * rho.entries() * k.adjoint());
        let out = (&out + out.adjoint()).map(|z| z * 0.5);
        DensityMatrix::new(self.j, out)
    }

    /// `E(|omega><omega|)`.
    pub fn apply_to_coherent(&self, omega: BlochPoint) -> Result<DensityMatrix> {
        self.apply(&coherent_state(self.j, omega).to_density())
    }

    /// Complexity of `E(|omega><omega|)`; unitary channels take the
    /// pure-state path.
    pub fn output_complexity(&self, omega: BlochPoint, grid: &SphereGrid) -> Result<PhaseSpaceReport> {
        let psi = coherent_state(self.j, omega);
        match self.as_unitary() {
            Some(u) => complexity_pure(&psi.apply(u)?, grid),
            None => complexity(&self.apply(&psi.to_density())?, grid),
        }
    }

    /// Output of a unitary channel on a pure input.
    pub fn apply_pure(&self, psi: &StateVector) -> Option<Result<StateVector>> {
        self.as_unitary().map(|u| psi.apply(u))
    }
}

fn omega_powers(j: SpinJ) -> impl Fn(u64) -> C64 {
    let d = j.dim() as u64;
    move |k| C64::from_polar(1.0, 2.0 * PI * (k % d) as f64 / d as f64)
}

/// Cyclic shift `|mu> -> |mu+1>`, `|j> -> |-j>`.
pub fn gate_x(j: SpinJ) -> QuantumChannel {
    let d = j.dim();
    let u = CMatrix::from_fn(d, d, |r, c| if r == (c + 1) % d { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) });
    QuantumChannel { j, kraus: vec![u], label: "X".into() }
}

/// `diag(w^(j+mu))`, `w = exp(2 pi i / (2j+1))`.
pub fn gate_z(j: SpinJ) -> QuantumChannel {
    let w = omega_powers(j);
    let u = CMatrix::from_diagonal(&nalgebra::DVector::from_fn(j.dim(), |n, _| w(n as u64)));
    QuantumChannel { j, kraus: vec![u], label: "Z".into() }
}

/// Discrete Fourier transform on the Dicke basis.
pub fn gate_fourier(j: SpinJ) -> QuantumChannel {
    let d = j.dim();
    let w = omega_powers(j);
    let s = 1.0 / (d as f64).sqrt();
    let u = CMatrix::from_fn(d, d, |r, c| w((r * c) as u64) * s);
    QuantumChannel { j, kraus: vec![u], label: "F".into() }
}

/// `diag((-exp(i pi / (2j+1)))^((j+mu)^2))`.
pub fn gate_phase(j: SpinJ) -> QuantumChannel {
    let d = j.dim() as u64;
    // (-e^{i pi/d})^{n^2} = exp(i pi n^2 (d+1) / d); reduce the exponent mod 2d.
    let u = CMatrix::from_diagonal(&nalgebra::DVector::from_fn(j.dim(), |n, _| {
        let k = (n as u64 * n as u64 * (d + 1)) % (2 * d);
        C64::from_polar(1.0, PI * k as f64 / d as f64)
    }));
    QuantumChannel { j, kraus: vec![u], label: "P".into() }
}

/// One-axis twisting `exp(-i eta J3^2)`.
pub fn squeeze_unitary_one_axis(j: SpinJ, eta: f64) -> QuantumChannel {
    let u = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        j.dim(),
        j.mu_values().map(|mu| {
            let m = mu.value();
            C64::from_polar(1.0, -eta * m * m)
        }),
    ));
    QuantumChannel { j, kraus: vec![u], label: format!("S1({eta})") }
}

/// Two-axis countertwisting `exp(-eta (J+^2 - J-^2) / 2)`.
pub fn squeeze_unitary_two_axis(j: SpinJ, eta: f64) -> Result<QuantumChannel> {
    let u = exp_anti_hermitian(&two_axis_generator(j, eta))?;
    Ok(QuantumChannel { j, kraus: vec![u], label: format!("S2({eta})") })
}

/// Amplitude damping towards `|j,-j>` with probability `p`.
pub fn amplitude_damping(j: SpinJ, p: f64) -> Result<QuantumChannel> {
    if !(0.0..=1.0).contains(&p) {
        return domain(format!("damping probability {p} outside [0, 1]"));
    }
    let d = j.dim();
    let mut kraus = Vec::with_capacity(d);
    let keep = (1.0 - p).sqrt();
    kraus.push(CMatrix::from_fn(d, d, |r, c| match (r, c) {
        (0, 0) => C64::new(1.0, 0.0),
        (r, c) if r == c => C64::new(keep, 0.0),
        _ => C64::new(0.0, 0.0),
    }));
    let jump = p.sqrt();
    for n in 1..d {
        let mut k = CMatrix::zeros(d, d);
        k[(0, n)] = C64::new(jump, 0.0);
        kraus.push(k);
    }
    QuantumChannel::new(j, kraus, format!("damping({p})"))
}

/// Closed-form purity of a damped qubit coherent state.
pub fn qubit_damped_purity(p: f64, theta: f64) -> f64 {
    0.25 * (4.0 - 3.0 * p + 3.0 * p * p + 4.0 * p * (1.0 - p) * theta.cos() - p * (1.0 - p) * (2.0 * theta).cos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factory::{dicke, random_mixed, squeeze_one_axis_state, squeeze_two_axis_state, RandomSeed};
    use crate::spin::HalfInt;

    fn spin(t: u32) -> SpinJ {
        SpinJ::from_twice(t).unwrap()
    }

    fn is_unitary(u: &CMatrix) -> bool {
        max_abs_diff(&(u.adjoint() * u), &CMatrix::identity(u.nrows(), u.nrows())) < 1e-12
    }

    #[test]
    fn gates_are_unitary() {
        for t in 1..=8 {
            let j = spin(t);
            for ch in [gate_x(j), gate_z(j), gate_fourier(j), gate_phase(j), squeeze_unitary_one_axis(j, 0.7)] {
                assert!(is_unitary(ch.as_unitary().unwrap()), "{} j={j}", ch.label());
            }
            assert!(is_unitary(squeeze_unitary_two_axis(j, 0.7).unwrap().as_unitary().unwrap()));
        }
    }

    #[test]
    fn shift_has_order_dim() {
        let j = spin(5);
        let x = gate_x(j).kraus()[0].clone();
        let mut acc = CMatrix::identity(6, 6);
        for _ in 0..6 {
            acc = &x * acc;
        }
        assert!(max_abs_diff(&acc, &CMatrix::identity(6, 6)) < 1e-12);
        let e0 = dicke(j, HalfInt::from_twice(-5)).unwrap();
        let shifted = e0.apply(&x).unwrap();
        assert!((shifted.amplitudes()[1].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn phase_gate_matches_definition() {
        let j = spin(3);
        let d = 4.0_f64;
        let p = gate_phase(j);
        let base = -C64::from_polar(1.0, PI / d);
        for n in 0..4 {
            let expect = base.powu((n * n) as u32);
            assert!((p.kraus()[0][(n, n)] - expect).norm() < 1e-13);
        }
    }

    #[test]
    fn squeezing_unitaries_reproduce_states() {
        for t in 2..=6 {
            let j = spin(t);
            let eta = 0.83;
            let s1 = squeeze_unitary_one_axis(j, eta)
                .apply_pure(&coherent_state(j, BlochPoint::new(PI / 2.0, 0.0)))
                .unwrap()
                .unwrap();
            assert!((s1.overlap(&squeeze_one_axis_state(j, eta)) - 1.0).abs() < 1e-12);
            let s2 = squeeze_unitary_two_axis(j, eta).unwrap().apply_pure(&coherent_state(j, BlochPoint::NORTH)).unwrap().unwrap();
            let expect = squeeze_two_axis_state(j, eta).unwrap();
            assert!((s2.amplitudes() - expect.amplitudes()).norm() < 1e-12);
        }
        let id = squeeze_unitary_one_axis(spin(4), 0.0);
        assert!(max_abs_diff(&id.kraus()[0], &CMatrix::identity(5, 5)) < 1e-15);
    }

    #[test]
    fn damping_kraus_is_complete_and_fixes_ground() {
        for t in 1..=6 {
            let j = spin(t);
            for p in [0.0, 0.3, 1.0] {
                let ch = amplitude_damping(j, p).unwrap();
                assert!(ch.completeness_defect() < 1e-12);
                let ground = coherent_state(j, BlochPoint::NORTH).to_density();
                let out = ch.apply(&ground).unwrap();
                assert!(max_abs_diff(out.entries(), ground.entries()) < 1e-14);
            }
            let rho = random_mixed(j, RandomSeed(t as u64));
            let out = amplitude_damping(j, 1.0).unwrap().apply(&rho).unwrap();
            assert!((out.entries()[(0, 0)].re - 1.0).abs() < 1e-12);
            let same = amplitude_damping(j, 0.0).unwrap().apply(&rho).unwrap();
            assert!(max_abs_diff(same.entries(), rho.entries()) < 1e-14);
        }
        assert!(amplitude_damping(spin(2), 1.5).is_err());
        assert!(amplitude_damping(spin(2), -0.1).is_err());
    }

    #[test]
    fn qubit_damping_purity_closed_form() {
        let j = spin(1);
        for p in [0.1, 0.5, 0.8] {
            let ch = amplitude_damping(j, p).unwrap();
            for k in 0..=10 {
                let theta = PI * k as f64 / 10.0;
                let out = ch.apply_to_coherent(BlochPoint::new(theta, 0.4)).unwrap();
                assert!((out.purity() - qubit_damped_purity(p, theta)).abs() < 1e-12);
            }
        }
        let excited = amplitude_damping(j, 0.5).unwrap().apply_to_coherent(BlochPoint::new(PI, 0.0)).unwrap();
        assert!(max_abs_diff(excited.entries(), DensityMatrix::maximally_mixed(j).entries()) < 1e-15);
    }

    #[test]
    fn identity_channel_and_mismatch() {
        let j = spin(3);
        let rho = random_mixed(j, RandomSeed(4));
        let out = QuantumChannel::identity(j).apply(&rho).unwrap();
        assert!(max_abs_diff(out.entries(), rho.entries()) < 1e-14);
        assert!(matches!(
            QuantumChannel::identity(spin(2)).apply(&rho),
            Err(Error::DimensionMismatch { .. })
        ));
        let bad = vec![CMatrix::identity(4, 4).map(|z| z * 0.5)];
        assert!(QuantumChannel::new(j, bad, "bad").is_err());
    }
}
