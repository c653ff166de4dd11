//! Angular-momentum matrices, spin coherent states, and SU(2) displacements.

use crate::error::Result;
use crate::linalg::{binomial, exp_anti_hermitian, CMatrix, CVector, C64};
use crate::spin::{BlochPoint, SpinJ};
use crate::state::StateVector;

/// A `d x d` operator on the spin-j space.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    j: SpinJ,
    entries: CMatrix,
}

impl OperatorMatrix {
    pub fn new(j: SpinJ, entries: CMatrix) -> Result<Self> {
        if entries.nrows() != j.dim() || entries.ncols() != j.dim() {
            return Err(crate::Error::DimensionMismatch { expected: j.dim(), found: entries.nrows() });
        }
        Ok(Self { j, entries })
    }

    pub fn j(&self) -> SpinJ {
        self.j
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix {
        self.entries
    }

    pub fn adjoint(&self) -> OperatorMatrix {
        OperatorMatrix { j: self.j, entries: self.entries.adjoint() }
    }
}

/// The spin-j representation of su(2).
#[derive(Clone, Debug)]
pub struct AngularMomentum {
    pub j1: OperatorMatrix,
    pub j2: OperatorMatrix,
    pub j3: OperatorMatrix,
    pub jplus: OperatorMatrix,
    pub jminus: OperatorMatrix,
}

pub fn angular_momentum_ops(j: SpinJ) -> AngularMomentum {
    let d = j.dim();
    let jv = j.value();
    let mut jplus = CMatrix::zeros(d, d);
    let mut j3 = CMatrix::zeros(d, d);
    for (n, mu) in j.mu_values().enumerate() {
        let m = mu.value();
        j3[(n, n)] = C64::new(m, 0.0);
        if n + 1 < d {
            // J+ |j,mu> = sqrt((j - mu)(j + mu + 1)) |j,mu+1>
            jplus[(n + 1, n)] = C64::new(((jv - m) * (jv + m + 1.0)).sqrt(), 0.0);
        }
    }
    let jminus = jplus.adjoint();
    let j1 = (&jplus + &jminus).map(|z| z * 0.5);
    let j2 = (&jplus - &jminus).map(|z| z / C64::new(0.0, 2.0));
    let wrap = |entries| OperatorMatrix { j, entries };
    AngularMomentum {
        j1: wrap(j1),
        j2: wrap(j2),
        j3: wrap(j3),
        jplus: wrap(jplus),
        jminus: wrap(jminus),
    }
}

/// `sqrt(C(2j, n))` for `n = j + mu = 0..=2j`.
pub(crate) fn sqrt_binomials(j: SpinJ) -> Vec<f64> {
    let tj = j.twice_j();
    (0..=tj).map(|n| (binomial(tj, n) as f64).sqrt()).collect()
}

/// Real magnitudes of the coherent-state amplitudes at polar angle `theta`,
/// and their `theta`-derivatives. The full amplitude at index `n = j + mu`
/// is `profile[n] * exp(i n phi)`.
pub(crate) fn coherent_profile(j: SpinJ, sqrt_binom: &[f64], theta: f64) -> (Vec<f64>, Vec<f64>) {
    let tj = j.twice_j() as i32;
    let (s, c) = (0.5 * theta).sin_cos();
    let mut amp = Vec::with_capacity(sqrt_binom.len());
    let mut damp = Vec::with_capacity(sqrt_binom.len());
    for (n, &b) in sqrt_binom.iter().enumerate() {
        let q = n as i32; // exponent of sin(theta/2)
        let p = tj - q; // exponent of cos(theta/2)
        amp.push(b * c.powi(p) * s.powi(q));
        let mut d = 0.0;
        if p > 0 {
            d -= f64::from(p) * c.powi(p - 1) * s.powi(q + 1);
        }
        if q > 0 {
            d += f64::from(q) * c.powi(p + 1) * s.powi(q - 1);
        }
        damp.push(0.5 * b * d);
    }
    (amp, damp)
}

/// `|Omega>` expanded in the Dicke basis.
pub fn coherent_state(j: SpinJ, omega: BlochPoint) -> StateVector {
    let (amp, _) = coherent_profile(j, &sqrt_binomials(j), omega.theta);
    let v = CVector::from_iterator(
        amp.len(),
        amp.iter().enumerate().map(|(n, &a)| C64::from_polar(a, n as f64 * omega.phi)),
    );
    StateVector::from_parts_unchecked(j, v)
}

/// `d|Omega>/dtheta` and `d|Omega>/dphi`.
pub(crate) fn coherent_state_derivatives(j: SpinJ, omega: BlochPoint) -> (CVector, CVector) {
    let (amp, damp) = coherent_profile(j, &sqrt_binomials(j), omega.theta);
    let d = amp.len();
    let phase = |n: usize| C64::from_polar(1.0, n as f64 * omega.phi);
    let dtheta = CVector::from_iterator(d, (0..d).map(|n| phase(n) * damp[n]));
    let dphi = CVector::from_iterator(d, (0..d).map(|n| phase(n) * C64::new(0.0, n as f64 * amp[n])));
    (dtheta, dphi)
}

/// SU(2) displacement `exp(theta/2 (e^{i phi} J+ - e^{-i phi} J-))`,
/// which maps `|j,-j>` onto `|Omega>`.
pub fn displacement(j: SpinJ, omega: BlochPoint) -> Result<OperatorMatrix> {
    let ops = angular_momentum_ops(j);
    let half = 0.5 * omega.theta;
    let up = C64::from_polar(half, omega.phi);
    let down = C64::from_polar(half, -omega.phi);
    let generator = ops.jplus.entries.map(|z| z * up) - ops.jminus.entries.map(|z| z * down);
    Ok(OperatorMatrix { j, entries: exp_anti_hermitian(&generator)? })
}
