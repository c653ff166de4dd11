//! Pure and mixed state types shared by every module.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, hermiticity_defect, CMatrix, CVector, C64};
use crate::spin::{HalfInt, SpinJ};

/// Tolerance on `| ||psi|| - 1 |` for a valid state vector.
pub const NORM_TOL: f64 = 1e-12;
/// Tolerance on Hermiticity and unit trace for a valid density matrix.
pub const DENSITY_TOL: f64 = 1e-12;
/// Smallest admissible eigenvalue of a density matrix.
pub const PSD_TOL: f64 = -1e-10;

/// Normalized pure state in the Dicke basis, `mu = -j, ..., j`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    j: SpinJ,
    amplitudes: CVector,
}

impl StateVector {
    /// Validates the length and the unit norm.
    pub fn new(j: SpinJ, amplitudes: CVector) -> Result<Self> {
        check_len(j, amplitudes.len())?;
        let n = amplitudes.norm();
        if !n.is_finite() || (n - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("state vector norm {n} is not 1")));
        }
        Ok(Self { j, amplitudes })
    }

    /// Rescales any nonzero vector to unit norm.
    pub fn normalized(j: SpinJ, amplitudes: CVector) -> Result<Self> {
        check_len(j, amplitudes.len())?;
        let n = amplitudes.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::InvalidState("cannot normalize a zero or non-finite vector".into()));
        }
        Ok(Self { j, amplitudes: amplitudes.unscale(n) })
    }

    pub(crate) fn from_parts_unchecked(j: SpinJ, amplitudes: CVector) -> Self {
        debug_assert_eq!(amplitudes.len(), j.dim());
        Self { j, amplitudes }
    }

    pub fn j(&self) -> SpinJ {
        self.j
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> CVector {
        self.amplitudes
    }

    pub fn amplitude(&self, mu: HalfInt) -> Result<C64> {
        Ok(self.amplitudes[self.j.index_of(mu)?])
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// `|<self|other>|`, the phase-insensitive comparison between rays.
    pub fn overlap(&self, other: &StateVector) -> f64 {
        self.inner(other).norm()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// `|psi><psi|`.
    pub fn to_density(&self) -> DensityMatrix {
        let m = &self.amplitudes * self.amplitudes.adjoint();
        DensityMatrix::from_parts_unchecked(self.j, m)
    }

    /// Applies a matrix and returns the (not renormalized) image.
    pub fn apply(&self, op: &CMatrix) -> Result<StateVector> {
        if op.nrows() != self.j.dim() || op.ncols() != self.j.dim() {
            return Err(Error::DimensionMismatch { expected: self.j.dim(), found: op.nrows() });
        }
        Ok(Self { j: self.j, amplitudes: op * &self.amplitudes })
    }
}

/// Hermitian, unit-trace, positive semidefinite `d x d` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    j: SpinJ,
    entries: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace, and positivity.
    pub fn new(j: SpinJ, entries: CMatrix) -> Result<Self> {
        let rho = Self::try_from_parts(j, entries)?;
        rho.validate()?;
        Ok(rho)
    }

    fn try_from_parts(j: SpinJ, entries: CMatrix) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::InvalidState(format!(
                "density matrix must be square, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        check_len(j, entries.nrows())?;
        Ok(Self { j, entries })
    }

    pub(crate) fn from_parts_unchecked(j: SpinJ, entries: CMatrix) -> Self {
        debug_assert_eq!(entries.nrows(), j.dim());
        Self { j, entries }
    }

    /// `I / (2j + 1)`.
    pub fn maximally_mixed(j: SpinJ) -> Self {
        let d = j.dim();
        Self::from_parts_unchecked(j, CMatrix::identity(d, d).unscale(d as f64))
    }

    /// Checks every invariant; returns the first violation.
    pub fn validate(&self) -> Result<()> {
        let defect = hermiticity_defect(&self.entries);
        if !(defect <= DENSITY_TOL) {
            return Err(Error::InvalidState(format!("not Hermitian (defect {defect:.3e})")));
        }
        let tr = self.trace();
        if !((tr - 1.0).abs() <= DENSITY_TOL) {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let min = self.min_eigenvalue()?;
        if min < PSD_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:.3e}")));
        }
        Ok(())
    }

    pub fn j(&self) -> SpinJ {
        self.j
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    /// `tr(rho^2)`; equals the squared Frobenius norm for Hermitian `rho`.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let (vals, _) = hermitian_eigen(&self.entries)?;
        let mut v: Vec<f64> = vals.iter().copied().collect();
        v.sort_by(f64::total_cmp);
        Ok(v)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigenvalues()?.first().copied().unwrap_or(0.0))
    }

    /// `U rho U^dagger`.
    pub fn conjugate_by(&self, u: &CMatrix) -> Result<DensityMatrix> {
        if u.nrows() != self.j.dim() || u.ncols() != self.j.dim() {
            return Err(Error::DimensionMismatch { expected: self.j.dim(), found: u.nrows() });
        }
        Ok(Self::from_parts_unchecked(self.j, u * &self.entries * u.adjoint()))
    }
}

fn check_len(j: SpinJ, len: usize) -> Result<()> {
    if len != j.dim() {
        return Err(Error::DimensionMismatch { expected: j.dim(), found: len });
    }
    Ok(())
}
