//! Small dense complex linear algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const I: C64 = C64::new(0.0, 1.0);

/// Exact binomial coefficient `C(n, k)`.
pub fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// `max |a - a^dagger|`.
pub fn hermiticity_defect(a: &CMatrix) -> f64 {
    max_abs_diff(a, &a.adjoint())
}

/// Eigen-decomposition of a Hermitian matrix: returns `(eigenvalues, eigenvectors)`
/// with eigenvectors as columns.
pub fn hermitian_eigen(h: &CMatrix) -> Result<(DVector<f64>, CMatrix)> {
    let dim = h.nrows();
    let fail = || Error::Eigen {
        dim,
        max_abs: max_abs(h),
        asymmetry: hermiticity_defect(h),
    };
    if !h.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(fail());
    }
    let eig = h.clone().try_symmetric_eigen(f64::EPSILON, 10_000).ok_or_else(fail)?;
    Ok((eig.eigenvalues, eig.eigenvectors))
}

/// Exponential of an anti-Hermitian generator `A` (so `exp(A)` is unitary),
/// computed from the eigendecomposition of the Hermitian matrix `iA`.
pub fn exp_anti_hermitian(generator: &CMatrix) -> Result<CMatrix> {
    let h = generator.map(|z| I * z);
    // Symmetrize away rounding before decomposing.
    let h = (&h + h.adjoint()).map(|z| z * 0.5);
    let (vals, vecs) = hermitian_eigen(&h)?;
    // exp(A) = exp(-i H) = V diag(e^{-i lambda}) V^dagger
    let mut scaled = vecs.clone();
    for (c, &lam) in vals.iter().enumerate() {
        let phase = C64::from_polar(1.0, -lam);
        for r in 0..scaled.nrows() {
            scaled[(r, c)] *= phase;
        }
    }
    Ok(scaled * vecs.adjoint())
}

/// Pairwise (cascade) summation with a fixed reduction tree, so the result
/// depends only on the order of `xs`.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const LEAF: usize = 8;
    if xs.len() <= LEAF {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_are_exact() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(9, 5), 126);
        assert_eq!(binomial(3, 5), 0);
        // C(120, 60) is about 9.66e34 and must not overflow.
        assert_eq!(binomial(120, 60), 96_614_908_840_363_322_603_893_139_521_372_656);
        for n in 1..40u32 {
            for k in 1..n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn exp_of_rotation_generator() {
        // A = [[0, -t], [t, 0]] generates a real rotation by t.
        let t = 0.7;
        let a = CMatrix::from_row_slice(2, 2, &[C64::new(0.0, 0.0), C64::new(-t, 0.0), C64::new(t, 0.0), C64::new(0.0, 0.0)]);
        let u = exp_anti_hermitian(&a).unwrap();
        let expected = CMatrix::from_row_slice(
            2,
            2,
            &[C64::new(t.cos(), 0.0), C64::new(-t.sin(), 0.0), C64::new(t.sin(), 0.0), C64::new(t.cos(), 0.0)],
        );
        assert!(max_abs_diff(&u, &expected) < 1e-14);
    }

    #[test]
    fn nonfinite_input_reports_eigen_error() {
        let mut h = CMatrix::identity(3, 3);
        h[(0, 1)] = C64::new(f64::NAN, 0.0);
        assert!(matches!(hermitian_eigen(&h), Err(Error::Eigen { dim: 3, .. })));
    }

    #[test]
    fn pairwise_sum_matches_naive_on_exact_values() {
        let xs: Vec<f64> = (0..1000).map(f64::from).collect();
        assert_eq!(pairwise_sum(&xs), 499_500.0);
        assert_eq!(pairwise_sum(&[]), 0.0);
    }
}
