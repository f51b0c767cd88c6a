//! Norms and spectral data of dense complex matrices.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Largest singular value.
pub fn operator_norm(m: &ComplexMatrix) -> f64 {
    raw_norm(m.as_matrix())
}

pub(crate) fn raw_norm(m: &DMatrix<Complex64>) -> f64 {
    m.singular_values_unordered().iter().copied().fold(0.0, f64::max)
}

/// Singular values in descending order.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    m.as_matrix().singular_values().iter().copied().collect()
}

/// QR sweeps allowed per row before a Schur attempt is abandoned.
const SCHUR_SWEEPS_PER_ROW: usize = 200;

/// Relative subdiagonal size treated as zero by the Schur iteration.
const SCHUR_DEFLATION: f64 = 4.0 * f64::EPSILON;

/// All eigenvalues, read off the diagonal of the complex Schur form.
///
/// Deflating at exactly machine epsilon makes the shifted QR iteration stall
/// on repeated eigenvalues and on matrices within rounding of a scalar
/// matrix, so the test uses a few ulps on the matrix scaled to unit norm. If
/// that still fails, the iteration is retried under a Fourier similarity and
/// then on the matrix centered at `tr(M)/n`.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    m.require_square()?;
    let a = m.as_matrix();
    let n = a.nrows();
    let mean = a.trace() / n as f64;
    let max_niter = SCHUR_SWEEPS_PER_ROW * n;
    let f = fourier(n);
    for center in [Complex64::new(0.0, 0.0), mean] {
        let shifted = a - DMatrix::<Complex64>::identity(n, n) * center;
        let spread = raw_norm(&shifted);
        if spread == 0.0 {
            return Ok(vec![center; n]);
        }
        let scaled = shifted / Complex64::new(spread, 0.0);
        let schur = nalgebra::Schur::try_new(scaled.clone(), SCHUR_DEFLATION, max_niter)
            .or_else(|| nalgebra::Schur::try_new(f.adjoint() * scaled * &f, SCHUR_DEFLATION, max_niter));
        if let Some(schur) = schur {
            let (_, t) = schur.unpack();
            return Ok(t.diagonal().iter().map(|&z| center + z * spread).collect());
        }
    }
    Err(Error::NoConvergence(n))
}

/// Unitary discrete Fourier matrix.
fn fourier(n: usize) -> DMatrix<Complex64> {
    let scale = 1.0 / (n as f64).sqrt();
    DMatrix::from_fn(n, n, |j, k| {
        Complex64::from_polar(scale, -std::f64::consts::TAU * (j * k) as f64 / n as f64)
    })
}

/// `max |eigenvalue|`.
pub fn spectral_radius(m: &ComplexMatrix) -> Result<f64> {
    Ok(eigenvalues(m)?.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// `(Σ σᵢ^p)^{1/p}` for `p ≥ 1`.
pub fn schatten_norm(m: &ComplexMatrix, p: f64) -> Result<f64> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::InvalidInput(format!("Schatten exponent must be in [1, ∞), got {p}")));
    }
    Ok(schatten_from_values(&m.as_matrix().singular_values_unordered(), p))
}

pub(crate) fn raw_schatten(m: &DMatrix<Complex64>, p: f64) -> f64 {
    schatten_from_values(&m.singular_values_unordered(), p)
}

fn schatten_from_values(sv: &DVector<f64>, p: f64) -> f64 {
    let top = sv.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return 0.0;
    }
    // scaled by the top value so large p cannot overflow
    top * sv.iter().map(|s| (s / top).powf(p)).sum::<f64>().powf(1.0 / p)
}

/// Eigen-decomposition of a Hermitian matrix with eigenvalues sorted in
/// descending order; column `k` of `vectors` belongs to `values[k]`.
pub(crate) struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<Complex64>,
}

pub(crate) fn hermitian_eigen(h: &DMatrix<Complex64>) -> HermitianEigen {
    let sym = (h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(h.nrows(), order.len(), |i, j| eig.eigenvectors[(i, order[j])]);
    HermitianEigen { values, vectors }
}

pub(crate) fn hermitian_eigenvalues(h: &DMatrix<Complex64>) -> Vec<f64> {
    let sym = (h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let mut v: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Orthonormal basis (as columns) of the eigenspace of a Hermitian `h`
/// belonging to every eigenvalue within `abs_tol` of the largest one.
pub(crate) fn top_eigenspace(h: &DMatrix<Complex64>, abs_tol: f64) -> (f64, DMatrix<Complex64>) {
    let eig = hermitian_eigen(h);
    let top = eig.values[0];
    let k = eig.values.iter().take_while(|&&v| top - v <= abs_tol).count();
    (top, eig.vectors.columns(0, k).into_owned())
}
