//! Boundary of the numerical range `W(M) = {ξ*Mξ : ‖ξ‖ = 1}` through its
//! support function `h(θ) = λ_max(Re(e^{-iθ}M))`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ComplexVector};
use super::spectral::hermitian_eigen;
use crate::config::ToleranceConfig;
use crate::error::Result;
use crate::search::maximize_on_circle;

/// Largest eigenvalue of `(e^{-iθ}M + e^{iθ}M*)/2` and a unit eigenvector.
/// The boundary point of `W(M)` in direction `θ` is `ξ*Mξ`.
pub fn numerical_range_support(m: &ComplexMatrix, theta: f64) -> Result<(f64, ComplexVector)> {
    m.require_square()?;
    Ok(raw_support(m.as_matrix(), theta))
}

pub(crate) fn raw_support(m: &DMatrix<Complex64>, theta: f64) -> (f64, ComplexVector) {
    let eig = hermitian_eigen(&rotated_real_part(m, theta));
    (eig.values[0], eig.vectors.column(0).into_owned())
}

pub(crate) fn raw_support_value(m: &DMatrix<Complex64>, theta: f64) -> f64 {
    let h = rotated_real_part(m, theta);
    h.symmetric_eigenvalues().iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

fn rotated_real_part(m: &DMatrix<Complex64>, theta: f64) -> DMatrix<Complex64> {
    let w = Complex64::from_polar(1.0, -theta);
    let a = m * w;
    (&a + a.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Numerical radius `max{|ξ*Mξ| : ‖ξ‖ = 1}`, found as the maximum of the
/// support function over the phase grid with refinement. Returns the modulus
/// of the best boundary point and the unit vector producing it.
pub fn max_modulus_numerical_range(m: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<(f64, ComplexVector)> {
    m.require_square()?;
    Ok(raw_numerical_radius(m.as_matrix(), cfg))
}

pub(crate) fn raw_numerical_radius(m: &DMatrix<Complex64>, cfg: &ToleranceConfig) -> (f64, ComplexVector) {
    if m.nrows() == 1 {
        return (m[(0, 0)].norm(), ComplexVector::from_element(1, Complex64::new(1.0, 0.0)));
    }
    let best = maximize_on_circle(|t| raw_support_value(m, t), cfg.phase_grid, cfg.phase_refine);
    let (_, xi) = raw_support(m, best.theta);
    let w = xi.dotc(&(m * &xi));
    (w.norm().max(best.value), xi)
}
