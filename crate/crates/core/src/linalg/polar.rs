use nalgebra::DMatrix;
use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::spectral::hermitian_eigen;
use crate::error::Result;

/// `M = U|M|` with `|M| = (M*M)^{1/2}`.
#[derive(Debug, Clone)]
pub struct PolarParts {
    pub unitary_factor: ComplexMatrix,
    pub modulus: ComplexMatrix,
}

/// Polar decomposition through the SVD `M = W Σ V*`: `U = W V*`,
/// `|M| = V Σ V*`. On `ker |M|` the factor `U` is completed by the unmatched
/// singular vectors, so `U` is unitary for every square input.
pub fn polar_decompose(m: &ComplexMatrix) -> Result<PolarParts> {
    m.require_square()?;
    let svd = m.as_matrix().clone().svd(true, true);
    let w = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V");
    let sigma = DMatrix::from_diagonal(&svd.singular_values.map(|s| Complex64::new(s, 0.0)));
    let modulus = v_t.adjoint() * sigma * &v_t;
    Ok(PolarParts {
        unitary_factor: ComplexMatrix::wrap(w * v_t),
        modulus: ComplexMatrix::wrap(modulus),
    })
}

/// `H^power` for a Hermitian positive semidefinite `H`. Eigenvalues at or
/// below `floor` are treated as zero, so for `power > 0` they map to 0 and
/// for `power == 0` the result is the identity.
pub(crate) fn psd_power(h: &DMatrix<Complex64>, power: f64, floor: f64) -> DMatrix<Complex64> {
    if power == 0.0 {
        return DMatrix::identity(h.nrows(), h.ncols());
    }
    let eig = hermitian_eigen(h);
    let scaled: Vec<Complex64> = eig
        .values
        .iter()
        .map(|&v| Complex64::new(if v <= floor { 0.0 } else { v.powf(power) }, 0.0))
        .collect();
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(scaled));
    &eig.vectors * d * eig.vectors.adjoint()
}
