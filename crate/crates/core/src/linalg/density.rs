use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::matrix::{ComplexMatrix, ComplexVector};
use super::spectral::hermitian_eigenvalues;
use crate::config::ToleranceConfig;
use crate::error::{Error, Result};

/// Positive semidefinite trace-one matrix `P`, representing the state
/// `φ(a) = tr(P a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    matrix: ComplexMatrix,
}

impl DensityState {
    /// Validates Hermitian, eigenvalues `≥ -psd_floor`, trace 1.
    pub fn new(matrix: ComplexMatrix, cfg: &ToleranceConfig) -> Result<Self> {
        matrix.require_square()?;
        if !matrix.is_hermitian(cfg.eq_rel) {
            return Err(Error::InvalidWitness("density matrix is not Hermitian".into()));
        }
        let min = hermitian_eigenvalues(matrix.as_matrix()).last().copied().unwrap_or(0.0);
        if min < -cfg.psd_floor {
            return Err(Error::InvalidWitness(format!("density matrix has eigenvalue {min}")));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > cfg.eq_rel {
            return Err(Error::InvalidWitness(format!("density matrix has trace {tr}")));
        }
        Ok(Self { matrix })
    }

    /// The pure state `ξξ*/‖ξ‖²`.
    pub fn pure(xi: &ComplexVector) -> Result<Self> {
        let n = xi.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidWitness("pure state from a zero vector".into()));
        }
        let u = xi / Complex64::new(n, 0.0);
        Ok(Self {
            matrix: ComplexMatrix::wrap(&u * u.adjoint()),
        })
    }

    /// Convex combination `Σ wₖ ξₖξₖ*` of pure states. Weights must be
    /// nonnegative; they are renormalized to sum to one.
    pub fn mixture(weights: &[f64], vectors: &[ComplexVector]) -> Result<Self> {
        if weights.len() != vectors.len() || weights.is_empty() {
            return Err(Error::InvalidWitness("mixture needs one weight per vector".into()));
        }
        let total: f64 = weights.iter().sum();
        if weights.iter().any(|&w| w < 0.0 || !w.is_finite()) || total <= 0.0 {
            return Err(Error::InvalidWitness("mixture weights must be nonnegative".into()));
        }
        let n = vectors[0].len();
        let mut p = DMatrix::zeros(n, n);
        for (w, v) in weights.iter().zip(vectors) {
            let u = v / Complex64::new(v.norm(), 0.0);
            p += &u * u.adjoint() * Complex64::new(w / total, 0.0);
        }
        Ok(Self {
            matrix: ComplexMatrix::wrap(p),
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `φ(a) = tr(P a)`.
    pub fn expectation(&self, a: &ComplexMatrix) -> Result<Complex64> {
        self.matrix.require_same_shape(a)?;
        Ok((self.matrix.as_matrix() * a.as_matrix()).trace())
    }
}

impl Serialize for DensityState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::interchange::MatrixDocument::from(&self.matrix).serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_state_has_unit_trace() {
        let xi = ComplexVector::from_vec(vec![Complex64::new(3.0, 0.0), Complex64::new(0.0, 4.0)]);
        let p = DensityState::pure(&xi).unwrap();
        assert!((p.matrix().trace() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        DensityState::new(p.matrix().clone(), &ToleranceConfig::default()).unwrap();
    }

    #[test]
    fn rejects_non_states() {
        let cfg = ToleranceConfig::default();
        let neg = ComplexMatrix::from_real_diagonal(&[2.0, -1.0]).unwrap();
        assert!(DensityState::new(neg, &cfg).is_err());
        let big = ComplexMatrix::from_real_diagonal(&[1.0, 1.0]).unwrap();
        assert!(DensityState::new(big, &cfg).is_err());
        let nonherm = ComplexMatrix::from_real_rows(&[[0.5, 1.0], [0.0, 0.5]]).unwrap();
        assert!(DensityState::new(nonherm, &cfg).is_err());
        assert!(DensityState::pure(&ComplexVector::zeros(2)).is_err());
    }

    #[test]
    fn expectation_of_mixture() {
        let e1 = ComplexVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let e2 = ComplexVector::from_vec(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
        let p = DensityState::mixture(&[1.0, 3.0], &[e1, e2]).unwrap();
        let a = ComplexMatrix::from_real_diagonal(&[4.0, 8.0]).unwrap();
        assert!((p.expectation(&a).unwrap() - Complex64::new(7.0, 0.0)).norm() < 1e-14);
    }
}
