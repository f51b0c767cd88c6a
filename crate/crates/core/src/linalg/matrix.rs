use std::f64::consts::TAU;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::search::normalize_angle;

pub type ComplexVector = DVector<Complex64>;

/// Dense complex matrix with finite entries and nonzero dimensions.
///
/// Serves both as an operator on `ℂⁿ` and as an element of the matrix
/// algebra viewed as a Hilbert module over itself, where `⟨x, y⟩ = x*y`.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() == 0 || m.ncols() == 0 {
            return Err(Error::InvalidInput(format!(
                "matrix dimensions must be positive, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                let z = m[(i, j)];
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(Self(m))
    }

    /// Wraps the result of arithmetic on already-validated matrices.
    pub(crate) fn wrap(m: DMatrix<Complex64>) -> Self {
        debug_assert!(m.nrows() > 0 && m.ncols() > 0);
        Self(m)
    }

    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Self::new(DMatrix::from_row_slice(rows, cols, &entries))
    }

    /// Builds a matrix from real rows, e.g. `[[1.0, 1.0], [0.0, 0.0]]`.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != ncols) {
            return Err(Error::InvalidInput("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        Self::from_row_major(nrows, ncols, entries)
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "identity of size 0");
        Self(DMatrix::identity(n, n))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty zero matrix");
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidInput("empty diagonal".into()));
        }
        Self::new(DMatrix::from_diagonal(&DVector::from_column_slice(diag)))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        let d: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_diagonal(&d)
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn entries_row_major(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.rows() * self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.push(self.0[(i, j)]);
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self(&self.0 * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other)?;
        Ok(Self(&self.0 + &other.0))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other)?;
        Ok(Self(&self.0 - &other.0))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols() != other.rows() {
            return Err(Error::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Self(&self.0 * &other.0))
    }

    /// `self + λ·other`.
    pub fn add_scaled(&self, lambda: Complex64, other: &Self) -> Result<Self> {
        self.require_same_shape(other)?;
        Ok(Self(&self.0 + &other.0 * lambda))
    }

    /// Module inner product `⟨self, other⟩ = self* · other`.
    pub fn inner(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other)?;
        Ok(Self(self.0.adjoint() * &other.0))
    }

    pub fn apply(&self, v: &ComplexVector) -> Result<ComplexVector> {
        if v.len() != self.cols() {
            return Err(Error::InvalidInput(format!(
                "vector of length {} applied to {}x{} matrix",
                v.len(),
                self.rows(),
                self.cols()
            )));
        }
        Ok(&self.0 * v)
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && (&self.0 - self.0.adjoint()).norm() <= tol * (1.0 + self.0.norm())
    }

    /// All off-diagonal entries are below `tol` in modulus.
    pub fn is_diagonal(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows();
        (0..n).all(|i| (0..n).all(|j| i == j || self.0[(i, j)].norm() <= tol))
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        self.0.diagonal().iter().copied().collect()
    }

    pub fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows(),
                cols: self.cols(),
            })
        }
    }

    pub fn require_same_shape(&self, other: &Self) -> Result<()> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            })
        }
    }

    /// Block-diagonal assembly `diag(B₁, …, B_k)`.
    pub fn block_diagonal(blocks: &[Self]) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidInput("no blocks".into()));
        }
        let rows: usize = blocks.iter().map(Self::rows).sum();
        let cols: usize = blocks.iter().map(Self::cols).sum();
        let mut out = DMatrix::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.view_mut((r, c), b.shape()).copy_from(&b.0);
            r += b.rows();
            c += b.cols();
        }
        Ok(Self(out))
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix{:?}", self.entries_row_major())
    }
}

/// Hilbert-space inner product `[a, b] = Σ aᵢ·conj(bᵢ)`, linear in the
/// first argument.
pub fn bracket(a: &ComplexVector, b: &ComplexVector) -> Complex64 {
    b.dotc(a)
}

/// A unimodular scalar `λ = e^{iθ}` stored by its angle in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PhaseAngle {
    theta: f64,
}

impl PhaseAngle {
    pub const ONE: Self = Self { theta: 0.0 };

    pub fn new(theta: f64) -> Self {
        Self {
            theta: normalize_angle(theta),
        }
    }

    /// Phase of a nonzero complex number; `ONE` for zero.
    pub fn of(z: Complex64) -> Self {
        if z.norm() == 0.0 {
            Self::ONE
        } else {
            Self::new(z.arg())
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn value(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta)
    }

    pub fn conj(&self) -> Self {
        Self::new(TAU - self.theta)
    }

    /// Angular distance on the circle.
    pub fn distance(&self, other: &Self) -> f64 {
        let d = (self.theta - other.theta).abs();
        d.min(TAU - d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes_and_values() {
        assert!(ComplexMatrix::from_row_major(2, 2, vec![Complex64::new(1.0, 0.0); 3]).is_err());
        assert!(ComplexMatrix::new(DMatrix::zeros(0, 3)).is_err());
        let bad = ComplexMatrix::from_row_major(1, 2, vec![Complex64::new(1.0, 0.0), Complex64::new(f64::NAN, 0.0)]);
        assert!(matches!(bad, Err(Error::NonFinite { row: 0, col: 1 })));
    }

    #[test]
    fn row_major_layout() {
        let m = ComplexMatrix::from_real_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        assert_eq!(m.get(0, 1), Complex64::new(2.0, 0.0));
        assert_eq!(m.entries_row_major()[2], Complex64::new(3.0, 0.0));
    }

    #[test]
    fn bracket_is_linear_in_first_argument() {
        let a = ComplexVector::from_vec(vec![Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0)]);
        let b = ComplexVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let i = Complex64::new(0.0, 1.0);
        assert_eq!(bracket(&(a.clone() * i), &b), i * bracket(&a, &b));
        assert_eq!(bracket(&a, &(b.clone() * i)), -i * bracket(&a, &b));
    }

    #[test]
    fn phase_angle_normalizes() {
        let p = PhaseAngle::new(-std::f64::consts::FRAC_PI_2);
        assert!((p.theta() - 1.5 * std::f64::consts::PI).abs() < 1e-15);
        assert!((p.value() - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!((p.conj().theta() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert_eq!(PhaseAngle::new(TAU), PhaseAngle::ONE);
    }

    #[test]
    fn block_diagonal_assembly() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::from_real_rows(&[[5.0]]).unwrap();
        let d = ComplexMatrix::block_diagonal(&[a, b]).unwrap();
        assert_eq!(d.shape(), (3, 3));
        assert_eq!(d.get(2, 2), Complex64::new(5.0, 0.0));
        assert_eq!(d.get(0, 2), Complex64::new(0.0, 0.0));
    }
}
