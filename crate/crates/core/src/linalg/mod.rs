//! Dense complex-matrix primitives used by every decision procedure.

mod density;
mod matrix;
mod numrange;
mod polar;
mod spectral;

pub use density::DensityState;
pub use matrix::{bracket, ComplexMatrix, ComplexVector, PhaseAngle};
pub use numrange::{max_modulus_numerical_range, numerical_range_support};
pub use polar::{polar_decompose, PolarParts};
pub use spectral::{eigenvalues, operator_norm, schatten_norm, singular_values, spectral_radius};

pub(crate) use numrange::raw_numerical_radius;
pub(crate) use polar::psd_power;
pub(crate) use spectral::{hermitian_eigen, hermitian_eigenvalues, raw_norm, raw_schatten, top_eigenspace};
