//! Decision procedures for norm-parallelism (`‖T + λS‖ = ‖T‖ + ‖S‖` for some
//! unimodular `λ`) and Birkhoff–James orthogonality of complex matrices,
//! viewed both as operators on `ℂⁿ` and as elements of the matrix algebra
//! `M_n` regarded as a Hilbert module over itself (`⟨x, y⟩ = x*y`).
//!
//! Every characterization is implemented as its own procedure and is checked
//! against a brute-force phase-search oracle by the [`harness`].

pub mod config;
pub mod error;
pub mod harness;
pub mod interchange;
pub mod linalg;
pub mod module_ops;
pub mod orthogonality;
pub mod parallelism;
pub mod schatten;
pub mod search;

pub use config::ToleranceConfig;
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, ComplexVector, DensityState, PhaseAngle};
pub use num_complex::Complex64;
