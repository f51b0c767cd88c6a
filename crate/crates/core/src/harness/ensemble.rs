//! Seeded random matrix ensembles.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnsembleKind {
    Generic,
    Hermitian,
    Positive,
    Unitary,
    Normal,
    Diagonal,
    IsometryPair,
    ParallelPair,
    RankOnePair,
}

impl EnsembleKind {
    pub const ALL: [EnsembleKind; 9] = [
        Self::Generic,
        Self::Hermitian,
        Self::Positive,
        Self::Unitary,
        Self::Normal,
        Self::Diagonal,
        Self::IsometryPair,
        Self::ParallelPair,
        Self::RankOnePair,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Generic => "generic",
            Self::Hermitian => "hermitian",
            Self::Positive => "positive",
            Self::Unitary => "unitary",
            Self::Normal => "normal",
            Self::Diagonal => "diagonal",
            Self::IsometryPair => "isometry-pair",
            Self::ParallelPair => "parallel-pair",
            Self::RankOnePair => "rank-one-pair",
        }
    }

    pub fn is_pair(self) -> bool {
        matches!(self, Self::IsometryPair | Self::ParallelPair | Self::RankOnePair)
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown ensemble kind `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ensemble {
    pub kind: EnsembleKind,
    pub dim: usize,
    pub seed: u64,
}

impl Ensemble {
    pub fn new(kind: EnsembleKind, dim: usize, seed: u64) -> Self {
        Self { kind, dim, seed }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Sample {
    Single(ComplexMatrix),
    Pair(ComplexMatrix, ComplexMatrix),
}

/// Draws one sample.
///
/// Single kinds give one `dim×dim` matrix. `isometry-pair` gives a generic
/// `x` and a Haar unitary `y`. `parallel-pair` gives `T = U D₁ W*`,
/// `S = e^{iα} U D₂ W*` with positive diagonals whose strict top entry is
/// first, so `T ∥ S` with witness `W e₁`. `rank-one-pair` gives `ζη*`,
/// `ζξ*` where half the draws take `ξ` a complex multiple of `η`.
pub fn sample(ensemble: &Ensemble) -> Result<Sample> {
    if ensemble.dim == 0 {
        return Err(Error::InvalidInput("ensemble dimension must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ensemble.seed);
    Ok(draw(ensemble.kind, ensemble.dim, &mut rng))
}

pub(crate) fn draw(kind: EnsembleKind, n: usize, rng: &mut ChaCha8Rng) -> Sample {
    match kind {
        EnsembleKind::Generic => Sample::Single(gaussian(n, n, rng)),
        EnsembleKind::Hermitian => Sample::Single(hermitian(n, rng)),
        EnsembleKind::Positive => Sample::Single(positive(n, rng)),
        EnsembleKind::Unitary => Sample::Single(haar_unitary(n, rng)),
        EnsembleKind::Normal => {
            let u = haar_unitary(n, rng);
            let d: Vec<Complex64> = (0..n).map(|_| complex_normal(rng)).collect();
            Sample::Single(conjugate(&u, &d))
        }
        EnsembleKind::Diagonal => {
            let d: Vec<Complex64> = (0..n).map(|_| complex_normal(rng)).collect();
            Sample::Single(ComplexMatrix::wrap(DMatrix::from_diagonal(&ComplexVector::from_vec(d))))
        }
        EnsembleKind::IsometryPair => Sample::Pair(gaussian(n, n, rng), haar_unitary(n, rng)),
        EnsembleKind::ParallelPair => {
            let (t, s) = parallel_pair(n, rng);
            Sample::Pair(t, s)
        }
        EnsembleKind::RankOnePair => {
            let zeta = gaussian_vector(n, rng);
            let eta = gaussian_vector(n, rng);
            let xi = if rng.random::<bool>() {
                &eta * complex_normal(rng)
            } else {
                gaussian_vector(n, rng)
            };
            Sample::Pair(
                ComplexMatrix::wrap(&zeta * eta.adjoint()),
                ComplexMatrix::wrap(&zeta * xi.adjoint()),
            )
        }
    }
}

pub(crate) fn complex_normal(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub(crate) fn unimodular(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.random_range(0.0..TAU))
}

pub(crate) fn gaussian_vector(n: usize, rng: &mut ChaCha8Rng) -> ComplexVector {
    ComplexVector::from_fn(n, |_, _| complex_normal(rng))
}

pub(crate) fn gaussian(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::wrap(DMatrix::from_fn(rows, cols, |_, _| complex_normal(rng)))
}

pub(crate) fn hermitian(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = gaussian(n, n, rng).into_inner();
    ComplexMatrix::wrap((&g + g.adjoint()) * Complex64::new(0.5, 0.0))
}

pub(crate) fn positive(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = gaussian(n, n, rng).into_inner();
    let p = &g * g.adjoint();
    // exact Hermitian symmetry
    ComplexMatrix::wrap((&p + p.adjoint()) * Complex64::new(0.5, 0.0))
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of `diag(R)` moved into `Q`.
pub(crate) fn haar_unitary(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = gaussian(n, n, rng).into_inner();
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { d / d.norm() };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    ComplexMatrix::wrap(q)
}

/// `U diag(d) U*`.
pub(crate) fn conjugate(u: &ComplexMatrix, d: &[Complex64]) -> ComplexMatrix {
    let um = u.as_matrix();
    let dm = DMatrix::from_diagonal(&ComplexVector::from_row_slice(d));
    ComplexMatrix::wrap(um * dm * um.adjoint())
}

/// Positive diagonal entries in `(0.05, 1)·top`, with `top` first.
pub(crate) fn dominated_diagonal(n: usize, top: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut d = vec![top];
    d.extend((1..n).map(|_| top * rng.random_range(0.05..0.9)));
    d
}

fn real_diag(d: &[f64]) -> DMatrix<Complex64> {
    DMatrix::from_diagonal(&ComplexVector::from_iterator(d.len(), d.iter().map(|&v| Complex64::new(v, 0.0))))
}

/// `T = U D₁ W*`, `S = e^{iα} U D₂ W*`.
pub(crate) fn parallel_pair(n: usize, rng: &mut ChaCha8Rng) -> (ComplexMatrix, ComplexMatrix) {
    let u = haar_unitary(n, rng).into_inner();
    let w = haar_unitary(n, rng).into_inner();
    let d1 = dominated_diagonal(n, rng.random_range(0.5..2.0), rng);
    let d2 = dominated_diagonal(n, rng.random_range(0.5..2.0), rng);
    let alpha = unimodular(rng);
    let t = &u * real_diag(&d1) * w.adjoint();
    let s = &u * real_diag(&d2) * w.adjoint() * alpha;
    (ComplexMatrix::wrap(t), ComplexMatrix::wrap(s))
}

/// Positive `T` with a simple top eigenvalue at the unit vector `ξ`, and
/// `S = e^{iα}(s ξξ* + (I − ξξ*) R (I − ξξ*))` with `‖R‖ < s`, so that
/// `|[Sξ, ξ]| = ‖S‖` and `T ∥ S`.
pub(crate) fn positive_parallel_pair(n: usize, rng: &mut ChaCha8Rng) -> (ComplexMatrix, ComplexMatrix) {
    let v = haar_unitary(n, rng);
    let d = dominated_diagonal(n, rng.random_range(0.5..2.0), rng);
    let dc: Vec<Complex64> = d.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let t = conjugate(&v, &dc);
    let xi = v.as_matrix().column(0).into_owned();
    let proj = &xi * xi.adjoint();
    let comp = DMatrix::<Complex64>::identity(n, n) - &proj;
    let s_top = rng.random_range(0.5..2.0);
    let r = gaussian(n, n, rng).into_inner();
    let r_norm = crate::linalg::raw_norm(&r).max(1e-12);
    let r = r * Complex64::new(s_top * rng.random_range(0.1..0.9) / r_norm, 0.0);
    let s = (proj * Complex64::new(s_top, 0.0) + &comp * r * &comp) * unimodular(rng);
    (t, ComplexMatrix::wrap(s))
}
