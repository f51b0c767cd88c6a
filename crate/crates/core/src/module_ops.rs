//! Concrete module constructions over `M_n`: elementary operators
//! `θ_{x,y}(z) = x y* z` lifted to `n²×n²` matrices, rank-one operators
//! `ζη*` on `ℂⁿ`, and parallelism of block-diagonal assemblies.
//!
//! Vectorization stacks columns, so left multiplication by `A` acts on
//! `vec(Z)` as `I ⊗ A`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::config::{rel_gap, ToleranceConfig};
use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigenvalues, operator_norm, psd_power, spectral_radius, ComplexMatrix, ComplexVector,
};
use crate::parallelism::{eigen_criterion, is_parallel, positive_criterion, CriterionReport};

/// The map `z ↦ x y* z` on `M_n` together with its matrix on `vec(M_n)`.
#[derive(Debug, Clone)]
pub struct ElementaryOperator {
    pub x: ComplexMatrix,
    pub y: ComplexMatrix,
    pub lifted: ComplexMatrix,
}

impl ElementaryOperator {
    pub fn operator_norm(&self) -> f64 {
        operator_norm(&self.lifted)
    }

    /// `‖x‖‖y‖`, an upper bound for [`Self::operator_norm`]; the two agree
    /// only when `x` and `y` attain their norms compatibly (equality needs
    /// `‖xy*‖ = ‖x‖‖y‖`).
    pub fn norm_product(&self) -> f64 {
        operator_norm(&self.x) * operator_norm(&self.y)
    }

    pub fn norm_identity_holds(&self, cfg: &ToleranceConfig) -> bool {
        cfg.approx_eq(self.operator_norm(), self.norm_product())
    }

    /// Largest entry of `lift(x, y)* − lift(y, x)`.
    pub fn adjoint_defect(&self) -> f64 {
        let swapped = lift_raw(self.y.as_matrix(), self.x.as_matrix());
        (self.lifted.as_matrix().adjoint() - swapped).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `θ_{x,y} θ_{z,w}` as a lifted matrix.
    pub fn compose(&self, other: &Self) -> ComplexMatrix {
        ComplexMatrix::wrap(self.lifted.as_matrix() * other.lifted.as_matrix())
    }
}

fn lift_raw(x: &DMatrix<Complex64>, y: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = x.nrows();
    DMatrix::<Complex64>::identity(n, n).kronecker(&(x * y.adjoint()))
}

/// Builds `θ_{x,y}`.
pub fn lift_theta(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<ElementaryOperator> {
    x.require_square()?;
    x.require_same_shape(y)?;
    Ok(ElementaryOperator {
        x: x.clone(),
        y: y.clone(),
        lifted: ComplexMatrix::wrap(lift_raw(x.as_matrix(), y.as_matrix())),
    })
}

/// `x*y = s·I` within `eq_rel` (relative to `1 + ‖x*y‖`), returning `s`.
fn scalar_inner(x: &ComplexMatrix, y: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<Option<Complex64>> {
    let inner = x.inner(y)?;
    let n = inner.rows() as f64;
    let s = inner.trace() / n;
    let residual = operator_norm(&inner.sub(&ComplexMatrix::identity(inner.rows()).scale(s))?);
    Ok((residual <= cfg.eq_rel * (1.0 + operator_norm(&inner))).then_some(s))
}

/// Result of [`theta_spectral_radius_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaRadius {
    /// `x*y` is a scalar multiple of the identity.
    pub applicable: bool,
    pub r_theta: f64,
    /// `|s|` for `x*y = sI`.
    pub scalar_mod: f64,
    pub agrees: bool,
}

/// When `x*y = sI`, compares `r(θ_{x,y})` with `|s|`.
pub fn theta_spectral_radius_check(x: &ComplexMatrix, y: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<ThetaRadius> {
    let theta = lift_theta(x, y)?;
    let Some(s) = scalar_inner(x, y, cfg)? else {
        return Ok(ThetaRadius { applicable: false, r_theta: f64::NAN, scalar_mod: f64::NAN, agrees: false });
    };
    let r = spectral_radius(&theta.lifted)?;
    Ok(ThetaRadius {
        applicable: true,
        r_theta: r,
        scalar_mod: s.norm(),
        agrees: cfg.approx_eq(r, s.norm()),
    })
}

/// Result of [`theta_transfer_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaTransfer {
    pub applicable: bool,
    /// `x ∥ y`.
    pub lhs: bool,
    /// `θ_{z,x} ∥ θ_{z,y}` after normalizing `z`.
    pub rhs: bool,
    pub borderline: bool,
}

/// Compares `x ∥ y` with `θ_{z,x} ∥ θ_{z,y}`. Applicable when `z*z` is
/// invertible and `x*y` is a scalar multiple of the identity; `z` is first
/// replaced by the unitary `z(z*z)^{-1/2}`.
pub fn theta_transfer_check(x: &ComplexMatrix, y: &ComplexMatrix, z: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<ThetaTransfer> {
    x.require_square()?;
    x.require_same_shape(y)?;
    x.require_same_shape(z)?;
    let zz = z.inner(z)?;
    let nz = operator_norm(z);
    let min_eig = hermitian_eigenvalues(zz.as_matrix()).last().copied().unwrap_or(0.0);
    let invertible = nz > 0.0 && min_eig > cfg.eq_rel * nz * nz;
    if !invertible || scalar_inner(x, y, cfg)?.is_none() {
        return Ok(ThetaTransfer { applicable: false, lhs: false, rhs: false, borderline: false });
    }
    let inv_sqrt = psd_power(zz.as_matrix(), -0.5, 0.0);
    let unitary = ComplexMatrix::wrap(z.as_matrix() * inv_sqrt);
    let left = is_parallel(x, y, cfg)?;
    let right = is_parallel(&lift_theta(&unitary, x)?.lifted, &lift_theta(&unitary, y)?.lifted, cfg)?;
    Ok(ThetaTransfer {
        applicable: true,
        lhs: left.parallel,
        rhs: right.parallel,
        borderline: left.borderline || right.borderline,
    })
}

/// `ζ⊗η = ζη*`, so that `(ζ⊗η)ξ = [ξ, η]ζ`.
pub fn rank_one(zeta: &ComplexVector, eta: &ComplexVector) -> Result<ComplexMatrix> {
    if zeta.len() != eta.len() {
        return Err(Error::ShapeMismatch {
            left: (zeta.len(), 1),
            right: (eta.len(), 1),
        });
    }
    ComplexMatrix::new(zeta * eta.adjoint())
}

/// The four conditions compared by [`rank_one_equivalences`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RankOneEquivalences {
    /// `|[η, ξ]| = ‖η‖‖ξ‖`.
    pub vectors_parallel: bool,
    /// `ζ⊗η ∥ ζ⊗ξ`, for the drawn `ζ` and for `ζ = e₁`.
    pub tensors_parallel: bool,
    /// `η⊗ξ ∥ I`.
    pub parallel_to_identity: bool,
    /// Some `λ‖η‖‖ξ‖` with `|λ| = 1` is an eigenvalue of `η⊗ξ`.
    pub eigenvalue_condition: bool,
    pub borderline: bool,
}

impl RankOneEquivalences {
    pub fn all_agree(&self) -> bool {
        let v = self.vectors_parallel;
        self.tensors_parallel == v && self.parallel_to_identity == v && self.eigenvalue_condition == v
    }
}

/// Unit complex Gaussian vector drawn from `seed`.
fn seeded_vector(n: usize, seed: u64) -> ComplexVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let v = ComplexVector::from_fn(n, |_, _| {
            Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))
        });
        let norm = v.norm();
        if norm > 1e-8 {
            return v / Complex64::new(norm, 0.0);
        }
    }
}

/// Evaluates the four equivalent conditions for `η ∥ ξ` in `ℂⁿ`. The tensor
/// condition is tested with a `ζ` drawn from `cfg.seed` and with `ζ = e₁`;
/// if those disagree the result is flagged borderline.
pub fn rank_one_equivalences(eta: &ComplexVector, xi: &ComplexVector, cfg: &ToleranceConfig) -> Result<RankOneEquivalences> {
    if eta.len() != xi.len() {
        return Err(Error::ShapeMismatch {
            left: (eta.len(), 1),
            right: (xi.len(), 1),
        });
    }
    if eta.norm() == 0.0 || xi.norm() == 0.0 {
        return Err(Error::InvalidInput("rank-one equivalences need nonzero vectors".into()));
    }
    let n = eta.len();
    let product = eta.norm() * xi.norm();
    let vectors = cfg.judge(rel_gap(xi.dotc(eta).norm(), product));

    let mut e1 = ComplexVector::zeros(n);
    e1[0] = Complex64::new(1.0, 0.0);
    let drawn = seeded_vector(n, cfg.seed);
    let mut borderline = vectors.borderline;
    let mut tensor = Vec::with_capacity(2);
    for zeta in [&drawn, &e1] {
        let v = is_parallel(&rank_one(zeta, eta)?, &rank_one(zeta, xi)?, cfg)?;
        borderline |= v.borderline;
        tensor.push(v.parallel);
    }
    borderline |= tensor[0] != tensor[1];

    let eta_xi = rank_one(eta, xi)?;
    let identity = is_parallel(&eta_xi, &ComplexMatrix::identity(n), cfg)?;
    let eigen = eigen_criterion(&eta_xi, cfg)?;
    Ok(RankOneEquivalences {
        vectors_parallel: vectors.holds,
        tensors_parallel: tensor[0],
        parallel_to_identity: identity.parallel,
        eigenvalue_condition: eigen.decision.unwrap_or(false),
        borderline: borderline || identity.borderline || eigen.borderline,
    })
}

/// Result of [`block_parallel`].
#[derive(Debug, Clone, Serialize)]
pub struct BlockReport {
    /// Every `T` block is a nonzero positive matrix.
    pub applicable: bool,
    /// `diag(T₁,…) ∥ diag(S₁,…)` by the defect oracle.
    pub decision: bool,
    pub borderline: bool,
    /// The witness vector split along the blocks.
    #[serde(skip)]
    pub witness: Option<Vec<ComplexVector>>,
    /// `(Σ‖Tᵢξᵢ‖²)^{1/2} = maxᵢ‖Tᵢ‖` and `|Σ[Sᵢξᵢ, ξᵢ]| = maxᵢ‖Sᵢ‖`, checked
    /// on the witness when parallel.
    pub witness_conditions_hold: Option<bool>,
    /// The positive-operator criterion applied to the assembly.
    pub criterion: CriterionReport,
}

/// Parallelism of block-diagonal assemblies of positive `T` blocks.
pub fn block_parallel(ts: &[ComplexMatrix], ss: &[ComplexMatrix], cfg: &ToleranceConfig) -> Result<BlockReport> {
    if ts.len() != ss.len() || ts.is_empty() {
        return Err(Error::InvalidInput(format!(
            "need equally many nonempty block lists, got {} and {}",
            ts.len(),
            ss.len()
        )));
    }
    for (t, s) in ts.iter().zip(ss) {
        t.require_square()?;
        t.require_same_shape(s)?;
    }
    let applicable = ts.iter().all(|t| {
        let nt = operator_norm(t);
        let min_eig = hermitian_eigenvalues(t.as_matrix()).last().copied().unwrap_or(0.0);
        nt > 0.0 && t.is_hermitian(cfg.eq_rel * (1.0 + nt)) && min_eig >= -cfg.psd_floor * (1.0 + nt)
    });
    let dt = ComplexMatrix::block_diagonal(ts)?;
    let ds = ComplexMatrix::block_diagonal(ss)?;
    let verdict = is_parallel(&dt, &ds, cfg)?;
    let criterion = positive_criterion(&dt, &ds, cfg)?;

    let witness = verdict.witness_vector.as_ref().map(|xi| {
        let mut offset = 0;
        ts.iter()
            .map(|t| {
                let part = xi.rows(offset, t.rows()).into_owned();
                offset += t.rows();
                part
            })
            .collect::<Vec<_>>()
    });
    let witness_conditions_hold = witness.as_ref().map(|parts| {
        let max_t = ts.iter().map(operator_norm).fold(0.0, f64::max);
        let max_s = ss.iter().map(operator_norm).fold(0.0, f64::max);
        let mut t_energy = 0.0;
        let mut s_form = Complex64::new(0.0, 0.0);
        for ((t, s), part) in ts.iter().zip(ss).zip(parts) {
            t_energy += (t.as_matrix() * part).norm_squared();
            s_form += part.dotc(&(s.as_matrix() * part));
        }
        cfg.judge(rel_gap(t_energy.sqrt(), max_t)).holds && cfg.judge(rel_gap(s_form.norm(), max_s)).holds
    });
    Ok(BlockReport {
        applicable,
        decision: verdict.parallel,
        borderline: verdict.borderline,
        witness,
        witness_conditions_hold,
        criterion,
    })
}
