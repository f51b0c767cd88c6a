//! Norm-parallelism `T ∥ S` in the operator norm: the brute-force phase
//! oracle, witness extraction, and one decision procedure per
//! characterization (see [`criteria`]).

mod criteria;

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

pub use criteria::{
    commutative_criterion, eigen_criterion, gram_criterion, normal_criterion, positive_criterion,
    singularity_criterion, spectral_criterion,
};

use crate::config::{rel_gap, ToleranceConfig};
use crate::error::{Error, Result};
use crate::linalg::{bracket, operator_norm, raw_norm, ComplexMatrix, ComplexVector, DensityState, PhaseAngle};
use crate::search::maximize_on_circle;

/// Result of [`is_parallel`].
#[derive(Debug, Clone, Serialize)]
pub struct ParallelVerdict {
    pub parallel: bool,
    pub best_phase: PhaseAngle,
    /// `max_λ ‖T + λS‖ − ‖T‖ − ‖S‖`, nonpositive up to rounding.
    pub defect: f64,
    pub borderline: bool,
    #[serde(serialize_with = "crate::interchange::serialize_opt_vector")]
    pub witness_vector: Option<ComplexVector>,
    pub witness_state: Option<DensityState>,
}

/// Outcome of one characterization applied to a pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub criterion: String,
    pub applicable: bool,
    /// `None` exactly when the criterion is not applicable.
    pub decision: Option<bool>,
    pub borderline: bool,
    pub diagnostics: BTreeMap<String, f64>,
}

impl CriterionReport {
    pub(crate) fn decided(name: &str, gap: f64, cfg: &ToleranceConfig, mut diagnostics: BTreeMap<String, f64>) -> Self {
        let j = cfg.judge(gap);
        diagnostics.insert("gap".into(), gap);
        Self {
            criterion: name.into(),
            applicable: true,
            decision: Some(j.holds),
            borderline: j.borderline,
            diagnostics,
        }
    }

    pub(crate) fn not_applicable(name: &str, diagnostics: BTreeMap<String, f64>) -> Self {
        Self {
            criterion: name.into(),
            applicable: false,
            decision: None,
            borderline: false,
            diagnostics,
        }
    }

    pub fn diagnostic(&self, key: &str) -> Option<f64> {
        self.diagnostics.get(key).copied()
    }
}

/// Maximizes `θ ↦ norm(T + e^{iθ}S)` over the phase grid and returns the
/// maximum with its phase. Shared with the Schatten oracle.
pub(crate) fn phase_sweep<F>(t: &ComplexMatrix, s: &ComplexMatrix, cfg: &ToleranceConfig, norm: F) -> (f64, PhaseAngle)
where
    F: Fn(&nalgebra::DMatrix<Complex64>) -> f64,
{
    let (tm, sm) = (t.as_matrix(), s.as_matrix());
    let best = maximize_on_circle(
        |theta| norm(&(tm + sm * Complex64::from_polar(1.0, theta))),
        cfg.phase_grid,
        cfg.phase_refine,
    );
    (best.value, PhaseAngle::new(best.theta))
}

/// `max_θ ‖T + e^{iθ}S‖ − ‖T‖ − ‖S‖` and the maximizing phase.
///
/// When either matrix is zero the defining equation holds for every phase;
/// the result is then `(0, λ = 1)`.
pub fn defect_oracle(t: &ComplexMatrix, s: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<(f64, PhaseAngle)> {
    t.require_same_shape(s)?;
    if t.is_zero() || s.is_zero() {
        return Ok((0.0, PhaseAngle::ONE));
    }
    let (max, phase) = phase_sweep(t, s, cfg, raw_norm);
    Ok((max - operator_norm(t) - operator_norm(s), phase))
}

/// Decides `T ∥ S` from the defect oracle and, when parallel, extracts the
/// unit-vector and density-state witnesses.
pub fn is_parallel(t: &ComplexMatrix, s: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<ParallelVerdict> {
    let (defect, best_phase) = defect_oracle(t, s, cfg)?;
    let scale = 1.0 + operator_norm(t) + operator_norm(s);
    let j = cfg.judge(defect / scale);
    let mut verdict = ParallelVerdict {
        parallel: j.holds,
        best_phase,
        defect,
        borderline: j.borderline,
        witness_vector: None,
        witness_state: None,
    };
    if verdict.parallel {
        match witness_vector(t, s, best_phase, cfg) {
            Ok(xi) => {
                verdict.witness_state = Some(witness_state(t, s, &xi, cfg)?);
                verdict.witness_vector = Some(xi);
            }
            // the defect is inside tolerance but no vector certifies it
            Err(Error::WitnessFailure(_)) => verdict.borderline = true,
            Err(e) => return Err(e),
        }
    }
    Ok(verdict)
}

/// Largest relative gap among `‖Tξ‖ = ‖T‖`, `‖Sξ‖ = ‖S‖` and
/// `|[Tξ, Sξ]| = ‖T‖‖S‖`.
pub fn witness_gap(t: &ComplexMatrix, s: &ComplexMatrix, xi: &ComplexVector) -> Result<f64> {
    let (nt, ns) = (operator_norm(t), operator_norm(s));
    let (txi, sxi) = (t.apply(xi)?, s.apply(xi)?);
    Ok(rel_gap(txi.norm(), nt)
        .max(rel_gap(sxi.norm(), ns))
        .max(rel_gap(bracket(&txi, &sxi).norm(), nt * ns)))
}

/// A unit vector `ξ` with `‖Tξ‖ = ‖T‖`, `‖Sξ‖ = ‖S‖` and
/// `|[Tξ, Sξ]| = ‖T‖‖S‖`, taken from the top right-singular subspace of
/// `T + λS` at the optimal phase.
pub fn witness_vector(t: &ComplexMatrix, s: &ComplexMatrix, best_phase: PhaseAngle, cfg: &ToleranceConfig) -> Result<ComplexVector> {
    t.require_same_shape(s)?;
    let combined = t.add_scaled(best_phase.value(), s)?;
    let svd = combined.as_matrix().clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let top = svd.singular_values.iter().copied().fold(0.0, f64::max);

    let mut candidates: Vec<(f64, usize)> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &sv)| top - sv <= cfg.eq_rel * (1.0 + top))
        .map(|(k, &sv)| (sv, k))
        .collect();
    candidates.sort_by(|a, b| b.0.total_cmp(&a.0));

    let mut best_gap = f64::INFINITY;
    for (_, k) in candidates {
        let xi: ComplexVector = v_t.row(k).adjoint();
        let gap = witness_gap(t, s, &xi)?;
        if gap <= cfg.eq_rel {
            return Ok(xi);
        }
        best_gap = best_gap.min(gap);
    }
    Err(Error::WitnessFailure(format!(
        "no vector in the top singular subspace satisfies the witness equalities (gap {best_gap:.3e})"
    )))
}

/// The pure state `P = ξξ*`, checked to satisfy `|tr(P T*S)| = ‖T‖‖S‖`.
pub fn witness_state(t: &ComplexMatrix, s: &ComplexMatrix, xi: &ComplexVector, cfg: &ToleranceConfig) -> Result<DensityState> {
    let p = DensityState::pure(xi)?;
    let value = p.expectation(&t.inner(s)?)?.norm();
    let target = operator_norm(t) * operator_norm(s);
    if !cfg.approx_eq(value, target) {
        return Err(Error::InvalidWitness(format!(
            "|tr(P T*S)| = {value:.12} but ‖T‖‖S‖ = {target:.12}"
        )));
    }
    Ok(p)
}
