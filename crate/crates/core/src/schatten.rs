//! Parallelism in the Schatten `p`-norms: the brute-force phase oracle, the
//! trace condition, and the derivative of `t ↦ ‖T + tS‖_p^p`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::config::{rel_gap, ToleranceConfig};
use crate::error::{Error, Result};
use crate::linalg::{polar_decompose, psd_power, raw_schatten, singular_values, ComplexMatrix, PhaseAngle};
use crate::parallelism::{phase_sweep, CriterionReport};

/// Smallest singular value, relative to the largest, for the `p = 1` path.
const INVERTIBLE_REL: f64 = 1e-6;

fn check_exponent(p: f64, min: f64) -> Result<()> {
    if p.is_finite() && p >= min {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("Schatten exponent must be in [{min}, ∞), got {p}")))
    }
}

/// `max_θ ‖T + e^{iθ}S‖_p − ‖T‖_p − ‖S‖_p` and the maximizing phase; the
/// zero convention of the operator-norm oracle applies.
pub fn schatten_defect_oracle(t: &ComplexMatrix, s: &ComplexMatrix, p: f64, cfg: &ToleranceConfig) -> Result<(f64, PhaseAngle)> {
    t.require_same_shape(s)?;
    check_exponent(p, 1.0)?;
    if t.is_zero() || s.is_zero() {
        return Ok((0.0, PhaseAngle::ONE));
    }
    let (max, phase) = phase_sweep(t, s, cfg, |m| raw_schatten(m, p));
    Ok((max - raw_schatten(t.as_matrix(), p) - raw_schatten(s.as_matrix(), p), phase))
}

/// `‖T‖_p |tr(|T|^{p−1}U*S)|` and `‖S‖_p tr(|T|^p)` for `T = U|T|`.
fn trace_sides(t: &ComplexMatrix, s: &ComplexMatrix, p: f64, cfg: &ToleranceConfig) -> Result<(f64, f64)> {
    let polar = polar_decompose(t)?;
    let modulus = polar.modulus.as_matrix();
    let weight = psd_power(modulus, p - 1.0, cfg.psd_floor);
    let lhs_trace = (&weight * polar.unitary_factor.as_matrix().adjoint() * s.as_matrix()).trace();
    let power_trace = psd_power(modulus, p, cfg.psd_floor).trace().re;
    Ok((
        raw_schatten(t.as_matrix(), p) * lhs_trace.norm(),
        raw_schatten(s.as_matrix(), p) * power_trace,
    ))
}

fn relative_floor(m: &ComplexMatrix) -> f64 {
    let sv = singular_values(m);
    let top = sv.first().copied().unwrap_or(0.0);
    let bottom = sv.last().copied().unwrap_or(0.0);
    if top == 0.0 {
        0.0
    } else {
        bottom / top
    }
}

/// Decides `T ∥ S` in `‖·‖_p` through
/// `‖T‖_p |tr(|T|^{p−1}U*S)| = ‖S‖_p tr(|T|^p)`, and reports the mirrored
/// condition with the roles of `T` and `S` exchanged as diagnostics.
///
/// For `p = 1` both matrices must be invertible (smallest singular value at
/// least `1e-6` times the largest); otherwise the report is not applicable.
/// A zero operand decides true.
pub fn schatten_trace_criterion(t: &ComplexMatrix, s: &ComplexMatrix, p: f64, cfg: &ToleranceConfig) -> Result<CriterionReport> {
    const NAME: &str = "schatten-trace";
    t.require_same_shape(s)?;
    t.require_square()?;
    check_exponent(p, 1.0)?;
    let mut d = BTreeMap::new();
    d.insert("p".to_string(), p);
    if p == 1.0 {
        let (ft, fs) = (relative_floor(t), relative_floor(s));
        d.insert("t_relative_floor".into(), ft);
        d.insert("s_relative_floor".into(), fs);
        if ft < INVERTIBLE_REL || fs < INVERTIBLE_REL {
            return Ok(CriterionReport::not_applicable(NAME, d));
        }
    }
    if t.is_zero() || s.is_zero() {
        return Ok(CriterionReport::decided(NAME, 0.0, cfg, d));
    }
    let (lhs, rhs) = trace_sides(t, s, p, cfg)?;
    let (dual_lhs, dual_rhs) = trace_sides(s, t, p, cfg)?;
    let dual_gap = rel_gap(dual_lhs, dual_rhs);
    d.insert("lhs".into(), lhs);
    d.insert("rhs".into(), rhs);
    d.insert("dual_lhs".into(), dual_lhs);
    d.insert("dual_rhs".into(), dual_rhs);
    d.insert("dual_gap".into(), dual_gap);
    d.insert("dual_holds".into(), if cfg.judge(dual_gap).holds { 1.0 } else { 0.0 });
    Ok(CriterionReport::decided(NAME, rel_gap(lhs, rhs), cfg, d))
}

/// Derivative of `t ↦ ‖T + tS‖_p^p` at 0, analytically as
/// `p·Re tr(|T|^{p−1}U*S)` and by a central difference with step
/// `1e-5·(1 + ‖T‖_p)/(1 + ‖S‖_p)`. Returns `(analytic, numeric, rel_err)`
/// with `rel_err = |a − n| / max(|a|, |n|)` (0 when both vanish).
pub fn frechet_derivative_check(t: &ComplexMatrix, s: &ComplexMatrix, p: f64, cfg: &ToleranceConfig) -> Result<(f64, f64, f64)> {
    t.require_same_shape(s)?;
    t.require_square()?;
    if !(p.is_finite() && p > 1.0) {
        return Err(Error::InvalidInput(format!("derivative check needs p > 1, got {p}")));
    }
    let polar = polar_decompose(t)?;
    let weight = psd_power(polar.modulus.as_matrix(), p - 1.0, cfg.psd_floor);
    let analytic = p * (&weight * polar.unitary_factor.as_matrix().adjoint() * s.as_matrix()).trace().re;

    let (tm, sm) = (t.as_matrix(), s.as_matrix());
    let h = 1e-5 * (1.0 + raw_schatten(tm, p)) / (1.0 + raw_schatten(sm, p));
    let power_norm = |step: f64| -> f64 {
        let m: DMatrix<Complex64> = tm + sm * Complex64::new(step, 0.0);
        raw_schatten(&m, p).powf(p)
    };
    let numeric = (power_norm(h) - power_norm(-h)) / (2.0 * h);
    let scale = analytic.abs().max(numeric.abs());
    let rel_err = if scale == 0.0 { 0.0 } else { (analytic - numeric).abs() / scale };
    Ok((analytic, numeric, rel_err))
}
