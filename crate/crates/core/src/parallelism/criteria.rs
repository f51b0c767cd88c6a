//! One decision procedure per characterization of `T ∥ S`. Each returns a
//! [`CriterionReport`] carrying the quantities it compared.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::CriterionReport;
use crate::config::{rel_gap, ToleranceConfig};
use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigenvalues, operator_norm, polar_decompose, raw_numerical_radius, spectral_radius, top_eigenspace,
    ComplexMatrix,
};
use crate::search::maximize_on_circle;

fn diags<const N: usize>(pairs: [(&str, f64); N]) -> BTreeMap<String, f64> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// `r(T*S) = ‖T*S‖ = ‖T‖‖S‖`.
pub fn spectral_criterion(t: &ComplexMatrix, s: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<CriterionReport> {
    let gram = t.inner(s)?;
    let r = spectral_radius(&gram)?;
    let n = operator_norm(&gram);
    let p = operator_norm(t) * operator_norm(s);
    let gap = rel_gap(r, n).max(rel_gap(n, p));
    Ok(CriterionReport::decided(
        "spectral",
        gap,
        cfg,
        diags([("spectral_radius", r), ("inner_norm", n), ("norm_product", p)]),
    ))
}

/// When `x*y` is normal: `x ∥ y ⇔ ‖x*y‖ = ‖x‖‖y‖`.
pub fn normal_criterion(x: &ComplexMatrix, y: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<CriterionReport> {
    let inner = x.inner(y)?;
    let n = operator_norm(&inner);
    let a = inner.as_matrix();
    let commutator = operator_norm(&ComplexMatrix::wrap(a * a.adjoint() - a.adjoint() * a));
    let p = operator_norm(x) * operator_norm(y);
    let d = diags([("commutator_norm", commutator), ("inner_norm", n), ("norm_product", p)]);
    if commutator > cfg.eq_rel * (1.0 + n * n) {
        return Ok(CriterionReport::not_applicable("normal", d));
    }
    Ok(CriterionReport::decided("normal", rel_gap(n, p), cfg, d))
}

fn is_isometry(y: &ComplexMatrix, cfg: &ToleranceConfig) -> bool {
    let g = y.as_matrix().adjoint() * y.as_matrix();
    let dev = ComplexMatrix::wrap(&g - nalgebra::DMatrix::identity(g.nrows(), g.ncols()));
    operator_norm(&dev) <= cfg.eq_rel * (2.0 + operator_norm(&ComplexMatrix::wrap(g)))
}

/// For `y*y = I`: `x ∥ y` iff `x*x − 2‖x‖Re(λx*y) + ‖x‖²I` is singular for
/// some unimodular `λ`, where `Re(a) = (a + a*)/2`.
pub fn singularity_criterion(x: &ComplexMatrix, y: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<CriterionReport> {
    x.require_square()?;
    x.require_same_shape(y)?;
    if !is_isometry(y, cfg) {
        return Ok(CriterionReport::not_applicable("singularity", BTreeMap::new()));
    }
    let nx = operator_norm(x);
    let xx = x.as_matrix().adjoint() * x.as_matrix();
    let xy = x.as_matrix().adjoint() * y.as_matrix();
    let shift = nalgebra::DMatrix::<Complex64>::identity(xx.nrows(), xx.ncols()) * Complex64::new(nx * nx, 0.0);
    let min_eig = |theta: f64| {
        let a = &xy * Complex64::from_polar(nx, theta);
        let h = &xx - (&a + a.adjoint()) + &shift;
        hermitian_eigenvalues(&h).last().copied().unwrap_or(0.0)
    };
    let best = maximize_on_circle(|t| -min_eig(t), cfg.phase_grid, cfg.phase_refine);
    let smallest = -best.value;
    let gap = smallest.max(0.0) / (1.0 + nx * nx);
    Ok(CriterionReport::decided(
        "singularity",
        gap,
        cfg,
        diags([("min_eigenvalue", smallest), ("best_theta", best.theta)]),
    ))
}

/// Diagonal `a`, `b` with `|b|² = I`: `a ∥ b` iff `a − λ‖a‖b` is singular
/// for some unimodular `λ`.
pub fn commutative_criterion(a: &ComplexMatrix, b: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<CriterionReport> {
    a.require_same_shape(b)?;
    let off_tol = cfg.eq_rel * (1.0 + a.max_abs_entry().max(b.max_abs_entry()));
    if !a.is_diagonal(off_tol) || !b.is_diagonal(off_tol) {
        return Err(Error::InvalidInput("commutative criterion needs diagonal matrices".into()));
    }
    let isometric = b.diagonal().iter().all(|z| cfg.approx_eq(z.norm_sqr(), 1.0));
    if !isometric {
        return Ok(CriterionReport::not_applicable("commutative", BTreeMap::new()));
    }
    let na = operator_norm(a);
    let (am, bm) = (a.as_matrix(), b.as_matrix());
    let smallest_sv = |theta: f64| {
        let m = am - bm * Complex64::from_polar(na, theta);
        m.singular_values_unordered().iter().copied().fold(f64::INFINITY, f64::min)
    };
    // singular only where some a_j = λ‖a‖b_j, so those phases are exact
    // candidates; the sweep alone can miss one of two nearly equal dips
    let sweep = maximize_on_circle(|t| -smallest_sv(t), cfg.phase_grid, cfg.phase_refine);
    let (best_theta, smallest) = a
        .diagonal()
        .iter()
        .zip(b.diagonal().iter())
        .map(|(x, y)| (x / y).arg())
        .map(|theta| (theta, smallest_sv(theta)))
        .fold((sweep.theta, -sweep.value), |best, cand| if cand.1 < best.1 { cand } else { best });
    Ok(CriterionReport::decided(
        "commutative",
        smallest / (1.0 + na),
        cfg,
        diags([("min_singular_value", smallest), ("best_theta", best_theta)]),
    ))
}

/// `T ∥ I` iff `λ‖T‖` is an eigenvalue of `T` for some unimodular `λ`,
/// i.e. `r(T) = ‖T‖`.
pub fn eigen_criterion(t: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<CriterionReport> {
    t.require_square()?;
    let r = spectral_radius(t)?;
    let n = operator_norm(t);
    // |T| always has ‖T‖ as its top eigenvalue; reported as a sanity figure
    let modulus = polar_decompose(t)?.modulus;
    let modulus_top = hermitian_eigenvalues(modulus.as_matrix())[0];
    Ok(CriterionReport::decided(
        "eigen",
        rel_gap(r, n),
        cfg,
        diags([
            ("spectral_radius", r),
            ("operator_norm", n),
            ("modulus_top_eigenvalue", modulus_top),
            ("modulus_gap", rel_gap(modulus_top, n)),
        ]),
    ))
}

/// Positive `T`: `T ∥ S` iff some unit `ξ` with `Tξ = ‖T‖ξ` has
/// `|[Sξ, ξ]| = ‖S‖`. The maximum of `|[Sξ, ξ]|` over the top eigenspace is
/// the numerical radius of the compression of `S` to it.
pub fn positive_criterion(t: &ComplexMatrix, s: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<CriterionReport> {
    t.require_square()?;
    t.require_same_shape(s)?;
    let nt = operator_norm(t);
    let ns = operator_norm(s);
    let min_eig = hermitian_eigenvalues(t.as_matrix()).last().copied().unwrap_or(0.0);
    if !t.is_hermitian(cfg.eq_rel) || min_eig < -cfg.psd_floor * (1.0 + nt) {
        return Ok(CriterionReport::not_applicable(
            "positive",
            diags([("min_eigenvalue", min_eig)]),
        ));
    }
    compressed_radius_report("positive", t.as_matrix(), nt, s.as_matrix(), ns, cfg, |top| {
        cfg.eq_rel * (1.0 + top)
    })
}

/// `T ∥ S` iff some unit `ξ` with `T*Tξ = ‖T‖²ξ` has `|[Tξ, Sξ]| = ‖T‖‖S‖`;
/// the maximum over the top eigenspace of `T*T` is the numerical radius of
/// the compression of `T*S`.
pub fn gram_criterion(t: &ComplexMatrix, s: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<CriterionReport> {
    t.require_same_shape(s)?;
    let gram = t.as_matrix().adjoint() * t.as_matrix();
    let cross = t.as_matrix().adjoint() * s.as_matrix();
    let nt = operator_norm(t);
    let ns = operator_norm(s);
    compressed_radius_report("gram", &gram, nt * nt, &cross, nt * ns, cfg, |top| cfg.eq_rel * (1.0 + top))
}

/// Shared tail of the positive and Gram criteria: numerical radius of the
/// compression of `target` to the top eigenspace of the Hermitian `h`,
/// compared with `expected`.
fn compressed_radius_report(
    name: &str,
    h: &nalgebra::DMatrix<Complex64>,
    h_norm: f64,
    target: &nalgebra::DMatrix<Complex64>,
    expected: f64,
    cfg: &ToleranceConfig,
    cluster_tol: impl Fn(f64) -> f64,
) -> Result<CriterionReport> {
    if h_norm == 0.0 || expected == 0.0 {
        // a zero operand is parallel to everything
        return Ok(CriterionReport::decided(name, 0.0, cfg, diags([("eigenspace_dim", h.nrows() as f64)])));
    }
    let (top, basis) = top_eigenspace(h, cluster_tol(h_norm));
    let compression = basis.adjoint() * target * &basis;
    let (radius, _) = raw_numerical_radius(&compression, cfg);
    Ok(CriterionReport::decided(
        name,
        rel_gap(radius, expected),
        cfg,
        diags([
            ("eigenspace_dim", basis.ncols() as f64),
            ("top_eigenvalue", top),
            ("compressed_radius", radius),
            ("expected", expected),
        ]),
    ))
}
