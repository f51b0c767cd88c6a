//! Birkhoff–James orthogonality `x ⊥ y` (`‖x‖ ≤ ‖x + γy‖` for every complex
//! `γ`), its state witnesses, and the bridge between parallelism and
//! orthogonality.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::config::ToleranceConfig;
use crate::error::{Error, Result};
use crate::linalg::{operator_norm, raw_norm, top_eigenspace, ComplexMatrix, ComplexVector, DensityState, PhaseAngle};
use crate::parallelism::{defect_oracle, is_parallel};
use crate::search::{brent_min, maximize_on_circle, maximize_on_circle_staged};

/// Result of [`bj_minimize`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BJVerdict {
    pub orthogonal: bool,
    pub minimizer_gamma: Complex64,
    /// `min_γ ‖x + γy‖`.
    pub min_norm: f64,
    pub borderline: bool,
}

/// Relative step at which the nested searches stop.
const FINE_XTOL: f64 = 1e-10;
/// Cheaper resolution used while scanning a coarse phase grid.
const COARSE_XTOL: f64 = 1e-4;

/// Minimizes the convex function `g(γ) = ‖x + γy‖` over complex `γ`.
///
/// The minimizer lies in `|γ| ≤ 2‖x‖/‖y‖` because `g(γ) ≥ |γ|‖y‖ − ‖x‖`.
/// Inside that square the search is nested: Brent's method over `Re γ`
/// of the exact Brent minimum over `Im γ`, which stays correct at the kinks
/// where coordinate descent on a nonsmooth convex function can stall. The
/// starting points `γ = 0` and the Frobenius projection
/// `γ = −tr(y*x)/tr(y*y)` are always compared against the search result.
///
/// The drop of `‖x + γy‖` below `‖x‖` is quadratic in how far `x` is from
/// orthogonal, so a verdict of orthogonal is also checked against
/// [`bj_state_witness`] and flagged borderline when no state certifies it.
pub fn bj_minimize(x: &ComplexMatrix, y: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<BJVerdict> {
    x.require_same_shape(y)?;
    let mut verdict = minimize_raw(x.as_matrix(), y.as_matrix(), cfg, FINE_XTOL);
    if verdict.orthogonal && !verdict.borderline && !y.is_zero() {
        match bj_state_witness(x, y, cfg) {
            Ok(_) => {}
            Err(Error::WitnessFailure(_)) => verdict.borderline = true,
            Err(e) => return Err(e),
        }
    }
    Ok(verdict)
}

fn minimize_raw(x: &DMatrix<Complex64>, y: &DMatrix<Complex64>, cfg: &ToleranceConfig, xtol_rel: f64) -> BJVerdict {
    let nx = raw_norm(x);
    let ny = raw_norm(y);
    let (gamma, min_norm) = if ny == 0.0 || nx == 0.0 {
        (Complex64::new(0.0, 0.0), nx)
    } else {
        let radius = 2.0 * nx / ny;
        let xtol = xtol_rel * radius;
        let g = |gamma: Complex64| raw_norm(&(x + y * gamma));
        let inner = |re: f64| brent_min(|im| g(Complex64::new(re, im)), -radius, radius, xtol);
        let (re, _) = brent_min(|re| inner(re).1, -radius, radius, xtol);
        let (im, value) = inner(re);

        let mut best = (Complex64::new(re, im), value);
        let tr_yy = y.iter().map(|z| z.norm_sqr()).sum::<f64>();
        let projection = -(y.adjoint() * x).trace() / tr_yy;
        let v = g(projection);
        if v < best.1 {
            best = (projection, v);
        }
        // minimizers need not be unique; γ = 0 wins any tie
        if nx <= best.1 * (1.0 + 4.0 * f64::EPSILON) {
            best = (Complex64::new(0.0, 0.0), nx);
        }
        best
    };
    let gap = (nx - min_norm).max(0.0) / (1.0 + nx);
    let j = cfg.judge(gap);
    BJVerdict {
        orthogonal: j.holds,
        minimizer_gamma: gamma,
        min_norm,
        borderline: j.borderline,
    }
}

/// Normalized orthogonality margin `(min_norm − ‖x‖)/(1 + ‖x‖)`: zero when
/// orthogonal, negative otherwise.
fn margin(x: &DMatrix<Complex64>, z: &DMatrix<Complex64>, cfg: &ToleranceConfig, xtol_rel: f64) -> f64 {
    let nx = raw_norm(x);
    (minimize_raw(x, z, cfg, xtol_rel).min_norm - nx) / (1.0 + nx)
}

/// A phase-dependent direction `a + e^{iθ}b`.
struct PhasedDirection {
    a: DMatrix<Complex64>,
    b: DMatrix<Complex64>,
    /// Frobenius size below which the direction counts as zero.
    zero_floor: f64,
}

impl PhasedDirection {
    fn new(a: DMatrix<Complex64>, b: DMatrix<Complex64>, cfg: &ToleranceConfig) -> Self {
        let zero_floor = cfg.eq_rel * (a.norm() + b.norm());
        Self { a, b, zero_floor }
    }

    fn at(&self, theta: f64) -> DMatrix<Complex64> {
        &self.a + &self.b * Complex64::from_polar(1.0, theta)
    }

    /// Phase minimizing the Frobenius norm of the direction, in closed form
    /// from `‖a + e^{iθ}b‖² = ‖a‖² + ‖b‖² + 2 Re(e^{iθ} tr(a*b))`.
    fn shortest_phase(&self) -> f64 {
        let c = (self.a.adjoint() * &self.b).trace();
        std::f64::consts::PI - c.arg()
    }

    fn vanishes(&self, z: &DMatrix<Complex64>) -> bool {
        z.norm() <= self.zero_floor
    }

    /// Orthogonality margin of `x` against the direction at `theta`. A
    /// direction that vanishes is the zero element, to which every `x` is
    /// orthogonal; near such a phase the margin is discontinuous, so grid
    /// scans alone would miss it.
    fn margin(&self, x: &DMatrix<Complex64>, theta: f64, cfg: &ToleranceConfig, xtol_rel: f64) -> f64 {
        let z = self.at(theta);
        if self.vanishes(&z) {
            0.0
        } else {
            margin(x, &z, cfg, xtol_rel)
        }
    }

    fn verdict(&self, x: &DMatrix<Complex64>, theta: f64, cfg: &ToleranceConfig) -> BJVerdict {
        let z = self.at(theta);
        if self.vanishes(&z) {
            minimize_raw(x, &DMatrix::zeros(x.nrows(), x.ncols()), cfg, FINE_XTOL)
        } else {
            minimize_raw(x, &z, cfg, FINE_XTOL)
        }
    }
}

/// Best phase for `fine`. Candidate phases are tried first and returned as
/// soon as one gives a clear (non-borderline) orthogonality; otherwise the
/// refined grid maximum competes with them.
fn best_phase<C, F>(coarse: C, fine: F, candidates: &[f64], cfg: &ToleranceConfig) -> PhaseAngle
where
    C: Fn(f64) -> f64,
    F: Fn(f64) -> f64,
{
    let clear = -cfg.eq_rel / cfg.decision_margin;
    let mut best = (0.0, f64::NEG_INFINITY);
    for &theta in candidates {
        let v = fine(theta);
        if v >= clear {
            return PhaseAngle::new(theta);
        }
        if v > best.1 {
            best = (theta, v);
        }
    }
    let sweep = maximize_on_circle_staged(coarse, &fine, cfg.bj_phase_grid, cfg.phase_refine);
    if sweep.value > best.1 {
        best = (sweep.theta, sweep.value);
    }
    PhaseAngle::new(best.0)
}

fn opposite(phase: PhaseAngle) -> f64 {
    phase.theta() + std::f64::consts::PI
}

/// Result of [`bj_bridge_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BridgeReport {
    /// `T ⊥ (‖S‖T + λ‖T‖S)` for the returned `λ`.
    pub bridge_holds: bool,
    pub lambda: PhaseAngle,
    /// `S ⊥ (‖T‖S + conj(λ)‖S‖T)` at the same `λ`.
    pub dual_holds: bool,
    pub borderline: bool,
}

/// Searches for a unimodular `λ` with `T ⊥ (‖S‖T + λ‖T‖S)`; such a `λ`
/// exists exactly when `T ∥ S`.
///
/// The search first tries `λ = −μ` for the phase `μ` maximizing
/// `‖T + μS‖`, where the orthogonality holds for parallel pairs, and the
/// phase at which the direction vanishes; the full phase sweep runs only
/// when neither settles the question.
pub fn bj_bridge_check(t: &ComplexMatrix, s: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<BridgeReport> {
    t.require_same_shape(s)?;
    let (tm, sm) = (t.as_matrix(), s.as_matrix());
    let (nt, ns) = (operator_norm(t), operator_norm(s));
    let primal = PhasedDirection::new(tm * Complex64::new(ns, 0.0), sm * Complex64::new(nt, 0.0), cfg);
    // conj(λ) times the primal direction, with the roles of T and S swapped
    let dual = PhasedDirection::new(sm * Complex64::new(nt, 0.0), tm * Complex64::new(ns, 0.0), cfg);

    let lambda = if t.is_zero() || s.is_zero() {
        PhaseAngle::ONE
    } else {
        best_phase(
            |th| primal.margin(tm, th, cfg, COARSE_XTOL),
            |th| primal.margin(tm, th, cfg, FINE_XTOL),
            &[opposite(defect_oracle(t, s, cfg)?.1), primal.shortest_phase()],
            cfg,
        )
    };
    let p = primal.verdict(tm, lambda.theta(), cfg);
    let d = dual.verdict(sm, lambda.conj().theta(), cfg);
    Ok(BridgeReport {
        bridge_holds: p.orthogonal,
        lambda,
        dual_holds: d.orthogonal,
        borderline: p.borderline,
    })
}

/// Result of [`parallel_consequence_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConsequenceReport {
    pub holds: bool,
    pub lambda: PhaseAngle,
    pub first_orthogonal: bool,
    pub second_orthogonal: bool,
    pub borderline: bool,
}

/// For a parallel pair, looks for one `λ` with both
/// `x ⊥ (‖y‖·x⟨x,x⟩ + λ‖x‖·x⟨x,y⟩)` and `y ⊥ (‖x‖·y⟨y,y⟩ + λ‖y‖·y⟨x,y⟩)`.
pub fn parallel_consequence_check(x: &ComplexMatrix, y: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<ConsequenceReport> {
    x.require_same_shape(y)?;
    x.require_square()?;
    let verdict = is_parallel(x, y, cfg)?;
    if !verdict.parallel {
        return Err(Error::InvalidInput("consequence check needs a parallel pair".into()));
    }
    let (xm, ym) = (x.as_matrix(), y.as_matrix());
    let (nx, ny) = (operator_norm(x), operator_norm(y));
    let xy = xm.adjoint() * ym;
    let first = PhasedDirection::new(
        xm * (xm.adjoint() * xm) * Complex64::new(ny, 0.0),
        xm * &xy * Complex64::new(nx, 0.0),
        cfg,
    );
    let second = PhasedDirection::new(
        ym * (ym.adjoint() * ym) * Complex64::new(nx, 0.0),
        ym * &xy * Complex64::new(ny, 0.0),
        cfg,
    );
    let both = |th: f64, tol: f64| first.margin(xm, th, cfg, tol).min(second.margin(ym, th, cfg, tol));

    let lambda = if x.is_zero() || y.is_zero() {
        PhaseAngle::ONE
    } else {
        best_phase(
            |th| both(th, COARSE_XTOL),
            |th| both(th, FINE_XTOL),
            &[opposite(verdict.best_phase), first.shortest_phase(), second.shortest_phase()],
            cfg,
        )
    };
    let a = first.verdict(xm, lambda.theta(), cfg);
    let b = second.verdict(ym, lambda.theta(), cfg);
    Ok(ConsequenceReport {
        holds: a.orthogonal && b.orthogonal,
        lambda,
        first_orthogonal: a.orthogonal,
        second_orthogonal: b.orthogonal,
        borderline: a.borderline || b.borderline,
    })
}

/// A density state `P` with `tr(P x*x) = ‖x‖²` and `tr(P x*y) = 0`.
///
/// `P` is built from unit vectors of the top eigenspace `E` of `x*x`: the
/// numerical range of the compression `C` of `x*y` to `E` is sampled along
/// its boundary, and a convex combination of at most three boundary points
/// equal to 0 gives the weights. Fails when 0 is not (within tolerance) in
/// the numerical range of `C`, which happens exactly when `x` is not
/// orthogonal to `y`.
pub fn bj_state_witness(x: &ComplexMatrix, y: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<DensityState> {
    x.require_same_shape(y)?;
    let n = x.cols();
    let nx = operator_norm(x);
    let ny = operator_norm(y);
    if nx == 0.0 {
        let mut e1 = ComplexVector::zeros(n);
        e1[0] = Complex64::new(1.0, 0.0);
        return DensityState::pure(&e1);
    }
    let gram = x.as_matrix().adjoint() * x.as_matrix();
    let (_, basis) = top_eigenspace(&gram, cfg.eq_rel * (1.0 + nx * nx));
    let compression = basis.adjoint() * (x.as_matrix().adjoint() * y.as_matrix()) * &basis;
    let tol = cfg.eq_rel * (1.0 + nx * ny);

    let (weights, local) = zero_in_numerical_range(&compression, tol, cfg).ok_or_else(|| {
        Error::WitnessFailure("0 is not in the numerical range of the compressed inner product".into())
    })?;
    let vectors: Vec<ComplexVector> = local.iter().map(|v| &basis * v).collect();
    DensityState::mixture(&weights, &vectors)
}

/// Finds weights and unit vectors `ξₖ` with `Σ wₖ ξₖ*Cξₖ ≈ 0`, or `None`
/// when 0 lies outside the numerical range of `C` by more than `tol`.
fn zero_in_numerical_range(c: &DMatrix<Complex64>, tol: f64, cfg: &ToleranceConfig) -> Option<(Vec<f64>, Vec<ComplexVector>)> {
    let k = c.nrows();
    if k == 1 {
        let one = ComplexVector::from_element(1, Complex64::new(1.0, 0.0));
        return (c[(0, 0)].norm() <= tol).then(|| (vec![1.0], vec![one]));
    }
    // 0 ∉ W(C) iff some support value is negative
    let support = |theta: f64| {
        let w = Complex64::from_polar(1.0, -theta);
        let a = c * w;
        let h = (&a + a.adjoint()) * Complex64::new(0.5, 0.0);
        h.symmetric_eigenvalues().iter().copied().fold(f64::NEG_INFINITY, f64::max)
    };
    let lowest = -maximize_on_circle(|t| -support(t), cfg.phase_grid, cfg.phase_refine).value;
    if lowest < -tol {
        return None;
    }

    let grid = cfg.phase_grid;
    let boundary: Vec<(Complex64, ComplexVector)> = (0..grid)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / grid as f64;
            let w = Complex64::from_polar(1.0, -theta);
            let a = c * w;
            let h = (&a + a.adjoint()) * Complex64::new(0.5, 0.0);
            let eig = crate::linalg::hermitian_eigen(&h);
            let xi = eig.vectors.column(0).into_owned();
            (xi.dotc(&(c * &xi)), xi)
        })
        .collect();

    if let Some((_, xi)) = boundary.iter().find(|(p, _)| p.norm() <= tol) {
        return Some((vec![1.0], vec![xi.clone()]));
    }
    // fan triangulation of the sampled (convex) boundary polygon
    let p0 = boundary[0].0;
    for j in 1..grid - 1 {
        let (p1, p2) = (boundary[j].0, boundary[j + 1].0);
        if let Some(bary) = barycentric(p0, p1, p2) {
            if bary.iter().all(|&w| w >= -1e-12) {
                let w: Vec<f64> = bary.iter().map(|w| w.max(0.0)).collect();
                return Some((w, vec![boundary[0].1.clone(), boundary[j].1.clone(), boundary[j + 1].1.clone()]));
            }
        }
    }
    // 0 on the boundary, between samples: closest point on a sampled edge
    let mut best: Option<(f64, usize, f64)> = None;
    for j in 0..grid {
        let (a, b) = (boundary[j].0, boundary[(j + 1) % grid].0);
        let d = b - a;
        let t = if d.norm_sqr() == 0.0 {
            0.0
        } else {
            (-(a.conj() * d).re / d.norm_sqr()).clamp(0.0, 1.0)
        };
        let dist = (a + d * t).norm();
        if best.is_none_or(|(bd, _, _)| dist < bd) {
            best = Some((dist, j, t));
        }
    }
    let (dist, j, t) = best?;
    (dist <= tol).then(|| {
        (
            vec![1.0 - t, t],
            vec![boundary[j].1.clone(), boundary[(j + 1) % grid].1.clone()],
        )
    })
}

/// Barycentric coordinates of 0 in the triangle `(a, b, c)`.
fn barycentric(a: Complex64, b: Complex64, c: Complex64) -> Option<[f64; 3]> {
    let cross = |u: Complex64, v: Complex64| u.re * v.im - u.im * v.re;
    let area = cross(b - a, c - a);
    if area.abs() < 1e-300 {
        return None;
    }
    let wb = cross(-a, c - a) / area;
    let wc = cross(b - a, -a) / area;
    Some([1.0 - wb - wc, wb, wc])
}
