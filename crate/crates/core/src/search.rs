//! One-dimensional search routines: golden-section maximization, Brent
//! minimization, and a grid-then-refine maximizer over the unit circle.

use std::f64::consts::TAU;

const INV_PHI: f64 = 0.618_033_988_749_894_9;
const CGOLD: f64 = 0.381_966_011_250_105_1;

/// Golden-section search for a maximum of `f` on `[lo, hi]`, stopping once
/// the bracket is narrower than `tol`. Returns `(x, f(x))`.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Brent's method (golden section with parabolic steps) for a minimum of `f`
/// on `[a, b]`. Converges to `xtol` absolute; returns `(x, f(x))`.
pub fn brent_min<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, xtol: f64) -> (f64, f64) {
    let mut x = a + CGOLD * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = f(x);
    let (mut fw, mut fv) = (fx, fx);
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;

    for _ in 0..200 {
        let xm = 0.5 * (a + b);
        let tol1 = xtol + 1e-12 * x.abs();
        let tol2 = 2.0 * tol1;
        if (x - xm).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let etemp = e;
            e = d;
            if p.abs() < (0.5 * q * etemp).abs() && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = tol1.copysign(xm - x);
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= xm { a - x } else { b - x };
            d = CGOLD * e;
        }
        let u = if d.abs() >= tol1 { x + d } else { x + tol1.copysign(d) };
        let fu = f(u);
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    (x, fx)
}

/// Best point found by [`maximize_on_circle`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleMax {
    /// Angle in `[0, 2π)`.
    pub theta: f64,
    pub value: f64,
}

/// Local maxima of the coarse grid kept for refinement.
const MAX_REFINED_PEAKS: usize = 8;
/// Peaks whose coarse value is within this relative distance of the best
/// coarse value are refined.
const PEAK_KEEP_REL: f64 = 1e-3;

/// Maximizes a `2π`-periodic function: sample `grid` equally spaced angles,
/// then refine every competitive grid-local maximum by golden section down
/// to `refine` radians.
pub fn maximize_on_circle<F: Fn(f64) -> f64>(f: F, grid: usize, refine: f64) -> CircleMax {
    maximize_on_circle_staged(&f, &f, grid, refine)
}

/// As [`maximize_on_circle`], but the coarse grid is scanned with a cheap
/// approximation `coarse` while refinement and the final comparison use
/// `fine`.
pub fn maximize_on_circle_staged<C, F>(coarse: C, fine: F, grid: usize, refine: f64) -> CircleMax
where
    C: Fn(f64) -> f64,
    F: Fn(f64) -> f64,
{
    let step = TAU / grid as f64;
    let values: Vec<f64> = (0..grid).map(|k| coarse(k as f64 * step)).collect();

    let (best_k, best) = values
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (k, v)| if v > acc.1 { (k, v) } else { acc });

    let keep = best - PEAK_KEEP_REL * (1.0 + best.abs());
    let mut peaks: Vec<usize> = (0..grid)
        .filter(|&k| {
            let prev = values[(k + grid - 1) % grid];
            let next = values[(k + 1) % grid];
            values[k] >= prev && values[k] >= next && values[k] >= keep
        })
        .collect();
    // stable: ties keep index order, so the result is deterministic
    peaks.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap_or(std::cmp::Ordering::Equal));
    peaks.truncate(MAX_REFINED_PEAKS);
    if !peaks.contains(&best_k) {
        peaks.insert(0, best_k);
    }

    let theta0 = best_k as f64 * step;
    let mut out = CircleMax {
        theta: theta0,
        value: fine(theta0),
    };
    for k in peaks {
        let center = k as f64 * step;
        let (theta, value) = golden_max(&fine, center - step, center + step, refine);
        if value > out.value {
            out = CircleMax { theta, value };
        }
    }
    out.theta = normalize_angle(out.theta);
    out
}

/// Maps any angle into `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, fx) = golden_max(|x| -(x - 0.3) * (x - 0.3), -1.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-9);
        assert!(fx.abs() < 1e-18);
    }

    #[test]
    fn brent_handles_kinks() {
        let (x, fx) = brent_min(|x| (x - 0.7).abs() + 1.0, -3.0, 3.0, 1e-12);
        assert!((x - 0.7).abs() < 1e-10, "{x}");
        assert!((fx - 1.0).abs() < 1e-10);
        let (x, _) = brent_min(|x| (x + 1.25).powi(2), -3.0, 3.0, 1e-12);
        assert!((x + 1.25).abs() < 1e-9);
    }

    #[test]
    fn circle_max_picks_global_peak() {
        // two peaks of nearly equal height; the taller is narrow
        let f = |t: f64| (t - 1.0).cos() + 2.5 * (-(((t - 4.0) * 30.0).powi(2))).exp();
        let m = maximize_on_circle(f, 1024, 1e-10);
        assert!((m.theta - 4.0).abs() < 1e-3, "{m:?}");
    }

    #[test]
    fn circle_max_wraps_around_zero() {
        let m = maximize_on_circle(|t| (t + 0.01).cos(), 1024, 1e-10);
        // a smooth peak pins its argmax only to about sqrt(machine epsilon)
        assert!((m.theta - (TAU - 0.01)).abs() < 1e-7, "{m:?}");
        assert!((m.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn angles_normalize() {
        assert_eq!(normalize_angle(-TAU), 0.0);
        assert!((normalize_angle(-0.5) - (TAU - 0.5)).abs() < 1e-15);
    }
}
