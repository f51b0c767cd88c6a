//! Fixtures, generators and independent oracles shared by the integration
//! tests. The oracles here deliberately avoid the library's own search code.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use normpar::harness::{sample, Ensemble, EnsembleKind, Sample};
use normpar::{Complex64, ComplexMatrix};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn real(rows: &[&[f64]]) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(rows).unwrap()
}

/// The three matrices of the worked example.
pub fn example_a() -> ComplexMatrix {
    real(&[&[1.0, 1.0], &[0.0, 0.0]])
}

pub fn example_b() -> ComplexMatrix {
    real(&[&[2.0, 5.0], &[5.0, 0.0]])
}

pub fn example_c() -> ComplexMatrix {
    ComplexMatrix::from_real_diagonal(&[1.0, -1.0]).unwrap()
}

/// Nilpotent Jordan block with ones on the superdiagonal.
pub fn jordan_block(n: usize) -> ComplexMatrix {
    let m = DMatrix::from_fn(n, n, |i, j| if j == i + 1 { c(1.0, 0.0) } else { c(0.0, 0.0) });
    ComplexMatrix::new(m).unwrap()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

pub fn single(kind: EnsembleKind, dim: usize, seed: u64) -> ComplexMatrix {
    match sample(&Ensemble::new(kind, dim, seed)).unwrap() {
        Sample::Single(m) => m,
        Sample::Pair(..) => panic!("{kind} draws pairs"),
    }
}

pub fn pair(kind: EnsembleKind, dim: usize, seed: u64) -> (ComplexMatrix, ComplexMatrix) {
    match sample(&Ensemble::new(kind, dim, seed)).unwrap() {
        Sample::Pair(t, s) => (t, s),
        Sample::Single(_) => panic!("{kind} draws single matrices"),
    }
}

/// Two independent generic draws.
pub fn generic_pair(dim: usize, seed: u64) -> (ComplexMatrix, ComplexMatrix) {
    (
        single(EnsembleKind::Generic, dim, seed),
        single(EnsembleKind::Generic, dim, seed ^ 0x9e37_79b9_7f4a_7c15),
    )
}

fn entries(n: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), n * n)
}

/// Square complex matrices of size 2 to 4 with bounded entries.
pub fn square() -> impl Strategy<Value = ComplexMatrix> {
    (2usize..=4).prop_flat_map(square_of)
}

pub fn square_of(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    entries(n).prop_map(move |e| {
        ComplexMatrix::from_row_major(n, n, e.into_iter().map(|(re, im)| c(re, im)).collect()).unwrap()
    })
}

pub fn square_pair() -> impl Strategy<Value = (ComplexMatrix, ComplexMatrix)> {
    (2usize..=4).prop_flat_map(|n| (square_of(n), square_of(n)))
}

pub fn unit_vector(n: usize) -> impl Strategy<Value = DVector<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
        .prop_filter("nonzero", |v| v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3)
        .prop_map(|v| {
            let v = DVector::from_iterator(v.len(), v.into_iter().map(|(re, im)| c(re, im)));
            let n = v.norm();
            v / c(n, 0.0)
        })
}

/// `‖M‖` by power iteration on `M*M` from several fixed starts.
pub fn power_norm(m: &DMatrix<Complex64>) -> f64 {
    let g = m.adjoint() * m;
    let n = g.ncols();
    let mut best = 0.0f64;
    for start in 0..n.min(3) {
        let mut v = DVector::from_fn(n, |i, _| c(1.0 + ((i + start) % n) as f64, 0.3 * i as f64 - start as f64));
        let mut value = 0.0;
        for _ in 0..5000 {
            let w = &g * &v;
            let norm = w.norm();
            if norm == 0.0 {
                break;
            }
            v = w / c(norm, 0.0);
            let next = v.dotc(&(&g * &v)).re;
            if (next - value).abs() <= 1e-15 * next.abs() {
                value = next;
                break;
            }
            value = next;
        }
        best = best.max(value);
    }
    best.max(0.0).sqrt()
}

/// `min_γ ‖x + γy‖` over the disk `|γ| ≤ 2‖x‖/‖y‖` by a zooming grid.
/// The objective is convex, so each zoom keeps the minimizer in its window.
pub fn grid_min_norm(x: &DMatrix<Complex64>, y: &DMatrix<Complex64>) -> f64 {
    let g = |re: f64, im: f64| (x + y * c(re, im)).singular_values().max();
    let radius = 2.0 * g(0.0, 0.0) / y.singular_values().max();
    let (mut cx, mut cy, mut half) = (0.0, 0.0, radius);
    let steps = 24;
    let mut best = g(0.0, 0.0);
    while half > 1e-12 * (1.0 + radius) {
        let h = 2.0 * half / steps as f64;
        let (mut bx, mut by) = (cx, cy);
        for i in 0..=steps {
            for j in 0..=steps {
                let (re, im) = (cx - half + i as f64 * h, cy - half + j as f64 * h);
                if re * re + im * im > radius * radius {
                    continue;
                }
                let v = g(re, im);
                if v < best {
                    best = v;
                    bx = re;
                    by = im;
                }
            }
        }
        cx = bx;
        cy = by;
        half = 3.0 * h;
    }
    best
}

/// `max_θ ‖T + e^{iθ}S‖ − ‖T‖ − ‖S‖` on a uniform grid of `samples`
/// phases, with no refinement. A lower bound for the true defect.
pub fn sampled_defect(t: &ComplexMatrix, s: &ComplexMatrix, samples: usize) -> f64 {
    let (tm, sm) = (t.as_matrix(), s.as_matrix());
    let top = |m: &DMatrix<Complex64>| m.singular_values().max();
    let best = (0..samples)
        .map(|k| std::f64::consts::TAU * k as f64 / samples as f64)
        .map(|theta| top(&(tm + sm * Complex64::from_polar(1.0, theta))))
        .fold(f64::NEG_INFINITY, f64::max);
    best - top(tm) - top(sm)
}

/// `‖M‖_p^p` from the eigenvalues of `M*M`.
pub fn schatten_power(m: &DMatrix<Complex64>, p: f64) -> f64 {
    let g = m.adjoint() * m;
    g.symmetric_eigenvalues().iter().map(|&e| e.max(0.0).powf(p / 2.0)).sum()
}

/// Derivative of `t ↦ ‖T + tS‖_p^p` at 0 by Richardson-extrapolated
/// central differences.
pub fn schatten_power_slope(t: &DMatrix<Complex64>, s: &DMatrix<Complex64>, p: f64) -> f64 {
    let f = |h: f64| schatten_power(&(t + s * c(h, 0.0)), p);
    let scale = t.norm() / s.norm();
    let central = |h: f64| (f(h) - f(-h)) / (2.0 * h);
    let h = 1e-3 * scale;
    (4.0 * central(h / 2.0) - central(h)) / 3.0
}

/// Sampled points `ξ*Mξ` of the numerical range, for random unit `ξ`.
pub fn numerical_range_samples(m: &DMatrix<Complex64>, count: usize, seed: u64) -> Vec<Complex64> {
    let n = m.ncols();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut next = move || rng.random_range(-1.0..1.0);
    (0..count)
        .map(|_| {
            let v = DVector::from_fn(n, |_, _| c(next(), next()));
            let v = &v / c(v.norm(), 0.0);
            v.dotc(&(m * &v))
        })
        .collect()
}

/// `kron(I_n, a)`: the matrix of `z ↦ a z` on column-stacked `n×n` matrices.
pub fn left_multiplication(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = a.nrows();
    DMatrix::<Complex64>::identity(n, n).kronecker(a)
}

pub fn column_stack(z: &DMatrix<Complex64>) -> DVector<Complex64> {
    DVector::from_iterator(z.len(), z.iter().copied())
}
