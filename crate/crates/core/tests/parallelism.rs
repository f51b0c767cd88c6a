mod common;

use common::*;
use normpar::harness::EnsembleKind;
use normpar::linalg::{operator_norm, spectral_radius};
use normpar::parallelism::{
    commutative_criterion, defect_oracle, eigen_criterion, gram_criterion, is_parallel, normal_criterion,
    positive_criterion, singularity_criterion, spectral_criterion, witness_gap, witness_state, witness_vector,
};
use normpar::{ComplexMatrix, ToleranceConfig};
use proptest::prelude::*;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn identity() -> ComplexMatrix {
    ComplexMatrix::identity(2)
}

fn diag(d: &[f64]) -> ComplexMatrix {
    ComplexMatrix::from_real_diagonal(d).unwrap()
}

#[test]
fn worked_example_verdicts() {
    let (a, b, cm) = (example_a(), example_b(), example_c());
    let cfg = cfg();
    assert!(!is_parallel(&a, &identity(), &cfg).unwrap().parallel);
    assert!(is_parallel(&b, &identity(), &cfg).unwrap().parallel);
    assert!(is_parallel(&identity(), &cm, &cfg).unwrap().parallel);
    assert!(!is_parallel(&b, &cm, &cfg).unwrap().parallel);
}

#[test]
fn self_pair_has_zero_defect_at_unit_phase() {
    let t = single(EnsembleKind::Generic, 3, 11);
    let (defect, phase) = defect_oracle(&t, &t, &cfg()).unwrap();
    assert!(defect.abs() < 1e-10);
    assert!(phase.distance(&normpar::PhaseAngle::ONE) < 1e-6);
    let v = is_parallel(&t, &t.scale_real(2.0), &cfg()).unwrap();
    assert!(v.parallel && v.best_phase.distance(&normpar::PhaseAngle::ONE) < 1e-6);
}

#[test]
fn example_b_parallel_to_identity_at_unit_phase() {
    let (defect, phase) = defect_oracle(&example_b(), &identity(), &cfg()).unwrap();
    assert!(defect.abs() < 1e-9);
    assert!(phase.distance(&normpar::PhaseAngle::ONE) < 1e-6);
    let (defect, _) = defect_oracle(&example_a(), &identity(), &cfg()).unwrap();
    assert!(defect < -1e-3);
}

#[test]
fn zero_operand_is_parallel() {
    let z = ComplexMatrix::zeros(2, 2);
    let v = is_parallel(&z, &example_a(), &cfg()).unwrap();
    assert!(v.parallel);
    assert_eq!(v.defect, 0.0);
}

#[test]
fn shape_mismatch_is_an_error() {
    assert!(defect_oracle(&identity(), &ComplexMatrix::identity(3), &cfg()).is_err());
    assert!(spectral_criterion(&identity(), &ComplexMatrix::identity(3), &cfg()).is_err());
}

#[test]
fn witness_for_example_b_is_its_top_eigenvector() {
    let b = example_b();
    let v = is_parallel(&b, &identity(), &cfg()).unwrap();
    let xi = v.witness_vector.expect("parallel pair gets a witness");
    let bxi = b.apply(&xi).unwrap();
    let top = 1.0 + 26f64.sqrt();
    assert!((xi.dotc(&bxi).norm() - top).abs() < 1e-9);
    let p = v.witness_state.unwrap();
    assert!((p.expectation(&b).unwrap().norm() - top).abs() < 1e-9);
}

#[test]
fn spectral_criterion_reports_example_quantities() {
    let r = spectral_criterion(&example_b(), &example_c(), &cfg()).unwrap();
    assert_eq!(r.decision, Some(false));
    assert!(rel_err(r.diagnostic("spectral_radius").unwrap(), 5.0) < 1e-12);
    assert!(rel_err(r.diagnostic("inner_norm").unwrap(), 26f64.sqrt() + 1.0) < 1e-12);
    assert!(rel_err(r.diagnostic("norm_product").unwrap(), 26f64.sqrt() + 1.0) < 1e-12);
    let t = single(EnsembleKind::Generic, 3, 5);
    assert_eq!(spectral_criterion(&t, &t, &cfg()).unwrap().decision, Some(true));
}

#[test]
fn normal_criterion_needs_normal_inner_product() {
    let r = normal_criterion(&example_a(), &identity(), &cfg()).unwrap();
    assert!(!r.applicable);
    assert_eq!(r.decision, None);
    let x = single(EnsembleKind::Generic, 3, 8);
    let r = normal_criterion(&x, &x, &cfg()).unwrap();
    assert_eq!(r.decision, Some(true));
}

#[test]
fn singularity_criterion_examples() {
    let r = singularity_criterion(&diag(&[1.0, 0.0]), &identity(), &cfg()).unwrap();
    assert_eq!(r.decision, Some(true));
    let r = singularity_criterion(&example_a(), &identity(), &cfg()).unwrap();
    assert_eq!(r.decision, Some(false));
    let r = singularity_criterion(&example_a(), &diag(&[2.0, 1.0]), &cfg()).unwrap();
    assert!(!r.applicable);
}

#[test]
fn commutative_criterion_examples() {
    let r = commutative_criterion(&diag(&[2.0, 1.0]), &diag(&[1.0, 1.0]), &cfg()).unwrap();
    assert_eq!(r.decision, Some(true));
    let r = commutative_criterion(&diag(&[1.0, 1.0]), &diag(&[1.0, -1.0]), &cfg()).unwrap();
    assert_eq!(r.decision, Some(true));
    assert!(commutative_criterion(&example_b(), &identity(), &cfg()).is_err());
    let r = commutative_criterion(&diag(&[1.0, 1.0]), &diag(&[2.0, 1.0]), &cfg()).unwrap();
    assert!(!r.applicable);
}

#[test]
fn eigen_criterion_examples() {
    assert_eq!(eigen_criterion(&example_b(), &cfg()).unwrap().decision, Some(true));
    let r = eigen_criterion(&example_a(), &cfg()).unwrap();
    assert_eq!(r.decision, Some(false));
    assert!(r.diagnostic("modulus_gap").unwrap() < 1e-12);
    assert!(eigen_criterion(&ComplexMatrix::zeros(2, 3), &cfg()).is_err());
}

#[test]
fn truncated_shift_is_never_parallel_to_identity() {
    for n in 2..=8 {
        let j = jordan_block(n);
        let i = ComplexMatrix::identity(n);
        assert!(!is_parallel(&j, &i, &cfg()).unwrap().parallel, "n = {n}");
        assert_eq!(eigen_criterion(&j, &cfg()).unwrap().decision, Some(false), "n = {n}");
    }
}

#[test]
fn positive_criterion_examples() {
    let s = single(EnsembleKind::Hermitian, 3, 2);
    let r = positive_criterion(&ComplexMatrix::identity(3), &s, &cfg()).unwrap();
    assert_eq!(r.decision, Some(true));
    let r = positive_criterion(&diag(&[2.0, 1.0]), &diag(&[0.0, 5.0]), &cfg()).unwrap();
    assert_eq!(r.decision, Some(false));
    assert!(!is_parallel(&diag(&[2.0, 1.0]), &diag(&[0.0, 5.0]), &cfg()).unwrap().parallel);
    let r = positive_criterion(&diag(&[1.0, -1.0]), &identity(), &cfg()).unwrap();
    assert!(!r.applicable);
}

#[test]
fn gram_criterion_examples() {
    let t = single(EnsembleKind::Generic, 3, 4);
    assert_eq!(gram_criterion(&t, &t, &cfg()).unwrap().decision, Some(true));
    assert_eq!(gram_criterion(&example_a(), &identity(), &cfg()).unwrap().decision, Some(false));
}

#[test]
fn manufactured_pairs_pass_every_criterion() {
    let cfg = cfg();
    for seed in 0..12 {
        let dim = 2 + (seed as usize % 4);
        let (t, s) = pair(EnsembleKind::ParallelPair, dim, seed);
        let v = is_parallel(&t, &s, &cfg).unwrap();
        assert!(v.parallel && !v.borderline, "seed {seed}");
        assert_eq!(spectral_criterion(&t, &s, &cfg).unwrap().decision, Some(true));
        assert_eq!(gram_criterion(&t, &s, &cfg).unwrap().decision, Some(true));
        let xi = witness_vector(&t, &s, v.best_phase, &cfg).unwrap();
        assert!(witness_gap(&t, &s, &xi).unwrap() < 1e-9);
        witness_state(&t, &s, &xi, &cfg).unwrap();
    }
}

#[test]
fn witness_state_rejects_wrong_vector() {
    let e2 = nalgebra::DVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)]);
    assert!(witness_state(&diag(&[2.0, 1.0]), &identity(), &e2, &cfg()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn parallelism_is_symmetric((t, s) in square_pair()) {
        let cfg = cfg();
        let ts = is_parallel(&t, &s, &cfg).unwrap();
        let st = is_parallel(&s, &t, &cfg).unwrap();
        prop_assume!(!ts.borderline && !st.borderline);
        prop_assert_eq!(ts.parallel, st.parallel);
    }

    #[test]
    fn parallelism_is_homogeneous((t, s) in square_pair(), alpha in -3.0f64..3.0, beta in -3.0f64..3.0) {
        prop_assume!(alpha.abs() > 0.1 && beta.abs() > 0.1);
        let cfg = cfg();
        let base = is_parallel(&t, &s, &cfg).unwrap();
        let scaled = is_parallel(&t.scale_real(alpha), &s.scale_real(beta), &cfg).unwrap();
        prop_assume!(!base.borderline && !scaled.borderline);
        prop_assert_eq!(base.parallel, scaled.parallel);
    }

    #[test]
    fn defect_is_nonpositive_and_beats_sampling((t, s) in square_pair()) {
        let cfg = cfg();
        let (defect, _) = defect_oracle(&t, &s, &cfg).unwrap();
        let scale = 1.0 + operator_norm(&t) + operator_norm(&s);
        prop_assert!(defect <= cfg.eq_rel * scale);
        prop_assert!(defect >= sampled_defect(&t, &s, 360) - 1e-12 * scale);
    }

    #[test]
    fn witnesses_satisfy_their_equalities(seed in 0u64..10_000, dim in 2usize..=5) {
        let cfg = cfg();
        let (t, s) = pair(EnsembleKind::ParallelPair, dim, seed);
        let v = is_parallel(&t, &s, &cfg).unwrap();
        prop_assert!(v.parallel);
        if let Some(xi) = &v.witness_vector {
            prop_assert!(witness_gap(&t, &s, xi).unwrap() <= cfg.eq_rel);
            let txs = t.inner(&s).unwrap();
            let value = v.witness_state.as_ref().unwrap().expectation(&txs).unwrap().norm();
            prop_assert!(cfg.approx_eq(value, operator_norm(&t) * operator_norm(&s)));
        } else {
            prop_assert!(v.borderline);
        }
    }

    #[test]
    fn spectral_criterion_agrees_with_oracle((t, s) in square_pair()) {
        let cfg = cfg();
        let v = is_parallel(&t, &s, &cfg).unwrap();
        let r = spectral_criterion(&t, &s, &cfg).unwrap();
        prop_assume!(!v.borderline && !r.borderline);
        prop_assert_eq!(r.decision, Some(v.parallel));
    }

    #[test]
    fn eigen_criterion_matches_radius(t in square()) {
        let r = eigen_criterion(&t, &cfg()).unwrap();
        prop_assume!(!r.borderline);
        let by_radius = (spectral_radius(&t).unwrap() - operator_norm(&t)).abs() <= 1e-7 * (1.0 + 2.0 * operator_norm(&t));
        prop_assert_eq!(r.decision, Some(by_radius));
    }
}
