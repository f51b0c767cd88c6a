//! Theorem registry and the per-theorem trial generators.
//!
//! Every suite alternates constructed positive instances (odd trials) with
//! draws from the requested ensemble (even trials). Suites whose hypothesis
//! imposes structure the ensemble kind cannot supply (diagonal pairs,
//! unitary `y`, scalar `x*y`, positive blocks, vector pairs) build that
//! structure themselves and use only the ensemble's dimension and seed.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ensemble::{
    complex_normal, dominated_diagonal, draw, gaussian, gaussian_vector, haar_unitary, parallel_pair,
    positive, positive_parallel_pair, unimodular, Ensemble, EnsembleKind, Sample,
};
use crate::config::{rel_gap, Judgement, ToleranceConfig};
use crate::error::{Error, Result};
use crate::interchange::MatrixDocument;
use crate::linalg::{bracket, max_modulus_numerical_range, operator_norm, raw_schatten, ComplexMatrix, ComplexVector};
use crate::module_ops::{block_parallel, rank_one_equivalences, theta_spectral_radius_check, theta_transfer_check};
use crate::orthogonality::{bj_bridge_check, parallel_consequence_check};
use crate::parallelism::{
    commutative_criterion, defect_oracle, eigen_criterion, gram_criterion, is_parallel, normal_criterion,
    positive_criterion, singularity_criterion, spectral_criterion, witness_state, CriterionReport,
};
use crate::schatten::{schatten_defect_oracle, schatten_trace_criterion};

/// Registered equivalences, addressed by stable string labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    StateWitness,
    GramPairParallel,
    SpectralRadius,
    DensityWitness,
    OrthogonalityBridge,
    OrthogonalityConsequence,
    NormalInner,
    ElementaryOperator,
    UnitarySingularity,
    Commutative,
    VectorWitness,
    PositiveOperator,
    GramEigenspace,
    BlockDiagonal,
    SchattenTrace,
    EigenvalueIdentity,
    RankOne,
}

impl TheoremId {
    pub const ALL: [TheoremId; 17] = [
        Self::StateWitness,
        Self::GramPairParallel,
        Self::SpectralRadius,
        Self::DensityWitness,
        Self::OrthogonalityBridge,
        Self::OrthogonalityConsequence,
        Self::NormalInner,
        Self::ElementaryOperator,
        Self::UnitarySingularity,
        Self::Commutative,
        Self::VectorWitness,
        Self::PositiveOperator,
        Self::GramEigenspace,
        Self::BlockDiagonal,
        Self::SchattenTrace,
        Self::EigenvalueIdentity,
        Self::RankOne,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Self::StateWitness => "lemma-2.1-ii",
            Self::GramPairParallel => "lemma-2.1-iii",
            Self::SpectralRadius => "lemma-2.1-iv",
            Self::DensityWitness => "prop-2.2",
            Self::OrthogonalityBridge => "thm-2.4-bridge",
            Self::OrthogonalityConsequence => "cor-2.5-consequence",
            Self::NormalInner => "thm-2.7-normal",
            Self::ElementaryOperator => "prop-2.9-theta",
            Self::UnitarySingularity => "thm-2.11-singularity",
            Self::Commutative => "cor-2.12-commutative",
            Self::VectorWitness => "thm-2.16-witness",
            Self::PositiveOperator => "cor-2.13-positive",
            Self::GramEigenspace => "cor-2.14-gram",
            Self::BlockDiagonal => "cor-2.15-block",
            Self::SchattenTrace => "prop-2.20-schatten",
            Self::EigenvalueIdentity => "thm-2.22-eigen",
            Self::RankOne => "cor-2.24-rank-one",
        }
    }

    /// The ensemble kind whose draws fit the suite's hypothesis best.
    pub fn default_kind(self) -> EnsembleKind {
        match self {
            Self::OrthogonalityConsequence => EnsembleKind::ParallelPair,
            Self::NormalInner => EnsembleKind::Normal,
            Self::UnitarySingularity => EnsembleKind::IsometryPair,
            Self::Commutative => EnsembleKind::Diagonal,
            Self::PositiveOperator | Self::BlockDiagonal => EnsembleKind::Positive,
            Self::RankOne => EnsembleKind::RankOnePair,
            _ => EnsembleKind::Generic,
        }
    }

    fn index(self) -> u64 {
        Self::ALL.iter().position(|&t| t == self).expect("registered") as u64
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.label() == s)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

/// One failing trial with its inputs in the matrix interchange format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub theorem_id: String,
    pub trial: usize,
    pub detail: String,
    pub inputs: Vec<MatrixDocument>,
}

impl Counterexample {
    pub fn file_name(&self) -> String {
        format!("{}-trial-{:04}.json", self.theorem_id, self.trial)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub theorem_id: String,
    pub trials: usize,
    pub agreements: usize,
    pub borderline_skipped: usize,
    /// Sorted by trial index.
    pub counterexamples: Vec<Counterexample>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Writes one JSON document per counterexample into `dir` (created if
/// missing) and returns the paths written.
pub fn dump_counterexamples(report: &SuiteReport, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    report
        .counterexamples
        .iter()
        .map(|c| {
            let path = dir.join(c.file_name());
            let mut text = serde_json::to_string_pretty(c)?;
            text.push('\n');
            fs::write(&path, text)?;
            Ok(path)
        })
        .collect()
}

/// Runs the suite registered under `theorem_id`.
pub fn run_suite(theorem_id: &str, ensemble: &Ensemble, trials: usize, cfg: &ToleranceConfig) -> Result<SuiteReport> {
    run_theorem(theorem_id.parse()?, ensemble, trials, cfg)
}

pub fn run_theorem(theorem: TheoremId, ensemble: &Ensemble, trials: usize, cfg: &ToleranceConfig) -> Result<SuiteReport> {
    if ensemble.dim == 0 {
        return Err(Error::InvalidInput("ensemble dimension must be positive".into()));
    }
    cfg.validate()?;
    let mut report = SuiteReport {
        theorem_id: theorem.label().to_string(),
        trials,
        agreements: 0,
        borderline_skipped: 0,
        counterexamples: Vec::new(),
    };
    for trial in 0..trials {
        let mut rng = trial_rng(theorem, ensemble, trial);
        let ctx = Trial { ensemble, index: trial, cfg };
        match run_trial(theorem, &ctx, &mut rng)? {
            Outcome::Agree => report.agreements += 1,
            Outcome::Borderline => report.borderline_skipped += 1,
            Outcome::Disagree { detail, inputs } => report.counterexamples.push(Counterexample {
                theorem_id: theorem.label().to_string(),
                trial,
                detail,
                inputs: inputs.iter().map(MatrixDocument::from).collect(),
            }),
        }
    }
    Ok(report)
}

/// Independent stream per (seed, theorem, dim, kind, trial).
fn trial_rng(theorem: TheoremId, ensemble: &Ensemble, trial: usize) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&ensemble.seed.to_le_bytes());
    key[8..16].copy_from_slice(&theorem.index().to_le_bytes());
    key[16..24].copy_from_slice(&(ensemble.dim as u64).to_le_bytes());
    let kind = EnsembleKind::ALL.iter().position(|&k| k == ensemble.kind).unwrap_or(0) as u64;
    key[24..].copy_from_slice(&kind.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(trial as u64);
    rng
}

struct Trial<'a> {
    ensemble: &'a Ensemble,
    index: usize,
    cfg: &'a ToleranceConfig,
}

impl Trial<'_> {
    fn dim(&self) -> usize {
        self.ensemble.dim
    }

    fn positive_case(&self) -> bool {
        self.index % 2 == 1
    }

    /// A pair from the ensemble, or a constructed parallel pair on odd trials.
    fn pair(&self, rng: &mut ChaCha8Rng) -> (ComplexMatrix, ComplexMatrix) {
        if self.positive_case() && self.ensemble.kind != EnsembleKind::ParallelPair {
            return parallel_pair(self.dim(), rng);
        }
        match draw(self.ensemble.kind, self.dim(), rng) {
            Sample::Pair(a, b) => (a, b),
            Sample::Single(a) => match draw(self.ensemble.kind, self.dim(), rng) {
                Sample::Single(b) | Sample::Pair(b, _) => (a, b),
            },
        }
    }

    fn single(&self, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        match draw(self.ensemble.kind, self.dim(), rng) {
            Sample::Single(a) | Sample::Pair(a, _) => a,
        }
    }
}

enum Outcome {
    Agree,
    Borderline,
    Disagree { detail: String, inputs: Vec<ComplexMatrix> },
}

fn disagree(detail: impl Into<String>, inputs: &[&ComplexMatrix]) -> Outcome {
    Outcome::Disagree {
        detail: detail.into(),
        inputs: inputs.iter().map(|&m| m.clone()).collect(),
    }
}

/// Compares two decisions; borderline on either side skips the trial.
fn compare(oracle: Judgement, other: Judgement, what: &str, inputs: &[&ComplexMatrix]) -> Outcome {
    if oracle.borderline || other.borderline {
        Outcome::Borderline
    } else if oracle.holds == other.holds {
        Outcome::Agree
    } else {
        disagree(format!("oracle says {}, {what} says {}", oracle.holds, other.holds), inputs)
    }
}

fn from_report(r: &CriterionReport) -> Option<Judgement> {
    r.decision.map(|holds| Judgement {
        holds,
        borderline: r.borderline,
    })
}

/// Compares the oracle with a criterion report; not-applicable counts as a
/// counterexample because every suite builds inputs satisfying the
/// criterion's hypothesis.
fn compare_report(oracle: Judgement, r: &CriterionReport, inputs: &[&ComplexMatrix]) -> Outcome {
    match from_report(r) {
        Some(j) => compare(oracle, j, &format!("{} criterion", r.criterion), inputs),
        None => disagree(format!("{} criterion not applicable to a constructed input", r.criterion), inputs),
    }
}

fn oracle(t: &ComplexMatrix, s: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<Judgement> {
    let (defect, _) = defect_oracle(t, s, cfg)?;
    Ok(cfg.judge(defect / (1.0 + operator_norm(t) + operator_norm(s))))
}

fn both(a: Judgement, b: Judgement) -> Judgement {
    Judgement {
        holds: a.holds && b.holds,
        borderline: a.borderline || b.borderline,
    }
}

fn run_trial(theorem: TheoremId, ctx: &Trial, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let cfg = ctx.cfg;
    let n = ctx.dim();
    match theorem {
        TheoremId::StateWitness => {
            let (t, s) = ctx.pair(rng);
            let a = oracle(&t, &s, cfg)?;
            let target = operator_norm(&t) * operator_norm(&s);
            let (radius, xi) = max_modulus_numerical_range(&t.inner(&s)?, cfg)?;
            let b = cfg.judge(rel_gap(radius, target));
            if b.holds && !b.borderline && witness_state(&t, &s, &xi, cfg).is_err() {
                return Ok(disagree("maximizing pure state is not a valid witness", &[&t, &s]));
            }
            Ok(compare(a, b, "best state value", &[&t, &s]))
        }
        TheoremId::GramPairParallel => {
            let (t, s) = ctx.pair(rng);
            let a = oracle(&t, &s, cfg)?;
            let (tt, ts) = (t.inner(&t)?, t.inner(&s)?);
            let gram_parallel = oracle(&tt, &ts, cfg)?;
            let norm_match = cfg.judge(rel_gap(operator_norm(&ts), operator_norm(&t) * operator_norm(&s)));
            Ok(compare(a, both(gram_parallel, norm_match), "Gram pair", &[&t, &s]))
        }
        TheoremId::SpectralRadius => {
            let (t, s) = ctx.pair(rng);
            let a = oracle(&t, &s, cfg)?;
            Ok(compare_report(a, &spectral_criterion(&t, &s, cfg)?, &[&t, &s]))
        }
        TheoremId::DensityWitness => {
            let (t, s) = ctx.pair(rng);
            let verdict = is_parallel(&t, &s, cfg)?;
            let a = Judgement {
                holds: verdict.parallel,
                borderline: verdict.borderline,
            };
            let target = operator_norm(&t) * operator_norm(&s);
            let inner = t.inner(&s)?;
            if a.holds && !a.borderline {
                let Some(state) = verdict.witness_state.as_ref() else {
                    return Ok(disagree("parallel pair without a density witness", &[&t, &s]));
                };
                let value = state.expectation(&inner)?.norm();
                let trace = state.matrix().trace();
                if !cfg.approx_eq(value, target) || !cfg.approx_eq(trace.re, 1.0) || trace.im.abs() > cfg.eq_rel {
                    return Ok(disagree(format!("density witness attains {value} instead of {target}"), &[&t, &s]));
                }
            }
            // sup over density states of |tr(P x*y)| is the numerical radius
            let (radius, _) = max_modulus_numerical_range(&inner, cfg)?;
            Ok(compare(a, cfg.judge(rel_gap(radius, target)), "best density value", &[&t, &s]))
        }
        TheoremId::OrthogonalityBridge => {
            let (t, s) = ctx.pair(rng);
            let a = oracle(&t, &s, cfg)?;
            let r = bj_bridge_check(&t, &s, cfg)?;
            let b = Judgement {
                holds: r.bridge_holds,
                borderline: r.borderline,
            };
            if a.holds && !a.borderline && r.bridge_holds && !r.dual_holds {
                return Ok(disagree("dual orthogonality fails at the bridge phase", &[&t, &s]));
            }
            Ok(compare(a, b, "bridge", &[&t, &s]))
        }
        TheoremId::OrthogonalityConsequence => {
            let (x, y) = match ctx.index % 3 {
                0 => match ctx.ensemble.kind {
                    EnsembleKind::ParallelPair => ctx.pair(rng),
                    _ => parallel_pair(n, rng),
                },
                1 => {
                    let x = gaussian(n, n, rng);
                    let c = rng.random_range(0.25..4.0) * unimodular(rng);
                    let y = x.scale(c);
                    (x, y)
                }
                _ => positive_parallel_pair(n, rng),
            };
            let pre = oracle(&x, &y, cfg)?;
            if pre.borderline || !pre.holds {
                return Ok(Outcome::Borderline);
            }
            match parallel_consequence_check(&x, &y, cfg) {
                Ok(r) if r.borderline => Ok(Outcome::Borderline),
                Ok(r) if r.holds => Ok(Outcome::Agree),
                Ok(r) => Ok(disagree(
                    format!(
                        "no common phase: first {} second {} at {:.6}",
                        r.first_orthogonal,
                        r.second_orthogonal,
                        r.lambda.theta()
                    ),
                    &[&x, &y],
                )),
                // the witness step of the full verdict can still flag the pair
                Err(Error::InvalidInput(_)) => Ok(Outcome::Borderline),
                Err(e) => Err(e),
            }
        }
        TheoremId::NormalInner => {
            let u = haar_unitary(n, rng).into_inner();
            let w = haar_unitary(n, rng).into_inner();
            let d1 = dominated_diagonal(n, rng.random_range(0.5..2.0), rng);
            let mut d2 = dominated_diagonal(n, rng.random_range(0.5..2.0), rng);
            if !ctx.positive_case() && n > 1 {
                let k = rng.random_range(1..n);
                d2.swap(0, k);
            }
            let d2: Vec<Complex64> = d2.iter().map(|&v| v * unimodular(rng)).collect();
            let x = ComplexMatrix::wrap(&u * real_diag(&d1) * w.adjoint());
            let y = ComplexMatrix::wrap(&u * DMatrix::from_diagonal(&ComplexVector::from_vec(d2)) * w.adjoint());
            let a = oracle(&x, &y, cfg)?;
            Ok(compare_report(a, &normal_criterion(&x, &y, cfg)?, &[&x, &y]))
        }
        TheoremId::ElementaryOperator => {
            let s = complex_normal(rng) + unimodular(rng);
            let x = if ctx.positive_case() {
                haar_unitary(n, rng).scale(rng.random_range(0.5..2.0) * unimodular(rng))
            } else {
                gaussian(n, n, rng)
            };
            let Some(inv) = x.as_matrix().clone().try_inverse() else {
                return Ok(Outcome::Borderline);
            };
            let y = ComplexMatrix::new(inv.adjoint() * s)?;
            let z = gaussian(n, n, rng);
            let radius = theta_spectral_radius_check(&x, &y, cfg)?;
            if !radius.applicable || !radius.agrees {
                return Ok(disagree(
                    format!("spectral radius {} against |s| = {}", radius.r_theta, radius.scalar_mod),
                    &[&x, &y, &z],
                ));
            }
            let r = theta_transfer_check(&x, &y, &z, cfg)?;
            if !r.applicable {
                return Ok(Outcome::Borderline);
            }
            if r.borderline {
                return Ok(Outcome::Borderline);
            }
            Ok(if r.lhs == r.rhs {
                Outcome::Agree
            } else {
                disagree(format!("x ∥ y is {}, lifted pair gives {}", r.lhs, r.rhs), &[&x, &y, &z])
            })
        }
        TheoremId::UnitarySingularity => {
            let (x, y) = if ctx.positive_case() {
                let u = haar_unitary(n, rng).into_inner();
                let w = haar_unitary(n, rng).into_inner();
                let d = dominated_diagonal(n, rng.random_range(0.5..2.0), rng);
                let x = ComplexMatrix::wrap(&u * real_diag(&d) * w.adjoint());
                let y = ComplexMatrix::wrap(&u * w.adjoint() * unimodular(rng));
                (x, y)
            } else {
                let x = match ctx.ensemble.kind {
                    EnsembleKind::IsometryPair => ctx.single(rng),
                    kind if !kind.is_pair() => ctx.single(rng),
                    _ => gaussian(n, n, rng),
                };
                (x, haar_unitary(n, rng))
            };
            let a = oracle(&x, &y, cfg)?;
            Ok(compare_report(a, &singularity_criterion(&x, &y, cfg)?, &[&x, &y]))
        }
        TheoremId::Commutative => {
            let da: Vec<Complex64> = (0..n).map(|_| complex_normal(rng)).collect();
            let db: Vec<Complex64> = (0..n).map(|_| unimodular(rng)).collect();
            let a = ComplexMatrix::from_diagonal(&da)?;
            let b = ComplexMatrix::from_diagonal(&db)?;
            let o = oracle(&a, &b, cfg)?;
            Ok(compare_report(o, &commutative_criterion(&a, &b, cfg)?, &[&a, &b]))
        }
        TheoremId::VectorWitness => {
            let (t, s) = ctx.pair(rng);
            let a = oracle(&t, &s, cfg)?;
            let (nt, ns) = (operator_norm(&t), operator_norm(&s));
            let (radius, xi) = max_modulus_numerical_range(&t.inner(&s)?, cfg)?;
            let b = cfg.judge(rel_gap(radius, nt * ns));
            if b.holds && !b.borderline {
                let (txi, sxi) = (t.apply(&xi)?, s.apply(&xi)?);
                let attains = cfg.approx_eq(txi.norm(), nt) && cfg.approx_eq(sxi.norm(), ns);
                let dependent = cfg.approx_eq(bracket(&txi, &sxi).norm(), txi.norm() * sxi.norm());
                if !attains || !dependent {
                    return Ok(disagree("witness vector misses the norm-attaining conditions", &[&t, &s]));
                }
            }
            Ok(compare(a, b, "vector witness", &[&t, &s]))
        }
        TheoremId::PositiveOperator => {
            let (t, s) = if ctx.positive_case() {
                positive_parallel_pair(n, rng)
            } else {
                let t = positive(n, rng);
                let s = match ctx.ensemble.kind {
                    kind if !kind.is_pair() => ctx.single(rng),
                    _ => gaussian(n, n, rng),
                };
                (t, s)
            };
            let a = oracle(&t, &s, cfg)?;
            Ok(compare_report(a, &positive_criterion(&t, &s, cfg)?, &[&t, &s]))
        }
        TheoremId::GramEigenspace => {
            let (t, s) = ctx.pair(rng);
            let a = oracle(&t, &s, cfg)?;
            Ok(compare_report(a, &gram_criterion(&t, &s, cfg)?, &[&t, &s]))
        }
        TheoremId::BlockDiagonal => {
            let (ts, ss) = if ctx.positive_case() {
                let (t0, s0) = positive_parallel_pair(n, rng);
                let (nt, ns) = (operator_norm(&t0), operator_norm(&s0));
                let t1 = positive(n, rng);
                let t1 = t1.scale_real(nt * rng.random_range(0.1..0.9) / operator_norm(&t1));
                let s1 = gaussian(n, n, rng);
                let s1 = s1.scale_real(ns * rng.random_range(0.1..0.9) / operator_norm(&s1));
                if rng.random::<bool>() {
                    (vec![t0, t1], vec![s0, s1])
                } else {
                    (vec![t1, t0], vec![s1, s0])
                }
            } else {
                (vec![positive(n, rng), positive(n, rng)], vec![gaussian(n, n, rng), gaussian(n, n, rng)])
            };
            let r = block_parallel(&ts, &ss, cfg)?;
            let inputs: Vec<&ComplexMatrix> = ts.iter().chain(&ss).collect();
            if !r.applicable {
                return Ok(disagree("positive blocks rejected", &inputs));
            }
            let a = Judgement {
                holds: r.decision,
                borderline: r.borderline,
            };
            if a.holds && !a.borderline && r.witness_conditions_hold != Some(true) {
                return Ok(disagree("block witness conditions fail", &inputs));
            }
            Ok(compare_report(a, &r.criterion, &inputs))
        }
        TheoremId::SchattenTrace => {
            const EXPONENTS: [f64; 4] = [1.0, 1.5, 2.0, 3.0];
            let p = EXPONENTS[(ctx.index / 2) % EXPONENTS.len()];
            let (t, s) = if ctx.positive_case() {
                if p == 1.0 {
                    parallel_pair(n, rng)
                } else {
                    let t = gaussian(n, n, rng);
                    let s = t.scale(rng.random_range(0.25..4.0) * unimodular(rng));
                    (t, s)
                }
            } else {
                ctx.pair(rng)
            };
            let r = schatten_trace_criterion(&t, &s, p, cfg)?;
            if !r.applicable {
                return Ok(Outcome::Borderline);
            }
            let (defect, _) = schatten_defect_oracle(&t, &s, p, cfg)?;
            let scale = 1.0 + raw_schatten(t.as_matrix(), p) + raw_schatten(s.as_matrix(), p);
            Ok(compare_report(cfg.judge(defect / scale), &r, &[&t, &s]))
        }
        TheoremId::EigenvalueIdentity => {
            let t = if ctx.positive_case() {
                let v = haar_unitary(n, rng).into_inner();
                let d = rng.random_range(0.5..2.0);
                let mut block = DMatrix::<Complex64>::zeros(n, n);
                block[(0, 0)] = unimodular(rng) * d;
                if n > 1 {
                    let r = gaussian(n - 1, n - 1, rng).into_inner();
                    let r = &r * Complex64::new(d * rng.random_range(0.1..0.9) / crate::linalg::raw_norm(&r), 0.0);
                    block.view_mut((1, 1), (n - 1, n - 1)).copy_from(&r);
                }
                ComplexMatrix::wrap(&v * block * v.adjoint())
            } else {
                ctx.single(rng)
            };
            let a = oracle(&t, &ComplexMatrix::identity(n), cfg)?;
            Ok(compare_report(a, &eigen_criterion(&t, cfg)?, &[&t]))
        }
        TheoremId::RankOne => {
            let eta = gaussian_vector(n, rng);
            let xi = if ctx.positive_case() {
                &eta * (rng.random_range(0.25..4.0) * unimodular(rng))
            } else {
                gaussian_vector(n, rng)
            };
            let (em, xm) = (column(&eta), column(&xi));
            let a = oracle(&em, &xm, cfg)?;
            let r = rank_one_equivalences(&eta, &xi, cfg)?;
            if a.borderline || r.borderline {
                return Ok(Outcome::Borderline);
            }
            let answers = [r.vectors_parallel, r.tensors_parallel, r.parallel_to_identity, r.eigenvalue_condition];
            Ok(if answers.iter().all(|&v| v == a.holds) {
                Outcome::Agree
            } else {
                disagree(format!("oracle {} against conditions {answers:?}", a.holds), &[&em, &xm])
            })
        }
    }
}

fn real_diag(d: &[f64]) -> DMatrix<Complex64> {
    DMatrix::from_diagonal(&ComplexVector::from_iterator(d.len(), d.iter().map(|&v| Complex64::new(v, 0.0))))
}

fn column(v: &ComplexVector) -> ComplexMatrix {
    ComplexMatrix::wrap(DMatrix::from_column_slice(v.len(), 1, v.as_slice()))
}
