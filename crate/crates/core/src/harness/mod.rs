//! Random ensembles and equivalence suites: each characterization is run
//! against the brute-force defect oracle on seeded random inputs, with
//! borderline trials counted separately instead of judged.

mod ensemble;
mod suites;

pub use ensemble::{sample, Ensemble, EnsembleKind, Sample};
pub use suites::{dump_counterexamples, run_suite, run_theorem, Counterexample, SuiteReport, TheoremId};
