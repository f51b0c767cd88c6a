//! `normpar`: decide norm-parallelism and Birkhoff–James orthogonality of
//! matrices stored in the JSON interchange format, and run the equivalence
//! suites.
//!
//! Exit status: 0 positive verdict, 1 negative verdict (or counterexamples),
//! 2 borderline, 3 runtime or input error, 4 usage error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use normpar::harness::{dump_counterexamples, run_theorem, Ensemble, EnsembleKind, SuiteReport, TheoremId};
use normpar::interchange::{read_matrix, read_matrix_file};
use normpar::orthogonality::{bj_minimize, bj_state_witness};
use normpar::parallelism::is_parallel;
use normpar::schatten::{schatten_defect_oracle, schatten_trace_criterion};
use normpar::{ComplexMatrix, ComplexVector, Complex64, Error, PhaseAngle, ToleranceConfig};
use serde::Serialize;

const EXIT_BORDERLINE: u8 = 2;
const EXIT_ERROR: u8 = 3;
const EXIT_USAGE: u8 = 4;

#[derive(Parser)]
#[command(name = "normpar", version, about = "Norm-parallelism and Birkhoff-James orthogonality of complex matrices")]
struct Cli {
    /// Relative equality tolerance (eq_rel)
    #[arg(long, global = true, env = "NORMPAR_TOL")]
    tol: Option<f64>,
    /// Print structured JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide T ∥ S in the operator norm; `-` reads a matrix from stdin
    Parallel { t: PathBuf, s: PathBuf },
    /// Decide x ⊥ y (Birkhoff–James)
    Bj { x: PathBuf, y: PathBuf },
    /// Decide T ∥ S in the Schatten p-norm
    Schatten {
        t: PathBuf,
        s: PathBuf,
        #[arg(long)]
        p: f64,
    },
    /// Run an equivalence suite against the defect oracle
    Verify {
        /// Registered theorem id, or `all`
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Ensemble kind; defaults to the suite's natural ensemble
        #[arg(long)]
        ensemble: Option<String>,
        /// Write one JSON document per counterexample here
        #[arg(long)]
        dump_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn config(cli: &Cli) -> Result<ToleranceConfig> {
    Ok(match cli.tol {
        Some(tol) => ToleranceConfig::with_eq_rel(tol).context("invalid tolerance")?,
        None => ToleranceConfig::default(),
    })
}

fn load(path: &Path) -> Result<ComplexMatrix> {
    let m = if path == Path::new("-") {
        read_matrix(std::io::stdin().lock())
    } else {
        read_matrix_file(path)
    };
    m.with_context(|| format!("reading {}", path.display()))
}

fn load_pair(a: &Path, b: &Path) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if a == Path::new("-") && b == Path::new("-") {
        bail!("only one matrix can come from standard input");
    }
    Ok((load(a)?, load(b)?))
}

fn run(cli: &Cli) -> Result<u8> {
    let cfg = config(cli)?;
    let mut out = std::io::stdout().lock();
    match &cli.command {
        Command::Parallel { t, s } => {
            let (t, s) = load_pair(t, s)?;
            let v = is_parallel(&t, &s, &cfg)?;
            if cli.json {
                print_json(&mut out, &v)?;
            } else {
                writeln!(out, "parallel: {}", v.parallel)?;
                writeln!(out, "borderline: {}", v.borderline)?;
                writeln!(out, "phase: {}", phase_text(v.best_phase))?;
                writeln!(out, "defect: {}", sig(v.defect))?;
                if let Some(xi) = &v.witness_vector {
                    writeln!(out, "witness vector: {}", vector_text(xi))?;
                }
                if let Some(p) = &v.witness_state {
                    writeln!(out, "witness state:")?;
                    write_matrix_text(&mut out, p.matrix())?;
                }
            }
            Ok(verdict_code(v.parallel, v.borderline))
        }
        Command::Bj { x, y } => {
            let (x, y) = load_pair(x, y)?;
            let v = bj_minimize(&x, &y, &cfg)?;
            let state = if v.orthogonal {
                match bj_state_witness(&x, &y, &cfg) {
                    Ok(p) => Some(p),
                    Err(Error::WitnessFailure(_)) => None,
                    Err(e) => return Err(e.into()),
                }
            } else {
                None
            };
            let borderline = v.borderline || (v.orthogonal && state.is_none());
            if cli.json {
                #[derive(Serialize)]
                struct BjOutput<'a> {
                    #[serde(flatten)]
                    verdict: &'a normpar::orthogonality::BJVerdict,
                    state_witness: Option<&'a normpar::DensityState>,
                }
                print_json(&mut out, &BjOutput { verdict: &v, state_witness: state.as_ref() })?;
            } else {
                writeln!(out, "orthogonal: {}", v.orthogonal)?;
                writeln!(out, "borderline: {borderline}")?;
                writeln!(out, "minimizer gamma: {}", complex_text(v.minimizer_gamma))?;
                writeln!(out, "min norm: {}", sig(v.min_norm))?;
                if let Some(p) = &state {
                    writeln!(out, "state witness:")?;
                    write_matrix_text(&mut out, p.matrix())?;
                }
            }
            Ok(verdict_code(v.orthogonal, borderline))
        }
        Command::Schatten { t, s, p } => {
            let (t, s) = load_pair(t, s)?;
            let report = schatten_trace_criterion(&t, &s, *p, &cfg)?;
            let (defect, phase) = schatten_defect_oracle(&t, &s, *p, &cfg)?;
            let scale = 1.0 + normpar::linalg::schatten_norm(&t, *p)? + normpar::linalg::schatten_norm(&s, *p)?;
            let oracle = cfg.judge(defect / scale);
            let (decision, borderline) = match report.decision {
                Some(d) => (d, report.borderline),
                None => (oracle.holds, oracle.borderline),
            };
            if cli.json {
                #[derive(Serialize)]
                struct SchattenOutput<'a> {
                    p: f64,
                    parallel: bool,
                    borderline: bool,
                    criterion: &'a normpar::parallelism::CriterionReport,
                    oracle_defect: f64,
                    oracle_phase: PhaseAngle,
                }
                print_json(
                    &mut out,
                    &SchattenOutput {
                        p: *p,
                        parallel: decision,
                        borderline,
                        criterion: &report,
                        oracle_defect: defect,
                        oracle_phase: phase,
                    },
                )?;
            } else {
                writeln!(out, "parallel: {decision}")?;
                writeln!(out, "borderline: {borderline}")?;
                writeln!(out, "trace criterion applicable: {}", report.applicable)?;
                for (k, v) in &report.diagnostics {
                    writeln!(out, "  {k}: {}", sig(*v))?;
                }
                writeln!(out, "oracle defect: {}", sig(defect))?;
                writeln!(out, "oracle phase: {}", phase_text(phase))?;
            }
            Ok(verdict_code(decision, borderline))
        }
        Command::Verify { theorem, dim, trials, seed, ensemble, dump_dir } => {
            let theorems: Vec<TheoremId> = if theorem == "all" {
                TheoremId::ALL.to_vec()
            } else {
                vec![theorem.parse()?]
            };
            let kind: Option<EnsembleKind> = ensemble.as_deref().map(str::parse).transpose()?;
            let seed = seed.unwrap_or(cfg.seed);
            let mut reports = Vec::with_capacity(theorems.len());
            for th in theorems {
                let e = Ensemble::new(kind.unwrap_or(th.default_kind()), *dim, seed);
                let report = run_theorem(th, &e, *trials, &cfg)?;
                if let Some(dir) = dump_dir {
                    dump_counterexamples(&report, dir)?;
                }
                reports.push(report);
            }
            if cli.json {
                if reports.len() == 1 {
                    print_json(&mut out, &reports[0])?;
                } else {
                    print_json(&mut out, &reports)?;
                }
            } else {
                write_table(&mut out, &reports)?;
            }
            Ok(if reports.iter().all(SuiteReport::passed) { 0 } else { 1 })
        }
    }
}

fn verdict_code(holds: bool, borderline: bool) -> u8 {
    if borderline {
        EXIT_BORDERLINE
    } else if holds {
        0
    } else {
        1
    }
}

fn print_json<T: Serialize>(out: &mut impl Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn write_table(out: &mut impl Write, reports: &[SuiteReport]) -> Result<()> {
    writeln!(out, "{:<24} {:>7} {:>7} {:>10} {:>15}", "theorem", "trials", "agree", "borderline", "counterexamples")?;
    for r in reports {
        writeln!(
            out,
            "{:<24} {:>7} {:>7} {:>10} {:>15}",
            r.theorem_id,
            r.trials,
            r.agreements,
            r.borderline_skipped,
            r.counterexamples.len()
        )?;
        for c in &r.counterexamples {
            writeln!(out, "  trial {}: {}", c.trial, c.detail)?;
        }
    }
    Ok(())
}

/// Twelve significant digits, trailing zeros trimmed.
fn sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let s = format!("{:.*}", (11 - exp).max(0) as usize, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.11e}")
    }
}

fn complex_text(z: Complex64) -> String {
    if z.im < 0.0 {
        format!("{} - {}i", sig(z.re), sig(-z.im))
    } else {
        format!("{} + {}i", sig(z.re), sig(z.im))
    }
}

fn phase_text(p: PhaseAngle) -> String {
    format!("theta = {}, lambda = {}", sig(p.theta()), complex_text(p.value()))
}

fn vector_text(v: &ComplexVector) -> String {
    let parts: Vec<String> = v.iter().map(|&z| complex_text(z)).collect();
    format!("[{}]", parts.join(", "))
}

fn write_matrix_text(out: &mut impl Write, m: &ComplexMatrix) -> Result<()> {
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| complex_text(m.get(i, j))).collect();
        writeln!(out, "  [{}]", row.join(", "))?;
    }
    Ok(())
}
