//! Numerical thresholds shared by every decision procedure.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances, grid sizes and the seed used for randomized sub-checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Relative equality tolerance: `|a - b| <= eq_rel * (1 + |a| + |b|)`.
    pub eq_rel: f64,
    /// Width of the borderline band, as a factor on either side of `eq_rel`.
    pub decision_margin: f64,
    /// Number of coarse samples over `[0, 2π)` for phase searches.
    pub phase_grid: usize,
    /// Angular resolution targeted by golden-section refinement.
    pub phase_refine: f64,
    /// Eigenvalues above `-psd_floor` count as nonnegative.
    pub psd_floor: f64,
    /// Coarse phase grid for sweeps whose objective is itself an
    /// optimization (the orthogonality bridge and its consequences).
    pub bj_phase_grid: usize,
    /// Seed for the random auxiliary vectors some checks draw.
    pub seed: u64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            eq_rel: 1e-7,
            decision_margin: 10.0,
            phase_grid: 1024,
            phase_refine: 1e-10,
            psd_floor: 1e-10,
            bj_phase_grid: 64,
            seed: 0x5eed_cafe,
        }
    }
}

/// Outcome of comparing a normalized gap against `eq_rel`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Judgement {
    pub holds: bool,
    pub borderline: bool,
}

impl ToleranceConfig {
    pub fn with_eq_rel(eq_rel: f64) -> Result<Self> {
        let cfg = Self {
            eq_rel,
            ..Self::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("eq_rel", self.eq_rel),
            ("decision_margin", self.decision_margin),
            ("phase_refine", self.phase_refine),
            ("psd_floor", self.psd_floor),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::Config(format!("{name} must be positive, got {value}")));
            }
        }
        if self.phase_grid < 3 || self.bj_phase_grid < 3 {
            return Err(Error::Config("phase grids need at least 3 points".into()));
        }
        if self.phase_refine >= std::f64::consts::TAU / self.phase_grid as f64 {
            return Err(Error::Config(
                "phase_refine must be finer than the coarse grid spacing".into(),
            ));
        }
        Ok(())
    }

    /// Relative equality `|a - b| <= eq_rel * (1 + |a| + |b|)`.
    pub fn approx_eq(&self, a: f64, b: f64) -> bool {
        rel_gap(a, b) <= self.eq_rel
    }

    /// Judges a gap already normalized by its scale. The verdict is flagged
    /// borderline when the gap lies within a factor `decision_margin` of
    /// `eq_rel` on either side.
    pub fn judge(&self, gap: f64) -> Judgement {
        let gap = gap.abs();
        Judgement {
            holds: gap <= self.eq_rel,
            borderline: gap > self.eq_rel / self.decision_margin
                && gap < self.eq_rel * self.decision_margin,
        }
    }
}

/// `|a - b| / (1 + |a| + |b|)`.
pub fn rel_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + a.abs() + b.abs())
}
