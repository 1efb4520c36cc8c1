//! Numerical and exact checks of the analytic claims behind the
//! constructions: constrained maxima of `f`, `g`, `h`, `F`, `H`, the
//! `A + B` coefficient identity, the monotonicity cases for `N(ℓ,q)`, and
//! sampled subgraph Lagrangian bounds.
//!
//! Targets are exact rationals. An upper-bound claim passes only if the best
//! point found stays below the target plus the tolerance *and* the target
//! is attained exactly at the stated maximizer.

mod cases;
mod claims;
pub mod polys;
mod sampling;
mod search;

pub use cases::{case_of, verify_case_derivatives, Case};
pub use claims::{
    claim8_closed_form, claim8_quoted_coefficient, eval_f, eval_f_exact,
    verify_claim8_coefficients, verify_claim_big_f, verify_claim_big_h, verify_claim_f_a1,
    verify_claim_f_bound, verify_claim_g_max, verify_claim_h_max, verify_rho_block_bound,
};
pub use sampling::{verify_claim1, verify_subgraph_bound};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::rational::{display, to_f64, Rational};

/// Absolute tolerance for upper-bound claims on numeric maxima.
pub const BOUND_TOLERANCE: f64 = 1e-9;
/// Absolute tolerance for sampled subgraph Lagrangians.
pub const SUBGRAPH_TOLERANCE: f64 = 1e-8;

/// `a` on the simplex with `0 ≤ ρ ≤ a₁/4`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintPoint {
    pub a: Vec<f64>,
    pub rho: f64,
}

impl ConstraintPoint {
    pub fn new(a: Vec<f64>, rho: f64) -> Result<Self> {
        let p = ConstraintPoint { a, rho };
        p.validate()?;
        Ok(p)
    }

    pub fn uniform(ell: usize) -> Result<Self> {
        if ell == 0 {
            return invalid("need at least one part");
        }
        Self::new(vec![1.0 / ell as f64; ell], 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.a.is_empty() {
            return invalid("empty weight vector");
        }
        if let Some(v) = self.a.iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
            return invalid(format!("weight {v} is not a finite nonnegative number"));
        }
        let s: f64 = self.a.iter().sum();
        if (s - 1.0).abs() > 1e-12 {
            return invalid(format!("weights sum to {s}, not 1"));
        }
        let cap = self.a[0] / 4.0;
        if !(self.rho >= 0.0) || self.rho > cap + 1e-15 {
            return invalid(format!("ρ = {} outside [0, a₁/4 = {cap}]", self.rho));
        }
        Ok(())
    }
}

/// Block weights `b` with `Σ b = 1/ℓ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockWeights {
    pub b: Vec<f64>,
}

impl BlockWeights {
    pub fn new(b: Vec<f64>, ell: usize) -> Result<Self> {
        if b.is_empty() || ell == 0 {
            return invalid("need at least one block and one part");
        }
        if let Some(v) = b.iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
            return invalid(format!("weight {v} is not a finite nonnegative number"));
        }
        let s: f64 = b.iter().sum();
        if (s - 1.0 / ell as f64).abs() > 1e-12 {
            return invalid(format!("block weights sum to {s}, not 1/{ell}"));
        }
        Ok(BlockWeights { b })
    }
}

/// Search effort for the multivariate claims.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub restarts: usize,
    pub seed: u64,
    pub max_iterations: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            restarts: 64,
            seed: 0,
            max_iterations: 100_000,
        }
    }
}

impl Budget {
    pub fn with_seed(seed: u64) -> Self {
        Budget {
            seed,
            ..Budget::default()
        }
    }
}

/// Outcome of one claim check.
///
/// For upper-bound claims `achieved_max` is the best value found and
/// `slack = target − achieved_max`. For sign and monotonicity claims it is
/// the least favourable value of the checked quantity (which must stay on
/// the right side of `target`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: String,
    pub params: String,
    pub achieved_max: f64,
    pub target: String,
    pub target_value: f64,
    pub slack: f64,
    pub tolerance: f64,
    pub samples: usize,
    pub pass: bool,
    /// Sampling-based rather than exhaustive.
    pub empirical: bool,
    pub argmax: Option<Vec<f64>>,
    pub notes: Vec<String>,
}

impl ClaimReport {
    pub(crate) fn new(claim: &str, params: String, target: &Rational, tolerance: f64) -> Self {
        ClaimReport {
            claim: claim.to_string(),
            params,
            achieved_max: f64::NEG_INFINITY,
            target: display(target),
            target_value: to_f64(target),
            slack: f64::INFINITY,
            tolerance,
            samples: 0,
            pass: true,
            empirical: false,
            argmax: None,
            notes: Vec::new(),
        }
    }

    /// Records the best value and checks it against the target.
    pub(crate) fn bound(&mut self, achieved: f64) {
        self.achieved_max = achieved;
        self.slack = self.target_value - achieved;
        let ok = achieved <= self.target_value + self.tolerance;
        self.require(
            ok,
            format!(
                "best {achieved:.15e} vs target {:.15e} (+{:e})",
                self.target_value, self.tolerance
            ),
        );
    }

    /// Fails the report when `ok` is false; the note is kept either way.
    pub(crate) fn require(&mut self, ok: bool, note: impl Into<String>) {
        let note = note.into();
        if ok {
            self.notes.push(note);
        } else {
            self.pass = false;
            self.notes.push(format!("FAILED: {note}"));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claims: Vec<ClaimReport>,
    pub pass: bool,
    pub seed: u64,
    pub budget: Budget,
    pub bound_tolerance: f64,
    pub subgraph_tolerance: f64,
    pub version: String,
}

impl VerificationReport {
    /// Claims are sorted by id, then parameters.
    pub fn new(mut claims: Vec<ClaimReport>, budget: Budget) -> Self {
        claims.sort_by(|a, b| (&a.claim, &a.params).cmp(&(&b.claim, &b.params)));
        VerificationReport {
            pass: claims.iter().all(|c| c.pass),
            claims,
            seed: budget.seed,
            budget,
            bound_tolerance: BOUND_TOLERANCE,
            subgraph_tolerance: SUBGRAPH_TOLERANCE,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn constraint_point_validation() {
        assert!(ConstraintPoint::new(vec![0.5, 0.5], 0.125).is_ok());
        assert!(ConstraintPoint::new(vec![0.5, 0.5], 0.2).is_err());
        assert!(ConstraintPoint::new(vec![0.6, 0.5], 0.0).is_err());
        assert!(ConstraintPoint::new(vec![1.5, -0.5], 0.0).is_err());
        assert!(BlockWeights::new(vec![0.25, 0.25], 2).is_ok());
        assert!(BlockWeights::new(vec![0.5, 0.25], 2).is_err());
    }

    #[test]
    fn report_bookkeeping() {
        let mut r = ClaimReport::new("x", String::new(), &ratio(1, 2), 1e-9);
        r.bound(0.5);
        assert!(r.pass);
        r.bound(0.6);
        assert!(!r.pass);
        let v = VerificationReport::new(vec![r], Budget::default());
        assert!(!v.pass);
    }
}
