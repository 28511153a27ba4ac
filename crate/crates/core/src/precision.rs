//! Working-precision and tolerance settings shared by every evaluator.

use serde::{Deserialize, Serialize};

use crate::error::{AuditError, Result};

/// Floor used when dividing by a magnitude that may underflow.
pub const SCALE_FLOOR: f64 = 1e-300;

/// Largest `n` for which `n!` is computed exactly (20! < 2^64).
pub const FACTORIAL_CAP: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    /// Target significant digits; drives the acceleration depth of the eta series.
    pub working_digits: u32,
    /// Minimum number of accelerated eta terms.
    pub series_terms: u32,
    /// Tolerance for reference self-consistency (anchor checks).
    pub tol_ref: f64,
    /// Tolerance for claim comparison.
    pub tol_claim: f64,
    /// Half-width of the imaginary window accepted by the reference evaluators.
    pub max_imag: f64,
    /// Allow zeta evaluation near zeros of `1 - 2^(1-s)` through the functional equation.
    pub relation_fallback: bool,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        Self {
            working_digits: 15,
            series_terms: 64,
            tol_ref: 1e-10,
            tol_claim: 1e-9,
            max_imag: 50.0,
            relation_fallback: false,
        }
    }
}

impl PrecisionPolicy {
    pub fn validate(&self) -> Result<()> {
        if self.working_digits < 15 {
            return Err(AuditError::InvalidInput(format!(
                "working_digits = {} (must be >= 15)",
                self.working_digits
            )));
        }
        if self.series_terms < 16 {
            return Err(AuditError::InvalidInput(format!(
                "series_terms = {} (must be >= 16)",
                self.series_terms
            )));
        }
        if !(self.tol_ref >= 0.0 && self.tol_claim.is_finite() && self.tol_ref < self.tol_claim) {
            return Err(AuditError::InvalidInput(format!(
                "tolerances must satisfy 0 <= tol_ref < tol_claim (got {} and {})",
                self.tol_ref, self.tol_claim
            )));
        }
        if !(self.max_imag.is_finite() && self.max_imag > 0.0) {
            return Err(AuditError::InvalidInput(format!(
                "max_imag = {} (must be positive and finite)",
                self.max_imag
            )));
        }
        Ok(())
    }
}
