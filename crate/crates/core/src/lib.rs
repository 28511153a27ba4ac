//! Numerical audit of closed-form zeta and eta claims that are built from
//! power sums over complex arithmetic progressions.
//!
//! The crate pairs every claimed formula with an independent evaluation:
//! brute-force sums for the finite identities, and trusted Gamma / eta / zeta
//! evaluators for the limiting closed forms and candidate zeros. Each
//! comparison ends in a [`claims::ClaimVerdict`].

pub mod claims;
pub mod cli;
pub mod error;
pub mod parameterization;
pub mod power_sums;
pub mod precision;
pub mod reference;
pub mod report;

pub use claims::{Auditor, ClaimId, ClaimSpec, ClaimVerdict, Classification, GammaMode};
pub use error::{AuditError, Result};
pub use num_complex::Complex64;
pub use precision::PrecisionPolicy;
