//! The complex-exponent parameterization `x^s = a + (x-1) d`.
//!
//! Angles always use the principal arctan branch of the component ratio, never
//! a two-argument angle. When the real part `a1 + (x-1) d1` is not positive the
//! reconstructed exponent points into the wrong half plane; that case is
//! reported through [`ExponentParts::quadrant_mismatch`] rather than corrected.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{AuditError, Result};
use crate::power_sums::{ComplexPair, Degeneracy};

/// Which printed form of `x^s` / `x^-s` to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Real-part quotient over `cos(B ln x)`.
    #[default]
    Cosine,
    /// Imaginary-part quotient over `sin(B ln x)`.
    Sine,
}

/// Exponent components for a single `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentParts {
    pub x: f64,
    pub b1: f64,
    /// `None` when the cosine log-quotient is not positive.
    pub a1: Option<f64>,
    /// `None` when the sine log-quotient is not positive or the sine vanishes.
    pub a2: Option<f64>,
    pub quadrant_mismatch: bool,
}

impl ExponentParts {
    /// `|A1 - A2|` when both exist.
    pub fn discrepancy(&self) -> Option<f64> {
        Some((self.a1? - self.a2?).abs())
    }

    pub fn exponent(&self, branch: Branch) -> Option<Complex64> {
        let re = match branch {
            Branch::Cosine => self.a1?,
            Branch::Sine => self.a2?,
        };
        Some(Complex64::new(re, self.b1))
    }
}

fn ln_x(x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) || x == 1.0 {
        return Err(AuditError::InvalidDomain(x));
    }
    Ok(x.ln())
}

/// `(a1 + (x-1) d1, a2 + (x-1) d2)`.
pub fn progression_at(x: f64, p: &ComplexPair) -> (f64, f64) {
    (p.a1 + (x - 1.0) * p.d1, p.a2 + (x - 1.0) * p.d2)
}

/// Principal-branch arctan of the ratio, i.e. `B1 ln x`.
fn angle(x: f64, p: &ComplexPair) -> Result<f64> {
    let (re, im) = progression_at(x, p);
    if re == 0.0 {
        return Err(AuditError::BranchUndefined);
    }
    Ok((im / re).atan())
}

pub fn compute_b1(x: f64, p: &ComplexPair) -> Result<f64> {
    let lx = ln_x(x)?;
    Ok(angle(x, p)? / lx)
}

pub fn compute_a1(x: f64, p: &ComplexPair, b1: f64) -> Result<f64> {
    let lx = ln_x(x)?;
    let cos = (b1 * lx).cos();
    if cos == 0.0 {
        return Err(AuditError::Singular("cos(B1 ln x) = 0"));
    }
    let q = progression_at(x, p).0 / cos;
    if !(q > 0.0) {
        return Err(AuditError::LogDomain(q));
    }
    Ok(q.ln() / lx)
}

pub fn compute_a2(x: f64, p: &ComplexPair, b1: f64) -> Result<f64> {
    let lx = ln_x(x)?;
    let sin = (b1 * lx).sin();
    if sin == 0.0 {
        return Err(AuditError::Singular("sin(B1 ln x) = 0"));
    }
    let q = progression_at(x, p).1 / sin;
    if !(q > 0.0) {
        return Err(AuditError::LogDomain(q));
    }
    Ok(q.ln() / lx)
}

pub fn exponent_parts(x: f64, p: &ComplexPair) -> Result<ExponentParts> {
    let b1 = compute_b1(x, p)?;
    Ok(ExponentParts {
        x,
        b1,
        a1: compute_a1(x, p, b1).ok(),
        a2: compute_a2(x, p, b1).ok(),
        quadrant_mismatch: progression_at(x, p).0 <= 0.0,
    })
}

/// Branch prefactor and the angle `theta = B1 ln x` (recomputed through B1).
fn branch_setup(x: f64, p: &ComplexPair, branch: Branch) -> Result<(f64, f64)> {
    let lx = ln_x(x)?;
    let theta = compute_b1(x, p)? * lx;
    let (re, im) = progression_at(x, p);
    match branch {
        Branch::Cosine => Ok((re, theta.cos())),
        Branch::Sine => {
            if im == 0.0 || theta.sin() == 0.0 {
                return Err(AuditError::Singular("sine branch needs a nonzero imaginary part"));
            }
            Ok((im, theta.sin()))
        }
    }
    .map(|(num, trig)| (num / trig, theta))
}

/// Printed product form of `x^s`.
pub fn reconstruct_xs(x: f64, p: &ComplexPair, branch: Branch) -> Result<Complex64> {
    let (modulus, theta) = branch_setup(x, p, branch)?;
    Ok(Complex64::new(theta.cos(), theta.sin()) * modulus)
}

/// Printed product form of `x^-s`. The sine form carries the leading minus
/// sign exactly as written, so its product with [`reconstruct_xs`] is `-1`.
pub fn reconstruct_x_negs(x: f64, p: &ComplexPair, branch: Branch) -> Result<Complex64> {
    let (modulus, theta) = branch_setup(x, p, branch)?;
    let sign = match branch {
        Branch::Cosine => 1.0,
        Branch::Sine => -1.0,
    };
    Ok(Complex64::new(theta.cos(), -theta.sin()) * (sign / modulus))
}

/// `|cos(arctan(ratio)) / (a1 + (x-1) d1)|`, which equals `|x^-s|`.
pub fn tail_decay_magnitude(x: f64, p: &ComplexPair) -> Result<f64> {
    ln_x(x)?;
    let theta = angle(x, p)?;
    Ok((theta.cos() / progression_at(x, p).0).abs())
}

/// Explicit constants for `tail_decay_magnitude(x) <= c / x` on `x >= x0`.
///
/// Writing `a + (x-1) d = x d + (a - d)` gives `|.| >= x |d| / 2` once
/// `x >= 2 |a - d| / |d|`.
pub fn tail_decay_bound(p: &ComplexPair) -> Result<(f64, f64)> {
    let d = p.d().norm();
    if d == 0.0 {
        return Err(AuditError::ZeroStep);
    }
    let x0 = (2.0 * (p.a() - p.d()).norm() / d).max(2.0);
    Ok((2.0 / d, x0))
}

/// Progression parameters that interpolate `x^gamma` at the two anchors `k` and `m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamSolution {
    pub params: ComplexPair,
    pub gamma1: f64,
    pub gamma2: f64,
    pub k: u32,
    pub m: u32,
    pub degenerate: Degeneracy,
    /// Largest relative mismatch of the four anchor equations.
    pub consistency: f64,
}

impl ParamSolution {
    pub fn gamma(&self) -> Complex64 {
        Complex64::new(self.gamma1, self.gamma2)
    }
}

/// `(cos(g2 ln x) x^g1, sin(g2 ln x) x^g1)` with `x^g1 = exp(g1 ln x)`.
pub fn anchor_value(gamma1: f64, gamma2: f64, x: u32) -> (f64, f64) {
    let lx = f64::from(x).ln();
    let mag = (gamma1 * lx).exp();
    let (s, c) = (gamma2 * lx).sin_cos();
    (c * mag, s * mag)
}

fn anchor_mismatch(a: f64, d: f64, x: u32, target: f64) -> f64 {
    let step = f64::from(x - 1) * d;
    let scale = a.abs().max(step.abs()).max(target.abs()).max(f64::MIN_POSITIVE);
    (a + step - target).abs() / scale
}

pub fn solve_parameters(gamma1: f64, gamma2: f64, k: u32, m: u32) -> Result<ParamSolution> {
    if k == m {
        return Err(AuditError::EqualAnchors(k));
    }
    if k < 2 || m < 2 {
        return Err(AuditError::InvalidInput(format!("anchors must exceed 1 (k = {k}, m = {m})")));
    }
    if !(gamma1.is_finite() && gamma2.is_finite()) {
        return Err(AuditError::InvalidInput("non-finite gamma".into()));
    }
    let (ck, sk) = anchor_value(gamma1, gamma2, k);
    let (cm, sm) = anchor_value(gamma1, gamma2, m);
    let span = f64::from(k) - f64::from(m);
    let d1 = (ck - cm) / span;
    let a1 = ck - f64::from(k - 1) * d1;
    let d2 = (sk - sm) / span;
    let a2 = sk - f64::from(k - 1) * d2;
    let params = ComplexPair::allowing_zero_step(a1, a2, d1, d2)?;
    let consistency = [
        anchor_mismatch(a1, d1, k, ck),
        anchor_mismatch(a1, d1, m, cm),
        anchor_mismatch(a2, d2, k, sk),
        anchor_mismatch(a2, d2, m, sm),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    Ok(ParamSolution {
        params,
        gamma1,
        gamma2,
        k,
        m,
        degenerate: params.degeneracy(),
        consistency,
    })
}
