//! Trusted evaluators for Gamma, eta and zeta in double precision.
//!
//! * Gamma: Lanczos (g = 7, nine coefficients) for `Re s >= 1/2`, reflection below.
//! * eta: Cohen-Rodriguez Villegas-Zagier acceleration of the alternating series.
//! * zeta: `eta(s) / (1 - 2^(1-s))` for `Re s > -2`, functional equation otherwise.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{AuditError, Result};
use crate::precision::PrecisionPolicy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    EtaAccel,
    FunctionalEq,
    Reflection,
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: Complex64,
    /// Modelled upper bound on the absolute error; not a guarantee.
    pub est_error: f64,
    pub method: Method,
}

/// Left edge of the window where the accelerated eta series is used.
pub const ETA_MIN_REAL: f64 = -2.0;
/// Radius of the exclusion disk around zeros of `1 - 2^(1-s)` other than `s = 1`.
pub const RELATION_EXCLUSION: f64 = 1e-6;
/// The accelerated sum needs `d_n < f64::MAX`; `(3 + sqrt 8)^400` does not fit.
const MAX_ETA_TERMS: u32 = 380;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];
const LANCZOS_REL_ERR: f64 = 2e-15;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn sin_pi_real(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r == 0.0 || r == 1.0 {
        0.0
    } else if r < 0.5 {
        (PI * r).sin()
    } else if r < 1.5 {
        (PI * (1.0 - r)).sin()
    } else {
        (PI * (r - 2.0)).sin()
    }
}

/// `sin(pi z)` with exact argument reduction on the real part, so that
/// integer (and, for the cosine part, half-integer) real parts give exact zeros.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let (sh, ch) = ((PI * z.im).sinh(), (PI * z.im).cosh());
    c(sin_pi_real(z.re) * ch, sin_pi_real(z.re + 0.5) * sh)
}

fn is_nonpositive_integer(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0
}

fn lanczos(s: Complex64) -> Complex64 {
    let z = s - 1.0;
    let mut series = c(LANCZOS_COEF[0], 0.0);
    for (i, &coef) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series += coef / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    let log_gamma = 0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + series.ln();
    log_gamma.exp()
}

pub fn ref_gamma(s: Complex64) -> Result<EvalResult> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(AuditError::InvalidInput(format!("non-finite argument {s}")));
    }
    if is_nonpositive_integer(s) {
        return Err(AuditError::Pole { func: "gamma", re: s.re, im: s.im });
    }
    if s.re >= 0.5 {
        let value = lanczos(s);
        let rel = LANCZOS_REL_ERR * (1.0 + f64::EPSILON * s.norm() * s.norm().ln().max(1.0));
        return Ok(EvalResult { value, est_error: value.norm() * rel, method: Method::Direct });
    }
    let value = PI / (sin_pi(s) * lanczos(1.0 - s));
    let rel = 2.0 * LANCZOS_REL_ERR + 4.0 * f64::EPSILON * PI * s.norm();
    Ok(EvalResult { value, est_error: value.norm() * rel, method: Method::Reflection })
}

fn check_window(s: Complex64, policy: &PrecisionPolicy) -> Result<()> {
    if !(s.re.is_finite() && s.im.is_finite()) || s.im.abs() > policy.max_imag {
        return Err(AuditError::OutOfWindow { re: s.re, im: s.im });
    }
    Ok(())
}

/// Number of accelerated terms for `s` under `policy`.
pub fn eta_terms(s: Complex64, policy: &PrecisionPolicy) -> u32 {
    let digits = f64::from(policy.working_digits) + 3.0;
    let est = 1.31 * digits + 1.0 * s.im.abs() + 2.0 * (-s.re).max(0.0) + 10.0;
    (est.ceil() as u32).max(policy.series_terms).min(MAX_ETA_TERMS)
}

/// CVZ weights `d_k` for `k = 0..=n`, normalised so that `d_n = 1`.
fn cvz_weights(n: u32) -> Vec<f64> {
    let nf = f64::from(n);
    let mut term = 1.0 / nf;
    let mut acc = term;
    let mut d = Vec::with_capacity(n as usize + 1);
    d.push(nf * acc);
    for i in 0..n {
        let fi = f64::from(i);
        term *= 4.0 * (nf + fi) * (nf - fi) / ((2.0 * fi + 1.0) * (2.0 * fi + 2.0));
        acc += term;
        d.push(nf * acc);
    }
    let dn = d[n as usize];
    d.iter_mut().for_each(|v| *v /= dn);
    d
}

pub fn ref_eta(s: Complex64) -> Result<EvalResult> {
    ref_eta_with(s, &PrecisionPolicy::default())
}

pub fn ref_eta_with(s: Complex64, policy: &PrecisionPolicy) -> Result<EvalResult> {
    check_window(s, policy)?;
    if s.re <= ETA_MIN_REAL {
        return Err(AuditError::OutOfWindow { re: s.re, im: s.im });
    }
    let n = eta_terms(s, policy);
    let d = cvz_weights(n);
    let mut sum = c(0.0, 0.0);
    let mut magnitude = 0.0;
    for k in 0..n {
        let term = (-s * f64::from(k + 1).ln()).exp();
        let w = 1.0 - d[k as usize];
        let signed = if k % 2 == 0 { w } else { -w };
        sum += term * signed;
        magnitude += term.norm() * w;
    }
    // Truncation bound (3 + sqrt 8)^-n (1 + 2|t|) e^{pi |t| / 2} / |Gamma(s)|.
    let recip_gamma = ref_gamma(s).map(|g| 1.0 / g.value.norm()).unwrap_or(0.0);
    let log_trunc = (3.0f64).ln() - f64::from(n) * (3.0 + 8f64.sqrt()).ln()
        + (1.0 + 2.0 * s.im.abs()).ln()
        + PI * s.im.abs() / 2.0;
    let truncation = log_trunc.exp() * recip_gamma;
    let rounding = 4.0 * f64::EPSILON * f64::from(n) * magnitude.max(1.0);
    Ok(EvalResult { value: sum, est_error: truncation + rounding, method: Method::EtaAccel })
}

/// `1 - 2^(1-s)`.
pub fn eta_zeta_factor(s: Complex64) -> Complex64 {
    1.0 - ((1.0 - s) * LN_2).exp()
}

/// Distance from `s` to the nearest zero `1 + 2 pi i j / ln 2` with `j != 0`.
pub(crate) fn relation_degenerate_distance(s: Complex64) -> f64 {
    let period = 2.0 * PI / LN_2;
    let j = (s.im / period).round();
    let j = if j == 0.0 { if s.im >= 0.0 { 1.0 } else { -1.0 } } else { j };
    (s - c(1.0, j * period)).norm()
}

pub fn ref_zeta(s: Complex64) -> Result<EvalResult> {
    ref_zeta_with(s, &PrecisionPolicy::default())
}

pub fn ref_zeta_with(s: Complex64, policy: &PrecisionPolicy) -> Result<EvalResult> {
    check_window(s, policy)?;
    if s == c(1.0, 0.0) {
        return Err(AuditError::Pole { func: "zeta", re: 1.0, im: 0.0 });
    }
    if s.re <= ETA_MIN_REAL {
        return functional_equation_with(s, policy);
    }
    if relation_degenerate_distance(s) < RELATION_EXCLUSION {
        if policy.relation_fallback {
            return functional_equation_with(s, policy);
        }
        return Err(AuditError::RelationDegenerate { re: s.re, im: s.im });
    }
    let eta = ref_eta_with(s, policy)?;
    let factor = eta_zeta_factor(s);
    Ok(EvalResult {
        value: eta.value / factor,
        est_error: eta.est_error / factor.norm() + f64::EPSILON * (eta.value / factor).norm(),
        method: Method::EtaAccel,
    })
}

/// `Gamma(1-s) (2 pi)^(s-1) 2 sin(pi s / 2) zeta(1-s)`.
pub fn functional_equation_rhs(s: Complex64) -> Result<EvalResult> {
    functional_equation_with(s, &PrecisionPolicy::default())
}

pub fn functional_equation_with(s: Complex64, policy: &PrecisionPolicy) -> Result<EvalResult> {
    check_window(s, policy)?;
    let reflected = 1.0 - s;
    if reflected.re <= ETA_MIN_REAL {
        return Err(AuditError::OutOfWindow { re: s.re, im: s.im });
    }
    let gamma = ref_gamma(reflected)?;
    let zeta = ref_zeta_with(reflected, policy)?;
    let prefactor = gamma.value * ((s - 1.0) * (2.0 * PI).ln()).exp() * 2.0 * sin_pi(s / 2.0);
    let value = prefactor * zeta.value;
    let gamma_rel = gamma.est_error / gamma.value.norm();
    let est_error = prefactor.norm() * zeta.est_error
        + value.norm() * (gamma_rel + 8.0 * f64::EPSILON * (1.0 + s.norm()));
    Ok(EvalResult { value, est_error, method: Method::FunctionalEq })
}

/// First `terms` terms of `sum r^-w` plus the bound `terms^(1 - Re w) / (Re w - 1)`
/// on the discarded tail. Only meaningful for `Re w > 1`.
pub fn direct_zeta_sum(w: Complex64, terms: u32) -> Result<(Complex64, f64)> {
    if !(w.re > 1.0) {
        return Err(AuditError::Precondition(format!("Dirichlet series diverges at Re w = {}", w.re)));
    }
    let mut sum = c(0.0, 0.0);
    for r in (1..=terms).rev() {
        sum += (-w * f64::from(r).ln()).exp();
    }
    let tail = f64::from(terms).powf(1.0 - w.re) / (w.re - 1.0);
    Ok((sum, tail))
}

/// Alternating analogue of [`direct_zeta_sum`]; the tail is bounded by the first omitted term.
pub fn direct_eta_sum(w: Complex64, terms: u32) -> Result<(Complex64, f64)> {
    if !(w.re > 1.0) {
        return Err(AuditError::Precondition(format!("absolute convergence needs Re w > 1 (got {})", w.re)));
    }
    let mut sum = c(0.0, 0.0);
    for r in (1..=terms).rev() {
        let t = (-w * f64::from(r).ln()).exp();
        sum += if r % 2 == 1 { t } else { -t };
    }
    let tail = f64::from(terms).powf(1.0 - w.re) / (w.re - 1.0);
    Ok((sum, tail))
}
