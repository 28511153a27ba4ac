//! Browser bindings for three interactive audits. Every export takes plain
//! numbers and returns a JSON string, so the same functions run natively in tests.

use serde::Serialize;
use wasm_bindgen::prelude::wasm_bindgen;
use zeta_audit::claims::{build_zero_candidate, CandidateSource, ClaimVerdict};
use zeta_audit::reference::ref_zeta;
use zeta_audit::{Auditor, ClaimId, ClaimSpec, Complex64, GammaMode};

const MAX_CURVE_POINTS: u32 = 4000;

#[derive(Serialize)]
struct Failure {
    error: String,
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).unwrap_or_else(|e| failure(e.to_string()))
}

fn failure(error: impl Into<String>) -> String {
    serde_json::to_string(&Failure { error: error.into() }).expect("plain string serializes")
}

#[derive(Serialize)]
struct CurvePoint {
    t: f64,
    re: f64,
    im: f64,
    abs: f64,
}

#[derive(Serialize)]
struct Curve {
    sigma: f64,
    points: Vec<CurvePoint>,
    /// Ordinates where the real or imaginary part changes sign.
    sign_changes: Vec<f64>,
}

/// `zeta(sigma + i t)` sampled at `steps + 1` ordinates in `[t_min, t_max]`.
#[wasm_bindgen]
pub fn zeta_curve(sigma: f64, t_min: f64, t_max: f64, steps: u32) -> String {
    if !(sigma.is_finite() && t_min.is_finite() && t_max.is_finite()) || t_max <= t_min {
        return failure("need finite sigma and t_min < t_max");
    }
    if steps == 0 || steps > MAX_CURVE_POINTS {
        return failure(format!("steps must lie in 1..={MAX_CURVE_POINTS}"));
    }
    let dt = (t_max - t_min) / f64::from(steps);
    let mut points = Vec::with_capacity(steps as usize + 1);
    for i in 0..=steps {
        let t = t_min + dt * f64::from(i);
        // skipped samples (pole, exclusion disks, window) leave a gap in the curve
        if let Ok(r) = ref_zeta(Complex64::new(sigma, t)) {
            points.push(CurvePoint { t, re: r.value.re, im: r.value.im, abs: r.value.norm() });
        }
    }
    let sign_changes = points
        .windows(2)
        .filter(|w| w[0].re * w[1].re < 0.0 || w[0].im * w[1].im < 0.0)
        .map(|w| 0.5 * (w[0].t + w[1].t))
        .collect();
    to_json(&Curve { sigma, points, sign_changes })
}

#[derive(Serialize)]
struct ProbeCell {
    k: u32,
    m: u32,
    mode: &'static str,
    claimed_re: Option<f64>,
    claimed_im: Option<f64>,
    abs_residual: Option<f64>,
    classification: &'static str,
}

#[derive(Serialize)]
struct Probe {
    z_re: f64,
    z_im: f64,
    n: u32,
    reference_re: Option<f64>,
    reference_im: Option<f64>,
    max_spread: f64,
    nonunique: bool,
    cells: Vec<ProbeCell>,
}

/// Closed-form zeta at `Z` for every anchor pair `2 <= k < m <= max_anchor`, in both gamma modes.
#[wasm_bindgen]
pub fn uniqueness_probe(z_re: f64, z_im: f64, n: u32, max_anchor: u32) -> String {
    if !(3..=12).contains(&max_anchor) {
        return failure("max_anchor must lie in 3..=12");
    }
    let mut pairs = Vec::new();
    for k in 2..max_anchor {
        for m in k + 1..=max_anchor {
            pairs.push((k, m));
        }
    }
    let report = match Auditor::default().nonuniqueness_probe(Complex64::new(z_re, z_im), n, &pairs) {
        Ok(r) => r,
        Err(e) => return failure(e.to_string()),
    };
    let cells = report
        .rows
        .iter()
        .map(|row| ProbeCell {
            k: row.k,
            m: row.m,
            mode: row.gamma_mode.as_str(),
            claimed_re: row.verdict.claimed.map(|c| c.re),
            claimed_im: row.verdict.claimed.map(|c| c.im),
            abs_residual: row.verdict.abs_residual,
            classification: row.verdict.classification.as_str(),
        })
        .collect();
    to_json(&Probe {
        z_re,
        z_im,
        n,
        reference_re: report.reference.map(|r| r.re),
        reference_im: report.reference.map(|r| r.im),
        max_spread: report.max_spread,
        nonunique: report.nonunique,
        cells,
    })
}

#[derive(Serialize)]
struct CandidateAudit {
    source: &'static str,
    t: i32,
    n: u32,
    gamma1: Option<f64>,
    gamma2: Option<f64>,
    feasible: bool,
    reference_abs: Option<f64>,
    classification: &'static str,
    notes: String,
    /// Closed form fed this candidate (ordinary and alternating sources only); it solves to `a = d`.
    closed_form_re: Option<f64>,
    closed_form_im: Option<f64>,
}

fn parse_source(name: &str) -> Option<CandidateSource> {
    match name.to_ascii_lowercase().as_str() {
        "t14" => Some(CandidateSource::T14),
        "t15" => Some(CandidateSource::T15),
        "c2-arccos" | "arccos" => Some(CandidateSource::C2Arccos),
        "c2-arcsin" | "arcsin" => Some(CandidateSource::C2Arcsin),
        _ => None,
    }
}

/// Builds the candidate zero for `(t, k, m)` and audits it at `(n - 1) s`.
#[wasm_bindgen]
pub fn audit_candidate(source: &str, t: i32, k: u32, m: u32, n: u32) -> String {
    let Some(src) = parse_source(source) else {
        return failure(format!("unknown source '{source}' (t14, t15, c2-arccos, c2-arcsin)"));
    };
    let auditor = Auditor::default();
    let (candidate, verdict): (_, ClaimVerdict) = match build_zero_candidate(t, k, m, src) {
        Ok(c) => (Some(c), auditor.audit_zero_candidate(&c, n)),
        Err(_) => (None, auditor.evaluate(&ClaimSpec::zero(src, t, k, m, n))),
    };
    let closed_form = candidate.filter(|c| c.feasible && n >= 3).and_then(|c| {
        let (id, eta) = match src {
            CandidateSource::T14 => (ClaimId::T10Zeta, false),
            CandidateSource::T15 => (ClaimId::T11Eta, true),
            _ => return None,
        };
        let spec = ClaimSpec::from_candidate(id, &c, n, GammaMode::GammaEqualsZ);
        let claimed = if eta { auditor.claimed_eta(&spec) } else { auditor.claimed_zeta(&spec) };
        claimed.ok().map(|c| c.value)
    });
    to_json(&CandidateAudit {
        source: src.as_str(),
        t,
        n,
        gamma1: candidate.map(|c| c.gamma1),
        gamma2: candidate.map(|c| c.gamma2),
        feasible: candidate.is_some_and(|c| c.feasible),
        reference_abs: verdict.reference.map(|r| r.norm()),
        classification: verdict.classification.as_str(),
        notes: verdict.notes,
        closed_form_re: closed_form.map(|c| c.re),
        closed_form_im: closed_form.map(|c| c.im),
    })
}

#[wasm_bindgen]
pub fn version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}
