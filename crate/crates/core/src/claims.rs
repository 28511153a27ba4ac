//! Builds the claimed closed-form values and candidate zeros, evaluates them
//! against the reference functions, and classifies every comparison.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{AuditError, Result};
use crate::parameterization::{solve_parameters, ParamSolution};
use crate::power_sums::{
    binomial_weighted_sum, check_factorial_cap, factorial, factorial_weighted_sum, limit_l_term,
    limit_s_term, theorem1_residual, theorem2_residual, ComplexPair, ProgressionQuery,
};
use crate::precision::{PrecisionPolicy, SCALE_FLOOR};
use crate::reference::{
    eta_zeta_factor, ref_eta_with, ref_gamma, ref_zeta_with, relation_degenerate_distance, sin_pi,
    RELATION_EXCLUSION,
};

/// Relative gap below which solved `a` and `d` are treated as equal.
pub const A_EQUALS_D_TOL: f64 = 1e-12;
/// Relative tolerance for the `a = d` fixed point of the zero construction.
pub const FIXED_POINT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClaimId {
    T1Identity,
    T2Identity,
    T7ClosedForm,
    T8ClosedForm,
    T10Zeta,
    T11Eta,
    T12Strip,
    T13Reflection,
    T14Zero,
    T15Zero,
    C2RhZero,
    Nonuniqueness,
}

impl ClaimId {
    pub const ALL: [ClaimId; 12] = [
        ClaimId::T1Identity,
        ClaimId::T2Identity,
        ClaimId::T7ClosedForm,
        ClaimId::T8ClosedForm,
        ClaimId::T10Zeta,
        ClaimId::T11Eta,
        ClaimId::T12Strip,
        ClaimId::T13Reflection,
        ClaimId::T14Zero,
        ClaimId::T15Zero,
        ClaimId::C2RhZero,
        ClaimId::Nonuniqueness,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ClaimId::T1Identity => "T1_IDENTITY",
            ClaimId::T2Identity => "T2_IDENTITY",
            ClaimId::T7ClosedForm => "T7_CLOSED_FORM",
            ClaimId::T8ClosedForm => "T8_CLOSED_FORM",
            ClaimId::T10Zeta => "T10_ZETA",
            ClaimId::T11Eta => "T11_ETA",
            ClaimId::T12Strip => "T12_STRIP",
            ClaimId::T13Reflection => "T13_REFLECTION",
            ClaimId::T14Zero => "T14_ZERO",
            ClaimId::T15Zero => "T15_ZERO",
            ClaimId::C2RhZero => "C2_RH_ZERO",
            ClaimId::Nonuniqueness => "NONUNIQUENESS",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How the target argument `Z` is turned into the solver exponent `gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GammaMode {
    /// `gamma = Z`.
    GammaEqualsZ,
    /// `gamma = Z / (n - 1)`, so that `(n - 1) gamma = Z`.
    GammaEqualsZOverNm1,
}

impl GammaMode {
    pub const BOTH: [GammaMode; 2] = [GammaMode::GammaEqualsZ, GammaMode::GammaEqualsZOverNm1];

    pub fn as_str(&self) -> &'static str {
        match self {
            GammaMode::GammaEqualsZ => "GAMMA_EQUALS_Z",
            GammaMode::GammaEqualsZOverNm1 => "GAMMA_EQUALS_Z_OVER_NM1",
        }
    }

    pub fn resolve(&self, z: Complex64, n: u32) -> Complex64 {
        match self {
            GammaMode::GammaEqualsZ => z,
            GammaMode::GammaEqualsZOverNm1 => z / f64::from(n - 1),
        }
    }

    /// Inverse of [`GammaMode::resolve`].
    pub fn target_for(&self, gamma: Complex64, n: u32) -> Complex64 {
        match self {
            GammaMode::GammaEqualsZ => gamma,
            GammaMode::GammaEqualsZOverNm1 => gamma * f64::from(n - 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CandidateSource {
    T14,
    T15,
    C2Arccos,
    C2Arcsin,
}

impl CandidateSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            CandidateSource::T14 => "T14",
            CandidateSource::T15 => "T15",
            CandidateSource::C2Arccos => "C2_ARCCOS",
            CandidateSource::C2Arcsin => "C2_ARCSIN",
        }
    }

    pub fn claim_id(&self) -> ClaimId {
        match self {
            CandidateSource::T14 => ClaimId::T14Zero,
            CandidateSource::T15 => ClaimId::T15Zero,
            CandidateSource::C2Arccos | CandidateSource::C2Arcsin => ClaimId::C2RhZero,
        }
    }

    fn is_alternating(&self) -> bool {
        matches!(self, CandidateSource::T15)
    }
}

/// One auditable claim. Which fields matter depends on `claim_id`; see
/// [`ClaimSpec::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClaimSpec {
    pub claim_id: ClaimId,
    pub z: Complex64,
    pub n: u32,
    pub k: u32,
    pub m: u32,
    pub t: i32,
    pub gamma_mode: GammaMode,
    pub source: Option<CandidateSource>,
    /// Progression for the finite identities.
    pub params: Option<ComplexPair>,
}

impl ClaimSpec {
    pub fn closed_form(claim_id: ClaimId, z: Complex64, n: u32, k: u32, m: u32, mode: GammaMode) -> Self {
        Self { claim_id, z, n, k, m, t: 0, gamma_mode: mode, source: None, params: None }
    }

    pub fn identity(claim_id: ClaimId, params: ComplexPair, k: u32, n: u32) -> Self {
        Self {
            claim_id,
            z: Complex64::new(0.0, 0.0),
            n,
            k,
            m: 0,
            t: 0,
            gamma_mode: GammaMode::GammaEqualsZ,
            source: None,
            params: Some(params),
        }
    }

    pub fn zero(source: CandidateSource, t: i32, k: u32, m: u32, n: u32) -> Self {
        Self {
            claim_id: source.claim_id(),
            z: Complex64::new(0.0, 0.0),
            n,
            k,
            m,
            t,
            gamma_mode: GammaMode::GammaEqualsZ,
            source: Some(source),
            params: None,
        }
    }

    /// A closed-form spec whose solver exponent is exactly the candidate `s`.
    pub fn from_candidate(claim_id: ClaimId, c: &ZeroCandidate, n: u32, mode: GammaMode) -> Self {
        let z = mode.target_for(c.s(), n);
        Self::closed_form(claim_id, z, n, c.k, c.m, mode)
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma_mode.resolve(self.z, self.n)
    }

    pub fn with_z(&self, z: Complex64) -> Self {
        Self { z, ..*self }
    }

    pub fn validate(&self) -> Result<()> {
        let need_anchors = !matches!(self.claim_id, ClaimId::T1Identity | ClaimId::T2Identity);
        if need_anchors {
            if self.k == self.m {
                return Err(AuditError::EqualAnchors(self.k));
            }
            if self.k < 2 || self.m < 2 {
                return Err(AuditError::InvalidInput(format!(
                    "anchors must exceed 1 (k = {}, m = {})",
                    self.k, self.m
                )));
            }
        }
        match self.claim_id {
            ClaimId::T1Identity | ClaimId::T2Identity => {
                if self.params.is_none() {
                    return Err(AuditError::InvalidInput("identity claim without (a, d)".into()));
                }
                self.require_n(3)
            }
            ClaimId::T14Zero | ClaimId::T15Zero | ClaimId::C2RhZero => {
                match self.source {
                    Some(src) if src.claim_id() == self.claim_id => {}
                    _ => return Err(AuditError::InvalidInput("zero claim needs a matching source".into())),
                }
                self.require_n(2)
            }
            _ => {
                if !(self.z.re.is_finite() && self.z.im.is_finite()) {
                    return Err(AuditError::InvalidInput("non-finite Z".into()));
                }
                self.require_n(3)
            }
        }
    }

    fn require_n(&self, min: u32) -> Result<()> {
        if self.n < min {
            return Err(AuditError::InvalidInput(format!("n = {} must be >= {min}", self.n)));
        }
        check_factorial_cap(self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Classification {
    Confirmed,
    Refuted,
    Degenerate,
    Inconclusive,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Confirmed => "CONFIRMED",
            Classification::Refuted => "REFUTED",
            Classification::Degenerate => "DEGENERATE",
            Classification::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// Ten-fold banded comparison of a residual against `tol * scale`.
pub fn classify_scaled(residual: f64, scale: f64, tol: f64) -> Classification {
    if !residual.is_finite() {
        Classification::Refuted
    } else if residual <= tol * scale {
        Classification::Confirmed
    } else if residual >= 10.0 * tol * scale {
        Classification::Refuted
    } else {
        Classification::Inconclusive
    }
}

/// Claim rule: bands on `abs_residual / max(1, |reference|)`.
pub fn classify(abs_residual: f64, reference: Complex64, tol_claim: f64) -> Classification {
    classify_scaled(abs_residual, reference.norm().max(1.0), tol_claim)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimVerdict {
    pub spec: ClaimSpec,
    /// Absent only for DEGENERATE verdicts where the claim could not be formed.
    pub claimed: Option<Complex64>,
    pub reference: Option<Complex64>,
    pub abs_residual: Option<f64>,
    pub classification: Classification,
    pub notes: String,
}

impl ClaimVerdict {
    fn degenerate(spec: ClaimSpec, notes: impl Into<String>) -> Self {
        Self {
            spec,
            claimed: None,
            reference: None,
            abs_residual: None,
            classification: Classification::Degenerate,
            notes: notes.into(),
        }
    }

    fn compared(spec: ClaimSpec, claimed: Complex64, reference: Complex64, tol: f64, notes: Vec<String>) -> Self {
        let abs_residual = (claimed - reference).norm();
        Self {
            spec,
            claimed: Some(claimed),
            reference: Some(reference),
            abs_residual: Some(abs_residual),
            classification: classify(abs_residual, reference, tol),
            notes: notes.join("; "),
        }
    }
}

/// A candidate zero `s = gamma1 + i gamma2` built from `(t, k, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroCandidate {
    pub gamma1: f64,
    /// Zero when `feasible` is false: no inverse trigonometric function was taken.
    pub gamma2: f64,
    pub t: i32,
    pub k: u32,
    pub m: u32,
    pub source: CandidateSource,
    pub feasible: bool,
}

impl ZeroCandidate {
    pub fn s(&self) -> Complex64 {
        Complex64::new(self.gamma1, self.gamma2)
    }
}

fn check_anchor_pair(k: u32, m: u32) -> Result<()> {
    if k == m {
        return Err(AuditError::EqualAnchors(k));
    }
    if k < 2 || m < 2 {
        return Err(AuditError::InvalidInput(format!("anchors must exceed 1 (k = {k}, m = {m})")));
    }
    Ok(())
}

pub fn build_zero_candidate(t: i32, k: u32, m: u32, source: CandidateSource) -> Result<ZeroCandidate> {
    check_anchor_pair(k, m)?;
    let (lk, lm) = (f64::from(k).ln(), f64::from(m).ln());
    let span = lk - lm;
    let tf = f64::from(t);
    match source {
        CandidateSource::T14 | CandidateSource::T15 => {
            // adding 0.0 turns the t = 0 result into +0
            let gamma2 = tf * PI / span + 0.0;
            let cos_k = (gamma2 * lk).cos();
            if cos_k.abs() <= 4.0 * f64::EPSILON {
                return Err(AuditError::UndefinedCandidate("cos(gamma2 ln k) = 0".into()));
            }
            let ratio = (gamma2 * lm).cos() / cos_k;
            if !(ratio > 0.0) {
                return Err(AuditError::UndefinedCandidate(format!(
                    "log of non-positive cosine ratio {ratio:.17e}"
                )));
            }
            let gamma1 = 1.0 + ratio.ln() / span;
            Ok(ZeroCandidate { gamma1, gamma2, t, k, m, source, feasible: true })
        }
        CandidateSource::C2Arccos | CandidateSource::C2Arcsin => {
            let phase = tf * PI * lk / span;
            let bound = (f64::from(k) / f64::from(m)).sqrt();
            let (sin, cos) = phase.sin_cos();
            let feasible = cos.abs() <= bound && sin.abs() <= bound;
            let gamma2 = if !feasible {
                0.0
            } else {
                let shrink = (f64::from(m) / f64::from(k)).sqrt();
                match source {
                    CandidateSource::C2Arccos => (shrink * cos).clamp(-1.0, 1.0).acos() / lm,
                    _ => (shrink * sin).clamp(-1.0, 1.0).asin() / lm,
                }
            };
            Ok(ZeroCandidate { gamma1: 0.5, gamma2, t, k, m, source, feasible })
        }
    }
}

/// A claimed value plus the parameter solution that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Claimed {
    pub value: Complex64,
    pub solution: ParamSolution,
    /// Solved `a` and `d` coincide, so every limit term vanishes and the value is exactly zero.
    pub a_equals_d: bool,
    /// Set when `Z` lies outside the stated domain of the closed form. The
    /// formula is still evaluated; the verdict becomes DEGENERATE.
    pub domain_violation: Option<String>,
}

fn a_equals_d(p: &ComplexPair) -> bool {
    let (a, d) = (p.a(), p.d());
    (a - d).norm() <= A_EQUALS_D_TOL * a.norm().max(d.norm()).max(SCALE_FLOOR)
}

fn factorial_prefactor(n: u32) -> Result<f64> {
    Ok(factorial(n - 1)? as f64 * factorial(n - 3)? as f64)
}

/// Name and value of each reference anchor.
pub const ANCHORS: [(&str, f64); 4] = [
    ("zeta(2)", std::f64::consts::PI * std::f64::consts::PI / 6.0),
    ("zeta(3)", 1.202_056_903_159_594_2),
    ("eta(1)", std::f64::consts::LN_2),
    ("zeta(-1)", -1.0 / 12.0),
];
/// Ordinate close to the first nontrivial zero and the bound `|zeta|` must stay under.
pub const FIRST_ZERO_ORDINATE: f64 = 14.134725;
pub const FIRST_ZERO_BOUND: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnchorCheck {
    pub name: String,
    pub computed: Complex64,
    pub expected: f64,
    pub abs_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnchorReport {
    pub checks: Vec<AnchorCheck>,
}

impl AnchorReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub k: u32,
    pub m: u32,
    pub gamma_mode: GammaMode,
    pub verdict: ClaimVerdict,
}

/// Outcome of evaluating one closed form under several `(k, m)` choices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpreadReport {
    pub z: Complex64,
    pub n: u32,
    pub reference: Option<Complex64>,
    pub rows: Vec<ProbeRow>,
    /// Largest pairwise distance between claimed values, per gamma mode.
    pub spread_by_mode: Vec<(GammaMode, f64)>,
    pub max_spread: f64,
    pub nonunique: bool,
}

/// Evaluates claims under one [`PrecisionPolicy`].
#[derive(Debug, Clone, Default)]
pub struct Auditor {
    pub policy: PrecisionPolicy,
}

impl Auditor {
    pub fn new(policy: PrecisionPolicy) -> Result<Self> {
        policy.validate()?;
        Ok(Self { policy })
    }

    fn solve(&self, spec: &ClaimSpec) -> Result<ParamSolution> {
        let gamma = spec.gamma();
        solve_parameters(gamma.re, gamma.im, spec.k, spec.m)
    }

    fn limit_closed_form(&self, spec: &ClaimSpec, alternating: bool) -> Result<Claimed> {
        spec.validate()?;
        let solution = self.solve(spec)?;
        let p = solution.params;
        if p.degeneracy().step_is_zero() {
            return Err(AuditError::ZeroStep);
        }
        if a_equals_d(&p) {
            return Ok(Claimed {
                value: Complex64::new(0.0, 0.0),
                solution,
                a_equals_d: true,
                domain_violation: None,
            });
        }
        let d = p.d();
        let n = spec.n;
        let sum = if alternating {
            factorial_weighted_sum(d, n, |i| limit_l_term(&p, n, i))?
        } else {
            factorial_weighted_sum(d, n, |i| limit_s_term(&p, n, i))?
        };
        Ok(Claimed {
            value: sum * factorial_prefactor(n)? / d,
            solution,
            a_equals_d: false,
            domain_violation: None,
        })
    }

    /// Closed-form zeta value; its stated domain is `Re Z > 1`.
    pub fn claimed_zeta(&self, spec: &ClaimSpec) -> Result<Claimed> {
        let mut claimed = self.limit_closed_form(spec, false)?;
        if !(spec.z.re > 1.0) {
            claimed.domain_violation = Some(format!("Re Z = {} does not exceed 1", spec.z.re));
        }
        Ok(claimed)
    }

    /// Closed-form eta value; its stated domain is `Re Z > 0`.
    pub fn claimed_eta(&self, spec: &ClaimSpec) -> Result<Claimed> {
        let mut claimed = self.limit_closed_form(spec, true)?;
        if !(spec.z.re > 0.0) {
            claimed.domain_violation = Some(format!("Re Z = {} does not exceed 0", spec.z.re));
        }
        Ok(claimed)
    }

    /// `claimed_eta / (1 - 2^(1-Z))`.
    pub fn claimed_zeta_strip(&self, spec: &ClaimSpec) -> Result<Claimed> {
        let z = spec.z;
        if z == Complex64::new(1.0, 0.0) {
            return Err(AuditError::Pole { func: "1 - 2^(1-s)", re: 1.0, im: 0.0 });
        }
        if relation_degenerate_distance(z) < RELATION_EXCLUSION {
            return Err(AuditError::RelationDegenerate { re: z.re, im: z.im });
        }
        let eta = self.claimed_eta(spec)?;
        Ok(Claimed { value: eta.value / eta_zeta_factor(z), ..eta })
    }

    /// Functional equation applied to the closed-form zeta at `1 - Z`; stated for `Re Z < 0`.
    pub fn claimed_zeta_reflection(&self, spec: &ClaimSpec) -> Result<Claimed> {
        let z = spec.z;
        let mut inner = self.claimed_zeta(&spec.with_z(1.0 - z))?;
        if !(z.re < 0.0) {
            inner.domain_violation = Some(format!("Re Z = {} is not negative", z.re));
        }
        let gamma = ref_gamma(1.0 - z)?.value;
        let factor = gamma * ((z - 1.0) * (2.0 * PI).ln()).exp() * 2.0 * sin_pi(z / 2.0);
        Ok(Claimed { value: factor * inner.value, ..inner })
    }

    /// Ordinary limit identity: factorial-weighted `S` sum against
    /// `d / ((n-1)! (n-3)!) * zeta((n-1) gamma)`.
    fn t7_pair(&self, spec: &ClaimSpec) -> Result<(Claimed, Complex64)> {
        spec.validate()?;
        let solution = self.solve(spec)?;
        let p = solution.params;
        if p.degeneracy().step_is_zero() {
            return Err(AuditError::ZeroStep);
        }
        let (d, n) = (p.d(), spec.n);
        let claimed = factorial_weighted_sum(d, n, |i| limit_s_term(&p, n, i))?;
        let w = spec.gamma() * f64::from(n - 1);
        let zeta = ref_zeta_with(w, &self.policy)?.value;
        let reference = d / factorial_prefactor(n)? * zeta;
        let claimed = Claimed { value: claimed, solution, a_equals_d: a_equals_d(&p), domain_violation: None };
        Ok((claimed, reference))
    }

    /// Alternating limit identity: binomial-weighted `L` sum against `eta((n-1) gamma)`.
    fn t8_pair(&self, spec: &ClaimSpec) -> Result<(Claimed, Complex64)> {
        spec.validate()?;
        let solution = self.solve(spec)?;
        let p = solution.params;
        if p.degeneracy().step_is_zero() {
            return Err(AuditError::ZeroStep);
        }
        let (d, n) = (p.d(), spec.n);
        let claimed = binomial_weighted_sum(d, n, |i| limit_l_term(&p, n, i))?;
        let w = spec.gamma() * f64::from(n - 1);
        let reference = ref_eta_with(w, &self.policy)?.value;
        let claimed = Claimed { value: claimed, solution, a_equals_d: a_equals_d(&p), domain_violation: None };
        Ok((claimed, reference))
    }

    fn solution_notes(claimed: &Claimed, notes: &mut Vec<String>) {
        let p = claimed.solution.params;
        let deg = claimed.solution.degenerate;
        if deg.d1_zero {
            notes.push("solved d1 = 0 (outside nonzero-step domain)".into());
        }
        if deg.d2_zero {
            notes.push("solved d2 = 0 (outside nonzero-step domain)".into());
        }
        if claimed.a_equals_d {
            notes.push("solved a = d; limit terms vanish".into());
        }
        notes.push(format!(
            "a = {:.6e}{:+.6e}i, d = {:.6e}{:+.6e}i",
            p.a1, p.a2, p.d1, p.d2
        ));
    }

    /// Evaluates one spec. Guard failures become DEGENERATE verdicts; nothing is skipped.
    pub fn evaluate(&self, spec: &ClaimSpec) -> ClaimVerdict {
        if let Err(e) = spec.validate() {
            return ClaimVerdict::degenerate(*spec, e.to_string());
        }
        let tol = self.policy.tol_claim;
        let outcome: Result<ClaimVerdict> = match spec.claim_id {
            ClaimId::T1Identity | ClaimId::T2Identity => return self.evaluate_identity(spec),
            ClaimId::T14Zero | ClaimId::T15Zero | ClaimId::C2RhZero => {
                let source = spec.source.expect("validated");
                return match build_zero_candidate(spec.t, spec.k, spec.m, source) {
                    Ok(c) => self.audit_zero_candidate(&c, spec.n),
                    Err(e) => ClaimVerdict::degenerate(*spec, e.to_string()),
                };
            }
            ClaimId::T7ClosedForm | ClaimId::T8ClosedForm => {
                let pair = if spec.claim_id == ClaimId::T7ClosedForm {
                    self.t7_pair(spec)
                } else {
                    self.t8_pair(spec)
                };
                pair.map(|(claimed, reference)| {
                    let mut notes = Vec::new();
                    let w = spec.gamma() * f64::from(spec.n - 1);
                    let edge = if spec.claim_id == ClaimId::T7ClosedForm { 1.0 } else { 0.0 };
                    if w.re <= edge {
                        notes.push(format!(
                            "series diverges at Re((n-1)s) = {:.6}; reference is the continuation",
                            w.re
                        ));
                    }
                    Self::solution_notes(&claimed, &mut notes);
                    let spec = ClaimSpec { params: Some(claimed.solution.params), ..*spec };
                    ClaimVerdict::compared(spec, claimed.value, reference, tol, notes)
                })
            }
            ClaimId::T10Zeta | ClaimId::Nonuniqueness => self
                .claimed_zeta(spec)
                .map(|c| self.finish(spec, c, ref_zeta_with(spec.z, &self.policy), Vec::new())),
            ClaimId::T11Eta => self
                .claimed_eta(spec)
                .map(|c| self.finish(spec, c, ref_eta_with(spec.z, &self.policy), Vec::new())),
            ClaimId::T12Strip => self
                .claimed_zeta_strip(spec)
                .map(|c| self.finish(spec, c, ref_zeta_with(spec.z, &self.policy), Vec::new())),
            ClaimId::T13Reflection => self.claimed_zeta_reflection(spec).map(|c| {
                let notes = vec![format!("inner closed form at 1 - Z = {}", 1.0 - spec.z)];
                self.finish(spec, c, ref_zeta_with(spec.z, &self.policy), notes)
            }),
        };
        outcome.unwrap_or_else(|e| ClaimVerdict::degenerate(*spec, e.to_string()))
    }

    /// Compares a claimed value with its reference. A failed reference or a
    /// domain violation yields DEGENERATE but keeps whatever values exist.
    fn finish(
        &self,
        spec: &ClaimSpec,
        claimed: Claimed,
        reference: Result<crate::reference::EvalResult>,
        mut notes: Vec<String>,
    ) -> ClaimVerdict {
        Self::solution_notes(&claimed, &mut notes);
        let spec = &ClaimSpec { params: Some(claimed.solution.params), ..*spec };
        let reference = match reference {
            Ok(r) => r.value,
            Err(e) => {
                notes.insert(0, format!("reference unavailable: {e}"));
                return ClaimVerdict {
                    claimed: Some(claimed.value),
                    ..ClaimVerdict::degenerate(*spec, notes.join("; "))
                };
            }
        };
        let violation = claimed.domain_violation.clone();
        if let Some(v) = &violation {
            notes.insert(0, format!("outside stated domain: {v}"));
        }
        let mut verdict = ClaimVerdict::compared(*spec, claimed.value, reference, self.policy.tol_claim, notes);
        if violation.is_some() {
            verdict.classification = Classification::Degenerate;
        }
        verdict
    }

    /// Finite identities are judged on the relative residual, since their
    /// magnitudes range over many orders.
    fn evaluate_identity(&self, spec: &ClaimSpec) -> ClaimVerdict {
        let params = spec.params.expect("validated");
        let report = ProgressionQuery::new(params, spec.k, spec.n).and_then(|q| match spec.claim_id {
            ClaimId::T1Identity => theorem1_residual(&q),
            _ => theorem2_residual(&q),
        });
        match report {
            Ok(r) => {
                let mut notes = vec![format!("rel_residual = {:.3e}", r.rel_residual)];
                if params.degeneracy().is_degenerate() {
                    notes.push("zero step component".into());
                }
                ClaimVerdict {
                    spec: *spec,
                    claimed: Some(r.rhs),
                    reference: Some(r.lhs),
                    abs_residual: Some(r.abs_residual),
                    classification: classify_scaled(r.rel_residual, 1.0, self.policy.tol_claim),
                    notes: notes.join("; "),
                }
            }
            Err(e) => ClaimVerdict::degenerate(*spec, e.to_string()),
        }
    }

    /// Audits "the series vanishes at `(n-1) s`": claimed 0 against the reference value.
    pub fn audit_zero_candidate(&self, c: &ZeroCandidate, n: u32) -> ClaimVerdict {
        let mut spec = ClaimSpec::zero(c.source, c.t, c.k, c.m, n);
        if !c.feasible {
            return ClaimVerdict::degenerate(spec, "feasibility bounds fail; no angle taken");
        }
        spec.z = c.s();
        if n < 2 {
            return ClaimVerdict::degenerate(spec, format!("n = {n} must be >= 2"));
        }
        let w = c.s() * f64::from(n - 1);
        let alternating = c.source.is_alternating();
        let reference = if alternating {
            ref_eta_with(w, &self.policy)
        } else {
            ref_zeta_with(w, &self.policy)
        };
        let reference = match reference {
            Ok(r) => r.value,
            Err(e) => return ClaimVerdict::degenerate(spec, format!("(n-1)s = {w}: {e}")),
        };
        let mut notes = vec![format!("(n-1)s = {:.6}{:+.6}i", w.re, w.im)];
        let edge = if alternating { 0.0 } else { 1.0 };
        if w.re <= edge {
            notes.push("series diverges here; reference is the continuation".into());
        }
        if n == 2 {
            notes.push("n = 2 lies outside the n >= 3 range of the power-sum identities".into());
        }
        ClaimVerdict::compared(spec, Complex64::new(0.0, 0.0), reference, self.policy.tol_claim, notes)
    }

    /// Checks that the zero construction really is a fixed point `a = d` of the solver.
    pub fn theorem14_consistency_check(&self, t: i32, k: u32, m: u32) -> ClaimVerdict {
        let spec = ClaimSpec::zero(CandidateSource::T14, t, k, m, 2);
        let candidate = match build_zero_candidate(t, k, m, CandidateSource::T14) {
            Ok(c) => c,
            Err(e) => return ClaimVerdict::degenerate(spec, e.to_string()),
        };
        let spec = ClaimSpec { z: candidate.s(), ..spec };
        let solution = match solve_parameters(candidate.gamma1, candidate.gamma2, k, m) {
            Ok(s) => s,
            Err(e) => return ClaimVerdict::degenerate(spec, e.to_string()),
        };
        let p = solution.params;
        let (a, d) = (p.a(), p.d());
        let gap = (a - d).norm();
        let scale = a.norm().max(d.norm()).max(SCALE_FLOOR);
        let mut notes = vec!["fixed-point check a = d".to_string()];
        if solution.degenerate.is_degenerate() {
            notes.push("solved step has a zero component".into());
        }
        ClaimVerdict {
            spec: ClaimSpec { params: Some(p), ..spec },
            claimed: Some(a),
            reference: Some(d),
            abs_residual: Some(gap),
            classification: classify_scaled(gap / scale, 1.0, FIXED_POINT_TOL),
            notes: notes.join("; "),
        }
    }

    pub fn nonuniqueness_probe(&self, z: Complex64, n: u32, pairs: &[(u32, u32)]) -> Result<SpreadReport> {
        if pairs.len() < 2 {
            return Err(AuditError::InvalidInput("the probe needs at least two (k, m) pairs".into()));
        }
        if !(z.re > 1.0) {
            return Err(AuditError::Precondition(format!("Re Z = {} must exceed 1", z.re)));
        }
        let reference = ref_zeta_with(z, &self.policy).ok().map(|r| r.value);
        let mut rows = Vec::new();
        let mut spread_by_mode = Vec::new();
        for mode in GammaMode::BOTH {
            let mut values = Vec::new();
            for &(k, m) in pairs {
                let spec = ClaimSpec::closed_form(ClaimId::Nonuniqueness, z, n, k, m, mode);
                let verdict = self.evaluate(&spec);
                if let Some(v) = verdict.claimed {
                    values.push(v);
                }
                rows.push(ProbeRow { k, m, gamma_mode: mode, verdict });
            }
            let mut spread = 0.0f64;
            for (i, a) in values.iter().enumerate() {
                for b in &values[i + 1..] {
                    spread = spread.max((a - b).norm());
                }
            }
            spread_by_mode.push((mode, spread));
        }
        let max_spread = spread_by_mode.iter().map(|(_, s)| *s).fold(0.0, f64::max);
        Ok(SpreadReport {
            z,
            n,
            reference,
            rows,
            spread_by_mode,
            max_spread,
            nonunique: max_spread > self.policy.tol_claim,
        })
    }

    pub fn check_anchors(&self) -> AnchorReport {
        let tol = self.policy.tol_ref;
        let eval = |name: &str| -> Result<Complex64> {
            let v = match name {
                "zeta(2)" => ref_zeta_with(Complex64::new(2.0, 0.0), &self.policy)?,
                "zeta(3)" => ref_zeta_with(Complex64::new(3.0, 0.0), &self.policy)?,
                "eta(1)" => ref_eta_with(Complex64::new(1.0, 0.0), &self.policy)?,
                _ => ref_zeta_with(Complex64::new(-1.0, 0.0), &self.policy)?,
            };
            Ok(v.value)
        };
        let mut checks: Vec<AnchorCheck> = ANCHORS
            .iter()
            .map(|&(name, expected)| {
                let computed = eval(name).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
                let abs_error = (computed - expected).norm();
                AnchorCheck {
                    name: name.to_string(),
                    computed,
                    expected,
                    abs_error,
                    tolerance: tol,
                    passed: abs_error <= tol,
                }
            })
            .collect();
        let first_zero = ref_zeta_with(Complex64::new(0.5, FIRST_ZERO_ORDINATE), &self.policy)
            .map(|r| r.value)
            .unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        checks.push(AnchorCheck {
            name: format!("|zeta(1/2 + {FIRST_ZERO_ORDINATE}i)|"),
            computed: first_zero,
            expected: 0.0,
            abs_error: first_zero.norm(),
            tolerance: FIRST_ZERO_BOUND,
            passed: first_zero.norm() < FIRST_ZERO_BOUND,
        });
        AnchorReport { checks }
    }

    /// Re-validates the anchors, then evaluates every spec in order.
    pub fn run_batch(&self, specs: &[ClaimSpec]) -> std::result::Result<Vec<ClaimVerdict>, AnchorReport> {
        let anchors = self.check_anchors();
        if !anchors.all_passed() {
            return Err(anchors);
        }
        Ok(specs.iter().map(|s| self.evaluate(s)).collect())
    }
}
