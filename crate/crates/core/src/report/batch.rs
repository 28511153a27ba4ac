//! Expands an [`AuditConfig`] into claim specs and runs them.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::claims::{
    build_zero_candidate, AnchorReport, Auditor, CandidateSource, ClaimId, ClaimSpec, ClaimVerdict,
    GammaMode, SpreadReport,
};
use crate::power_sums::ComplexPair;

use super::config::AuditConfig;

/// Name of the verdict group holding the `a = d` fixed-point checks.
pub const FIXED_POINT_GROUP: &str = "T14_FIXED_POINT";

/// One named list of verdicts; each group becomes one output file per format.
#[derive(Debug, Clone, PartialEq)]
pub struct VerdictGroup {
    pub name: String,
    pub verdicts: Vec<ClaimVerdict>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditRun {
    pub anchors: AnchorReport,
    pub groups: Vec<VerdictGroup>,
    pub probes: Vec<SpreadReport>,
}

impl AuditRun {
    pub fn group(&self, name: &str) -> Option<&VerdictGroup> {
        self.groups.iter().find(|g| g.name == name)
    }

    pub fn verdict_count(&self) -> usize {
        self.groups.iter().map(|g| g.verdicts.len()).sum()
    }
}

/// The exact-arithmetic anchor `a = d = 1` followed by `samples` progressions
/// drawn uniformly from the disk of the given radius.
pub fn identity_progressions(samples: u32, radius: f64, seed: u64) -> Vec<ComplexPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut disk = move || {
        let r = radius * rng.gen::<f64>().sqrt();
        let theta = TAU * rng.gen::<f64>();
        (r * theta.cos(), r * theta.sin())
    };
    let mut out = vec![ComplexPair::new(1.0, 0.0, 1.0, 0.0).expect("nonzero step")];
    while out.len() < samples as usize + 1 {
        let (a1, a2) = disk();
        let (d1, d2) = disk();
        if let Ok(p) = ComplexPair::new(a1, a2, d1, d2) {
            out.push(p);
        }
    }
    out
}

pub fn identity_specs(cfg: &AuditConfig, claim_id: ClaimId) -> Vec<ClaimSpec> {
    let progressions = identity_progressions(cfg.identity_samples, cfg.identity_radius, cfg.seed);
    let mut specs = Vec::new();
    for &n in &cfg.identity_n {
        for k in 1..=cfg.identity_k_max {
            for p in &progressions {
                specs.push(ClaimSpec::identity(claim_id, *p, k, n));
            }
        }
    }
    specs
}

/// Closed-form specs over `points x n_set x km_pairs`, both gamma modes.
fn closed_form_grid(cfg: &AuditConfig, ids: &[ClaimId], points: &[num_complex::Complex64]) -> Vec<ClaimSpec> {
    let mut specs = Vec::new();
    for &id in ids {
        for &z in points {
            for &n in &cfg.n_set {
                for (k, m) in cfg.pairs() {
                    for mode in GammaMode::BOTH {
                        specs.push(ClaimSpec::closed_form(id, z, n, k, m, mode));
                    }
                }
            }
        }
    }
    specs
}

/// Zeta and eta closed forms fed the constructed zero candidates; all of
/// these solve to `a = d`.
fn candidate_fed_specs(cfg: &AuditConfig, claim_id: ClaimId) -> Vec<ClaimSpec> {
    let source = if claim_id == ClaimId::T11Eta { CandidateSource::T15 } else { CandidateSource::T14 };
    let mut specs = Vec::new();
    for t in cfg.t_min..=cfg.t_max {
        for (k, m) in cfg.pairs() {
            let Ok(c) = build_zero_candidate(t, k, m, source) else { continue };
            for &n in &cfg.n_set {
                for mode in GammaMode::BOTH {
                    specs.push(ClaimSpec::from_candidate(claim_id, &c, n, mode));
                }
            }
        }
    }
    specs
}

pub fn closed_form_specs(cfg: &AuditConfig, claim_id: ClaimId) -> Vec<ClaimSpec> {
    match claim_id {
        ClaimId::T7ClosedForm | ClaimId::T8ClosedForm => closed_form_grid(cfg, &[claim_id], &cfg.z_points()),
        ClaimId::T10Zeta | ClaimId::T11Eta => {
            let mut specs = closed_form_grid(cfg, &[claim_id], &cfg.z_points());
            specs.extend(candidate_fed_specs(cfg, claim_id));
            specs
        }
        ClaimId::T12Strip => closed_form_grid(cfg, &[claim_id], &cfg.strip_points()),
        ClaimId::T13Reflection => closed_form_grid(cfg, &[claim_id], &cfg.reflection_points()),
        _ => Vec::new(),
    }
}

pub fn zero_specs(cfg: &AuditConfig, claim_id: ClaimId) -> Vec<ClaimSpec> {
    let sources: &[CandidateSource] = match claim_id {
        ClaimId::T14Zero => &[CandidateSource::T14],
        ClaimId::T15Zero => &[CandidateSource::T15],
        ClaimId::C2RhZero => &[CandidateSource::C2Arccos, CandidateSource::C2Arcsin],
        _ => &[],
    };
    let mut specs = Vec::new();
    for &source in sources {
        for t in cfg.t_min..=cfg.t_max {
            for (k, m) in cfg.pairs() {
                for &n in &cfg.zero_n {
                    specs.push(ClaimSpec::zero(source, t, k, m, n));
                }
            }
        }
    }
    specs
}

/// Every spec the config asks for, grouped by claim, in a fixed order.
pub fn plan(cfg: &AuditConfig) -> Vec<(ClaimId, Vec<ClaimSpec>)> {
    ClaimId::ALL
        .iter()
        .filter(|&&id| id != ClaimId::Nonuniqueness)
        .map(|&id| {
            let specs = match id {
                ClaimId::T1Identity | ClaimId::T2Identity => identity_specs(cfg, id),
                ClaimId::T14Zero | ClaimId::T15Zero | ClaimId::C2RhZero => zero_specs(cfg, id),
                _ => closed_form_specs(cfg, id),
            };
            (id, specs)
        })
        .collect()
}

/// Checks the anchors, then evaluates the whole plan, the fixed-point checks
/// and the uniqueness probes. Aborts with the anchor report if any anchor fails.
pub fn run(cfg: &AuditConfig) -> Result<AuditRun, AnchorReport> {
    let auditor = Auditor { policy: cfg.policy() };
    let anchors = auditor.check_anchors();
    if !anchors.all_passed() {
        return Err(anchors);
    }
    let mut groups = Vec::new();
    for (id, specs) in plan(cfg) {
        let verdicts = auditor.run_batch(&specs)?;
        groups.push(VerdictGroup { name: id.as_str().to_string(), verdicts });
    }

    let pairs = cfg.pairs();
    let mut probes = Vec::new();
    for z in cfg.z_points() {
        for &n in &cfg.n_set {
            // config validation guarantees Re Z > 1 and two pairs
            if let Ok(report) = auditor.nonuniqueness_probe(z, n, &pairs) {
                probes.push(report);
            }
        }
    }
    let probe_rows = probes.iter().flat_map(|p| p.rows.iter().map(|r| r.verdict.clone())).collect();
    groups.push(VerdictGroup { name: ClaimId::Nonuniqueness.as_str().to_string(), verdicts: probe_rows });

    let mut fixed = Vec::new();
    for t in cfg.t_min..=cfg.t_max {
        for (k, m) in cfg.pairs() {
            fixed.push(auditor.theorem14_consistency_check(t, k, m));
        }
    }
    groups.push(VerdictGroup { name: FIXED_POINT_GROUP.to_string(), verdicts: fixed });

    Ok(AuditRun { anchors, groups, probes })
}
