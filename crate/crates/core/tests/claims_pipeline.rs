use num_complex::Complex64;

use zeta_audit::claims::{build_zero_candidate, CandidateSource};
use zeta_audit::report::batch::{plan, run};
use zeta_audit::report::output::{group_rows, CSV_HEADER};
use zeta_audit::report::{AuditConfig, FIXED_POINT_GROUP};
use zeta_audit::{Auditor, ClaimId, ClaimSpec, Classification, GammaMode};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn every_planned_spec_gets_one_verdict() {
    let cfg = AuditConfig::default();
    let planned: usize = plan(&cfg).iter().map(|(_, specs)| specs.len()).sum();
    let run = run(&cfg).expect("anchors pass");
    let probe_rows: usize = run.probes.iter().map(|p| p.rows.len()).sum();
    let fixed = run.group(FIXED_POINT_GROUP).unwrap().verdicts.len();
    assert_eq!(run.verdict_count(), planned + probe_rows + fixed);
    for g in &run.groups {
        for (v, row) in g.verdicts.iter().zip(group_rows(g)) {
            if v.classification != Classification::Degenerate {
                assert!(row.claimed_re.is_some() && row.reference_re.is_some() && row.abs_residual.is_some());
                assert!(row.a1.is_some() || row.source.is_some(), "{}: inputs missing", row.id);
            }
        }
    }
    // mode sensitivity: every closed-form spec is present under both modes
    for id in [ClaimId::T10Zeta, ClaimId::T11Eta] {
        let g = run.group(id.as_str()).unwrap();
        let count = |mode: GammaMode| g.verdicts.iter().filter(|v| v.spec.gamma_mode == mode).count();
        assert_eq!(count(GammaMode::GammaEqualsZ), count(GammaMode::GammaEqualsZOverNm1));
    }
    assert_eq!(CSV_HEADER.len(), 21);
}

#[test]
fn duplicated_pair_has_zero_spread() {
    let report = Auditor::default().nonuniqueness_probe(c(3.0, 0.0), 3, &[(2, 3), (2, 3)]).unwrap();
    assert_eq!(report.max_spread, 0.0);
    assert!(!report.nonunique);
}

#[test]
fn probe_at_two_with_four_terms() {
    let report = Auditor::default().nonuniqueness_probe(c(2.0, 0.0), 4, &[(2, 3), (2, 5)]).unwrap();
    assert_eq!(report.rows.len(), 4);
    assert!(report.rows.iter().all(|r| r.verdict.classification == Classification::Refuted));
    assert!(report.nonunique);
    assert!(Auditor::default().nonuniqueness_probe(c(0.5, 0.0), 4, &[(2, 3), (2, 5)]).is_err());
    assert!(Auditor::default().nonuniqueness_probe(c(2.0, 0.0), 4, &[(2, 3)]).is_err());
}

#[test]
fn fixed_point_examples() {
    let a = Auditor::default();
    let v = a.theorem14_consistency_check(2, 2, 3);
    assert_eq!(v.classification, Classification::Confirmed);
    let v = a.theorem14_consistency_check(0, 2, 3);
    assert_eq!(v.classification, Classification::Confirmed);
    assert!(v.notes.contains("zero component"));
    let p = v.spec.params.unwrap();
    assert!((p.a1 - 1.0).abs() < 1e-15 && (p.d1 - 1.0).abs() < 1e-15 && p.a2 == 0.0 && p.d2 == 0.0);
    assert_eq!(a.theorem14_consistency_check(1, 2, 3).classification, Classification::Degenerate);
}

#[test]
fn strip_and_reflection_forms_are_audited() {
    let a = Auditor::default();
    let strip = a.evaluate(&ClaimSpec::closed_form(ClaimId::T12Strip, c(0.5, 3.0), 3, 2, 3, GammaMode::GammaEqualsZ));
    assert_eq!(strip.classification, Classification::Refuted);
    let refl =
        a.evaluate(&ClaimSpec::closed_form(ClaimId::T13Reflection, c(-1.5, 2.0), 4, 2, 5, GammaMode::GammaEqualsZ));
    assert!(refl.claimed.is_some() && refl.reference.is_some());
    assert!(refl.notes.contains("1 - Z"));
}

#[test]
fn zero_candidates_off_window_are_degenerate() {
    let cand = build_zero_candidate(8, 2, 3, CandidateSource::T14).unwrap();
    let v = Auditor::default().audit_zero_candidate(&cand, 3);
    assert_eq!(v.classification, Classification::Degenerate);
    assert!(v.notes.contains("window"));
}

#[test]
fn verdicts_are_bitwise_reproducible() {
    let a = Auditor::default();
    let spec = ClaimSpec::closed_form(ClaimId::T7ClosedForm, c(2.5, 1.0), 5, 3, 4, GammaMode::GammaEqualsZOverNm1);
    let (v1, v2) = (a.evaluate(&spec), a.evaluate(&spec));
    assert_eq!(v1.claimed.map(|z| (z.re.to_bits(), z.im.to_bits())), v2.claimed.map(|z| (z.re.to_bits(), z.im.to_bits())));
    assert_eq!(v1, v2);
}
