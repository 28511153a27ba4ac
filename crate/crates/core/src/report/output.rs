//! JSON, CSV and Markdown rendering of an [`AuditRun`], plus the run manifest.
//!
//! Floating-point values are written as `{:.16e}` (17 significant digits) so
//! they round-trip exactly. Nothing time-dependent is written outside
//! `manifest.json`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use num_complex::Complex64;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::claims::{AnchorReport, ClaimVerdict, Classification, SpreadReport};

use super::batch::{AuditRun, VerdictGroup};
use super::config::{AuditConfig, Format};

pub const MANIFEST_FILE: &str = "manifest.json";

/// `f64` that serializes with 17 significant digits. Non-finite values
/// become the strings `"NaN"`, `"inf"` and `"-inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Num {
    pub fn text(self) -> String {
        if self.0.is_finite() {
            format!("{:.16e}", self.0)
        } else {
            format!("{}", self.0)
        }
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(self.text()).map_err(serde::ser::Error::custom)?;
            raw.serialize(s)
        } else {
            s.serialize_str(&self.text())
        }
    }
}

fn opt_text(v: Option<f64>) -> String {
    v.map(|x| Num(x).text()).unwrap_or_default()
}

/// One flattened verdict as it appears in the verdict files.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictRow {
    pub id: String,
    pub claim_id: &'static str,
    pub z_re: Num,
    pub z_im: Num,
    pub n: u32,
    pub k: u32,
    pub m: u32,
    pub t: i32,
    pub gamma_mode: &'static str,
    pub source: Option<&'static str>,
    pub a1: Option<Num>,
    pub a2: Option<Num>,
    pub d1: Option<Num>,
    pub d2: Option<Num>,
    pub claimed_re: Option<Num>,
    pub claimed_im: Option<Num>,
    pub reference_re: Option<Num>,
    pub reference_im: Option<Num>,
    pub abs_residual: Option<Num>,
    pub classification: &'static str,
    pub notes: String,
}

pub const CSV_HEADER: [&str; 21] = [
    "id",
    "claim_id",
    "z_re",
    "z_im",
    "n",
    "k",
    "m",
    "t",
    "gamma_mode",
    "source",
    "a1",
    "a2",
    "d1",
    "d2",
    "claimed_re",
    "claimed_im",
    "reference_re",
    "reference_im",
    "abs_residual",
    "classification",
    "notes",
];

pub fn row_id(group: &str, index: usize) -> String {
    format!("{group}-{index:05}")
}

impl VerdictRow {
    pub fn new(id: String, v: &ClaimVerdict) -> Self {
        let s = &v.spec;
        let p = s.params;
        Self {
            id,
            claim_id: s.claim_id.as_str(),
            z_re: Num(s.z.re),
            z_im: Num(s.z.im),
            n: s.n,
            k: s.k,
            m: s.m,
            t: s.t,
            gamma_mode: s.gamma_mode.as_str(),
            source: s.source.map(|c| c.as_str()),
            a1: p.map(|p| Num(p.a1)),
            a2: p.map(|p| Num(p.a2)),
            d1: p.map(|p| Num(p.d1)),
            d2: p.map(|p| Num(p.d2)),
            claimed_re: v.claimed.map(|c| Num(c.re)),
            claimed_im: v.claimed.map(|c| Num(c.im)),
            reference_re: v.reference.map(|c| Num(c.re)),
            reference_im: v.reference.map(|c| Num(c.im)),
            abs_residual: v.abs_residual.map(Num),
            classification: v.classification.as_str(),
            notes: v.notes.clone(),
        }
    }

    pub fn csv_record(&self) -> Vec<String> {
        let o = |v: Option<Num>| opt_text(v.map(|n| n.0));
        vec![
            self.id.clone(),
            self.claim_id.to_string(),
            self.z_re.text(),
            self.z_im.text(),
            self.n.to_string(),
            self.k.to_string(),
            self.m.to_string(),
            self.t.to_string(),
            self.gamma_mode.to_string(),
            self.source.unwrap_or_default().to_string(),
            o(self.a1),
            o(self.a2),
            o(self.d1),
            o(self.d2),
            o(self.claimed_re),
            o(self.claimed_im),
            o(self.reference_re),
            o(self.reference_im),
            o(self.abs_residual),
            self.classification.to_string(),
            self.notes.clone(),
        ]
    }
}

pub fn group_rows(group: &VerdictGroup) -> Vec<VerdictRow> {
    group
        .verdicts
        .iter()
        .enumerate()
        .map(|(i, v)| VerdictRow::new(row_id(&group.name, i), v))
        .collect()
}

/// A JSON array with one compact row per line.
pub fn json_lines<T: Serialize>(rows: &[T]) -> String {
    let mut out = String::from("[\n");
    for (i, row) in rows.iter().enumerate() {
        out.push_str(&serde_json::to_string(row).expect("rows serialize"));
        out.push_str(if i + 1 < rows.len() { ",\n" } else { "\n" });
    }
    out.push_str("]\n");
    out
}

pub fn verdict_json(group: &VerdictGroup) -> String {
    json_lines(&group_rows(group))
}

pub fn verdict_csv(group: &VerdictGroup) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for row in group_rows(group) {
        w.write_record(row.csv_record()).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

#[derive(Debug, Clone, Serialize)]
struct AnchorRow {
    name: String,
    computed_re: Num,
    computed_im: Num,
    expected: Num,
    abs_error: Num,
    tolerance: Num,
    passed: bool,
}

fn anchor_rows(report: &AnchorReport) -> Vec<AnchorRow> {
    report
        .checks
        .iter()
        .map(|c| AnchorRow {
            name: c.name.clone(),
            computed_re: Num(c.computed.re),
            computed_im: Num(c.computed.im),
            expected: Num(c.expected),
            abs_error: Num(c.abs_error),
            tolerance: Num(c.tolerance),
            passed: c.passed,
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
struct ProbeSummary {
    z_re: Num,
    z_im: Num,
    n: u32,
    reference_re: Option<Num>,
    reference_im: Option<Num>,
    spread_gamma_equals_z: Num,
    spread_gamma_equals_z_over_nm1: Num,
    max_spread: Num,
    nonunique: bool,
}

fn probe_summaries(probes: &[SpreadReport]) -> Vec<ProbeSummary> {
    probes
        .iter()
        .map(|p| {
            let spread = |i: usize| Num(p.spread_by_mode.get(i).map(|s| s.1).unwrap_or(f64::NAN));
            ProbeSummary {
                z_re: Num(p.z.re),
                z_im: Num(p.z.im),
                n: p.n,
                reference_re: p.reference.map(|r| Num(r.re)),
                reference_im: p.reference.map(|r| Num(r.im)),
                spread_gamma_equals_z: spread(0),
                spread_gamma_equals_z_over_nm1: spread(1),
                max_spread: Num(p.max_spread),
                nonunique: p.nonunique,
            }
        })
        .collect()
}

fn probe_csv(probes: &[SpreadReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["z_re", "z_im", "n", "spread_gz", "spread_gzn1", "max_spread", "nonunique"])
        .expect("in-memory write");
    for s in probe_summaries(probes) {
        w.write_record([
            s.z_re.text(),
            s.z_im.text(),
            s.n.to_string(),
            s.spread_gamma_equals_z.text(),
            s.spread_gamma_equals_z_over_nm1.text(),
            s.max_spread.text(),
            s.nonunique.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn anchor_csv(report: &AnchorReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "computed_re", "computed_im", "expected", "abs_error", "tolerance", "passed"])
        .expect("in-memory write");
    for a in anchor_rows(report) {
        w.write_record([
            a.name,
            a.computed_re.text(),
            a.computed_im.text(),
            a.expected.text(),
            a.abs_error.text(),
            a.tolerance.text(),
            a.passed.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn classification_counts(verdicts: &[ClaimVerdict]) -> BTreeMap<&'static str, usize> {
    let mut counts = BTreeMap::new();
    for c in [
        Classification::Confirmed,
        Classification::Refuted,
        Classification::Inconclusive,
        Classification::Degenerate,
    ] {
        counts.insert(c.as_str(), 0);
    }
    for v in verdicts {
        *counts.entry(v.classification.as_str()).or_insert(0) += 1;
    }
    counts
}

fn fmt_complex(z: Option<Complex64>) -> String {
    match z {
        Some(z) => format!("{:.10e} {:+.10e}i", z.re, z.im),
        None => "-".into(),
    }
}

pub fn markdown(cfg: &AuditConfig, run: &AuditRun) -> String {
    let mut md = String::new();
    let _ = writeln!(md, "# Claim audit report\n");
    let _ = writeln!(md, "Config digest: `{}`\n", cfg.digest());
    let _ = writeln!(md, "## Reference anchors\n");
    let _ = writeln!(md, "| anchor | computed | expected | abs error | tolerance | passed |");
    let _ = writeln!(md, "|---|---|---|---|---|---|");
    for c in &run.anchors.checks {
        let _ = writeln!(
            md,
            "| {} | {} | {:.16e} | {:.3e} | {:.1e} | {} |",
            c.name,
            fmt_complex(Some(c.computed)),
            c.expected,
            c.abs_error,
            c.tolerance,
            c.passed
        );
    }
    let _ = writeln!(md, "\n## Verdicts\n");
    let _ = writeln!(md, "| group | total | CONFIRMED | REFUTED | INCONCLUSIVE | DEGENERATE |");
    let _ = writeln!(md, "|---|---|---|---|---|---|");
    for g in &run.groups {
        let c = classification_counts(&g.verdicts);
        let _ = writeln!(
            md,
            "| {} | {} | {} | {} | {} | {} |",
            g.name,
            g.verdicts.len(),
            c["CONFIRMED"],
            c["REFUTED"],
            c["INCONCLUSIVE"],
            c["DEGENERATE"]
        );
    }
    let _ = writeln!(md, "\n## Uniqueness probes\n");
    let _ = writeln!(md, "| Z | n | reference | spread (gz) | spread (gzn1) | nonunique |");
    let _ = writeln!(md, "|---|---|---|---|---|---|");
    for p in &run.probes {
        let spread = |i: usize| p.spread_by_mode.get(i).map(|s| s.1).unwrap_or(f64::NAN);
        let _ = writeln!(
            md,
            "| {} | {} | {} | {:.6e} | {:.6e} | {} |",
            fmt_complex(Some(p.z)),
            p.n,
            fmt_complex(p.reference),
            spread(0),
            spread(1),
            p.nonunique
        );
    }
    let _ = writeln!(md, "\n## Largest residuals per group\n");
    for g in &run.groups {
        let worst = g
            .verdicts
            .iter()
            .filter(|v| v.classification != Classification::Degenerate)
            .filter_map(|v| v.abs_residual.map(|r| (r, v)))
            .max_by(|a, b| a.0.total_cmp(&b.0));
        if let Some((r, v)) = worst {
            let _ = writeln!(
                md,
                "- {}: {:.6e} ({}; Z = {}, n = {}, k = {}, m = {}, t = {})",
                g.name,
                r,
                v.classification.as_str(),
                fmt_complex(Some(v.spec.z)),
                v.spec.n,
                v.spec.k,
                v.spec.m,
                v.spec.t
            );
        }
    }
    md
}

#[derive(Debug, Clone, Serialize)]
pub struct IndexEntry {
    pub count: usize,
    pub files: Vec<String>,
    pub classifications: BTreeMap<&'static str, usize>,
    pub ids: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub artifact: &'static str,
    pub version: &'static str,
    pub config_digest: String,
    pub timestamp_unix: u64,
    pub aborted: bool,
    pub files: Vec<String>,
    pub anchors: Vec<AnchorManifestRow>,
    pub index: BTreeMap<String, IndexEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnchorManifestRow {
    pub name: String,
    pub abs_error: Num,
    pub passed: bool,
}

fn manifest_anchors(report: &AnchorReport) -> Vec<AnchorManifestRow> {
    report
        .checks
        .iter()
        .map(|c| AnchorManifestRow { name: c.name.clone(), abs_error: Num(c.abs_error), passed: c.passed })
        .collect()
}

fn now_unix() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

fn write_file(dir: &Path, name: &str, body: &str, written: &mut Vec<String>) -> io::Result<()> {
    fs::write(dir.join(name), body)?;
    written.push(name.to_string());
    Ok(())
}

/// Writes every requested format plus the manifest. Returns the files written.
pub fn write_run(cfg: &AuditConfig, run: &AuditRun, dir: &Path) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut index = BTreeMap::new();
    for g in &run.groups {
        let mut files = Vec::new();
        if cfg.wants(Format::Json) {
            let name = format!("verdicts_{}.json", g.name);
            write_file(dir, &name, &verdict_json(g), &mut written)?;
            files.push(name);
        }
        if cfg.wants(Format::Csv) {
            let name = format!("verdicts_{}.csv", g.name);
            write_file(dir, &name, &verdict_csv(g), &mut written)?;
            files.push(name);
        }
        let ids = (0..g.verdicts.len()).map(|i| row_id(&g.name, i)).collect();
        index.insert(
            g.name.clone(),
            IndexEntry { count: g.verdicts.len(), files, classifications: classification_counts(&g.verdicts), ids },
        );
    }
    if cfg.wants(Format::Json) {
        write_file(dir, "anchors.json", &json_lines(&anchor_rows(&run.anchors)), &mut written)?;
        write_file(dir, "nonuniqueness.json", &json_lines(&probe_summaries(&run.probes)), &mut written)?;
    }
    if cfg.wants(Format::Csv) {
        write_file(dir, "anchors.csv", &anchor_csv(&run.anchors), &mut written)?;
        write_file(dir, "nonuniqueness.csv", &probe_csv(&run.probes), &mut written)?;
    }
    if cfg.wants(Format::Md) {
        write_file(dir, "report.md", &markdown(cfg, run), &mut written)?;
    }
    let manifest = RunManifest {
        artifact: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        config_digest: cfg.digest(),
        timestamp_unix: now_unix(),
        aborted: false,
        files: written.clone(),
        anchors: manifest_anchors(&run.anchors),
        index,
    };
    write_file(dir, MANIFEST_FILE, &manifest_json(&manifest), &mut written)?;
    Ok(written.into_iter().map(|f| dir.join(f)).collect())
}

/// Manifest for a run stopped by a failed anchor check; no verdict files exist.
pub fn write_aborted(cfg: &AuditConfig, anchors: &AnchorReport, dir: &Path) -> io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let manifest = RunManifest {
        artifact: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        config_digest: cfg.digest(),
        timestamp_unix: now_unix(),
        aborted: true,
        files: Vec::new(),
        anchors: manifest_anchors(anchors),
        index: BTreeMap::new(),
    };
    let path = dir.join(MANIFEST_FILE);
    fs::write(&path, manifest_json(&manifest))?;
    Ok(path)
}

fn manifest_json(m: &RunManifest) -> String {
    let mut s = serde_json::to_string_pretty(m).expect("manifest serializes");
    s.push('\n');
    s
}
