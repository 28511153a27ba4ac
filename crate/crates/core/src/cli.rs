//! Command-line surface. The binary only parses arguments and forwards here.

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::claims::{build_zero_candidate, Auditor, CandidateSource, ClaimId, ClaimSpec, GammaMode};
use crate::power_sums::{theorem1_residual, theorem2_residual, ComplexPair, ProgressionQuery};
use crate::precision::FACTORIAL_CAP;
use crate::reference::{ref_eta, ref_gamma, ref_zeta};
use crate::report::batch::identity_progressions;
use crate::report::output::Num;
use crate::report::{full_report_in, AuditConfig, ReportError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ANCHORS: i32 = 3;

/// Inclusive integer range written `lo..hi` or as a single value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse = |v: &str| v.trim().parse::<i64>().map_err(|_| format!("bad integer '{v}' in range '{s}'"));
        match s.split_once("..") {
            Some((lo, hi)) => {
                let hi = hi.strip_prefix('=').unwrap_or(hi);
                Ok(Self { lo: parse(lo)?, hi: parse(hi)? })
            }
            None => {
                let v = parse(s)?;
                Ok(Self { lo: v, hi: v })
            }
        }
    }
}

/// Parses `3`, `-2.5`, `0.5+14.13i`, `1e-3-2i`, `2i`, `-i` or `re,im`.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot read '{text}' as a complex number");
    if let Some((re, im)) = s.split_once(',') {
        let re = re.parse::<f64>().map_err(|_| bad())?;
        let im = im.parse::<f64>().map_err(|_| bad())?;
        return Ok(Complex64::new(re, im));
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => v.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

#[derive(Debug, Parser)]
#[command(name = "zeta-audit", version, about = "Audit closed-form zeta/eta claims against reference evaluators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IdentityKind {
    T1,
    T2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// gamma = Z
    Gz,
    /// gamma = Z / (n - 1)
    Gzn1,
}

impl From<ModeArg> for GammaMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Gz => GammaMode::GammaEqualsZ,
            ModeArg::Gzn1 => GammaMode::GammaEqualsZOverNm1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    /// Ordinary closed form, Re Z > 1
    Zeta,
    /// Alternating closed form, Re Z > 0
    Eta,
    /// Alternating closed form divided by 1 - 2^(1-Z)
    Strip,
    /// Functional equation applied to the closed form at 1 - Z
    Reflection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SourceArg {
    T14,
    T15,
    /// Both inverse-cosine and inverse-sine critical-line candidates
    C2,
    C2Arccos,
    C2Arcsin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctionArg {
    Zeta,
    Eta,
    Gamma,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Residual table for a finite power-sum identity over an (n, k) grid
    VerifyIdentity {
        kind: IdentityKind,
        #[arg(long, default_value = "3..6")]
        n: IntRange,
        #[arg(long, default_value = "1..20")]
        k: IntRange,
        /// Random progressions per (n, k), drawn with |a|, |d| <= radius
        #[arg(long, default_value_t = 10)]
        samples: u32,
        #[arg(long, default_value_t = 2.0)]
        radius: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Fixed first term; requires --d and replaces sampling
        #[arg(long, requires = "d", value_parser = parse_complex, allow_hyphen_values = true)]
        a: Option<Complex64>,
        #[arg(long, requires = "a", value_parser = parse_complex, allow_hyphen_values = true)]
        d: Option<Complex64>,
    },
    /// Evaluate one closed-form claim and print its verdict as JSON
    ClaimedZeta {
        #[arg(long = "Z", value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value = "gz")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "zeta")]
        form: FormArg,
    },
    /// Build candidate zeros over a t range and audit each one
    ZeroAudit {
        #[arg(long, allow_hyphen_values = true)]
        t: IntRange,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: u32,
        /// Defaults to 2 for c2 sources and 3 otherwise
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "t14")]
        source: Vec<SourceArg>,
    },
    /// Run the full configured audit and write the report files
    FullReport {
        config: PathBuf,
        /// Output directory; takes precedence over the config and ZETA_AUDIT_OUT
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the default configuration
    DefaultConfig,
    /// Evaluate a reference function at one point
    Reference {
        function: FunctionArg,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
    },
}

/// Runs one parsed command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::VerifyIdentity { kind, n, k, samples, radius, seed, a, d } => {
            verify_identity(kind, n, k, samples, radius, seed, a.zip(d), out)
        }
        Command::ClaimedZeta { z, n, k, m, mode, form } => claimed_zeta(z, n, k, m, mode.into(), form, out),
        Command::ZeroAudit { t, k, m, n, source } => zero_audit(t, k, m, n, &source, out),
        Command::FullReport { config, out: dir } => return full_report_cmd(config, dir, out, err),
        Command::DefaultConfig => {
            write!(out, "{}", AuditConfig::default().to_toml_string()).map_err(CmdError::from)
        }
        Command::Reference { function, s } => reference(function, s, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(CmdError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CmdError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

#[derive(Debug)]
enum CmdError {
    Usage(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::Io(e)
    }
}

type CmdResult = Result<(), CmdError>;

fn usage(msg: impl Into<String>) -> CmdError {
    CmdError::Usage(msg.into())
}

fn bounded(range: IntRange, name: &str, min: i64, max: i64) -> Result<(), CmdError> {
    if range.is_empty() {
        return Err(usage(format!("empty {name} range {}..{}", range.lo, range.hi)));
    }
    if range.lo < min || range.hi > max {
        return Err(usage(format!("{name} range {}..{} must lie in {min}..{max}", range.lo, range.hi)));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn verify_identity(
    kind: IdentityKind,
    n: IntRange,
    k: IntRange,
    samples: u32,
    radius: f64,
    seed: u64,
    fixed: Option<(Complex64, Complex64)>,
    out: &mut dyn Write,
) -> CmdResult {
    bounded(n, "n", 3, i64::from(FACTORIAL_CAP))?;
    bounded(k, "k", 1, 1_000_000)?;
    let progressions = match fixed {
        Some((a, d)) => vec![ComplexPair::from_complex(a, d).map_err(|e| usage(e.to_string()))?],
        None => {
            if samples == 0 || !(radius > 0.0) {
                return Err(usage("--samples and --radius must be positive"));
            }
            identity_progressions(samples, radius, seed).split_off(1)
        }
    };
    let policy = crate::precision::PrecisionPolicy::default();
    writeln!(
        out,
        "{:<4} {:>3} {:>5} {:>26} {:>26} {:>24} {:>24} {:>10} {:>10}  verdict",
        "kind", "n", "k", "a", "d", "lhs", "rhs", "abs_res", "rel_res"
    )?;
    for nv in n.iter() {
        for kv in k.iter() {
            for p in &progressions {
                let q = ProgressionQuery::new(*p, kv as u32, nv as u32).map_err(|e| usage(e.to_string()))?;
                let r = match kind {
                    IdentityKind::T1 => theorem1_residual(&q),
                    IdentityKind::T2 => theorem2_residual(&q),
                }
                .map_err(|e| usage(e.to_string()))?;
                let class = crate::claims::classify_scaled(r.rel_residual, 1.0, policy.tol_claim);
                writeln!(
                    out,
                    "{:<4} {:>3} {:>5} {:>26} {:>26} {:>24} {:>24} {:>10.3e} {:>10.3e}  {}",
                    match kind {
                        IdentityKind::T1 => "t1",
                        IdentityKind::T2 => "t2",
                    },
                    nv,
                    kv,
                    short(p.a()),
                    short(p.d()),
                    short(r.lhs),
                    short(r.rhs),
                    r.abs_residual,
                    r.rel_residual,
                    class.as_str()
                )?;
            }
        }
    }
    Ok(())
}

fn short(z: Complex64) -> String {
    format!("{:.6e}{:+.6e}i", z.re, z.im)
}

#[derive(Serialize)]
struct ClaimedOutput {
    claim_id: &'static str,
    z_re: Num,
    z_im: Num,
    n: u32,
    k: u32,
    m: u32,
    gamma_mode: &'static str,
    claimed_re: Option<Num>,
    claimed_im: Option<Num>,
    reference_re: Option<Num>,
    reference_im: Option<Num>,
    abs_residual: Option<Num>,
    classification: &'static str,
    notes: String,
}

fn claimed_zeta(z: Complex64, n: u32, k: u32, m: u32, mode: GammaMode, form: FormArg, out: &mut dyn Write) -> CmdResult {
    let id = match form {
        FormArg::Zeta => ClaimId::T10Zeta,
        FormArg::Eta => ClaimId::T11Eta,
        FormArg::Strip => ClaimId::T12Strip,
        FormArg::Reflection => ClaimId::T13Reflection,
    };
    let v = Auditor::default().evaluate(&ClaimSpec::closed_form(id, z, n, k, m, mode));
    let o = ClaimedOutput {
        claim_id: id.as_str(),
        z_re: Num(z.re),
        z_im: Num(z.im),
        n,
        k,
        m,
        gamma_mode: mode.as_str(),
        claimed_re: v.claimed.map(|c| Num(c.re)),
        claimed_im: v.claimed.map(|c| Num(c.im)),
        reference_re: v.reference.map(|c| Num(c.re)),
        reference_im: v.reference.map(|c| Num(c.im)),
        abs_residual: v.abs_residual.map(Num),
        classification: v.classification.as_str(),
        notes: v.notes,
    };
    writeln!(out, "{}", serde_json::to_string(&o).expect("verdict serializes"))?;
    Ok(())
}

fn zero_audit(t: IntRange, k: u32, m: u32, n: Option<u32>, sources: &[SourceArg], out: &mut dyn Write) -> CmdResult {
    bounded(t, "t", -10_000, 10_000)?;
    if k == m || k < 2 || m < 2 {
        return Err(usage(format!("anchors k = {k}, m = {m} must differ and exceed 1")));
    }
    let mut expanded = Vec::new();
    for s in sources {
        match s {
            SourceArg::T14 => expanded.push(CandidateSource::T14),
            SourceArg::T15 => expanded.push(CandidateSource::T15),
            SourceArg::C2 => expanded.extend([CandidateSource::C2Arccos, CandidateSource::C2Arcsin]),
            SourceArg::C2Arccos => expanded.push(CandidateSource::C2Arccos),
            SourceArg::C2Arcsin => expanded.push(CandidateSource::C2Arcsin),
        }
    }
    let auditor = Auditor::default();
    writeln!(
        out,
        "{:<10} {:>5} {:>3} {:>10} {:>18} {:>8} {:>14}  {:<12} notes",
        "source", "t", "n", "gamma1", "gamma2", "feasible", "|reference|", "verdict"
    )?;
    for source in expanded {
        let is_c2 = matches!(source, CandidateSource::C2Arccos | CandidateSource::C2Arcsin);
        let nv = n.unwrap_or(if is_c2 { 2 } else { 3 });
        if !(2..=FACTORIAL_CAP).contains(&nv) {
            return Err(usage(format!("n = {nv} must lie in 2..={FACTORIAL_CAP}")));
        }
        for tv in t.iter() {
            let tv = tv as i32;
            let (g1, g2, feasible, verdict) = match build_zero_candidate(tv, k, m, source) {
                Ok(c) => (format!("{:.6}", c.gamma1), format!("{:.10}", c.gamma2), c.feasible, auditor.audit_zero_candidate(&c, nv)),
                Err(_) => ("-".into(), "-".into(), false, auditor.evaluate(&ClaimSpec::zero(source, tv, k, m, nv))),
            };
            let magnitude = verdict.reference.map(|r| format!("{:.10}", r.norm())).unwrap_or_else(|| "-".into());
            writeln!(
                out,
                "{:<10} {:>5} {:>3} {:>10} {:>18} {:>8} {:>14}  {:<12} {}",
                source.as_str(),
                tv,
                nv,
                g1,
                g2,
                feasible,
                magnitude,
                verdict.classification.as_str(),
                verdict.notes
            )?;
        }
    }
    Ok(())
}

fn reference(function: FunctionArg, s: Complex64, out: &mut dyn Write) -> CmdResult {
    let r = match function {
        FunctionArg::Zeta => ref_zeta(s),
        FunctionArg::Eta => ref_eta(s),
        FunctionArg::Gamma => ref_gamma(s),
    };
    match r {
        Ok(r) => {
            writeln!(out, "{} {} (method {:?}, est. error {:.1e})", Num(r.value.re).text(), Num(r.value.im).text(), r.method, r.est_error)?;
            Ok(())
        }
        Err(e) => Err(usage(e.to_string())),
    }
}

fn full_report_cmd(config: PathBuf, dir: Option<PathBuf>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cfg = match AuditConfig::load(&config) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    // an explicit flag beats both the config and the environment
    let dir = dir.unwrap_or_else(|| cfg.resolved_output_dir());
    match full_report_in(&cfg, &dir) {
        Ok((run, files)) => {
            let _ = writeln!(out, "{} verdicts, {} files written to {}", run.verdict_count(), files.len(), dir.display());
            EXIT_OK
        }
        Err(ReportError::Anchors(report)) => {
            let _ = writeln!(err, "error: reference anchors failed; audit aborted");
            for c in report.checks.iter().filter(|c| !c.passed) {
                let _ = writeln!(err, "  {}: abs error {:.3e} > {:.1e}", c.name, c.abs_error, c.tolerance);
            }
            EXIT_ANCHORS
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("3").unwrap(), c(3.0, 0.0));
        assert_eq!(parse_complex("0.5+14.134725i").unwrap(), c(0.5, 14.134725));
        assert_eq!(parse_complex("-1.5 - 2i").unwrap(), c(-1.5, -2.0));
        assert_eq!(parse_complex("1e-3-2e+1i").unwrap(), c(1e-3, -20.0));
        assert_eq!(parse_complex("2i").unwrap(), c(0.0, 2.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("2,-3").unwrap(), c(2.0, -3.0));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("1+2").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!("-4..4".parse::<IntRange>().unwrap(), IntRange { lo: -4, hi: 4 });
        assert_eq!("3..=6".parse::<IntRange>().unwrap(), IntRange { lo: 3, hi: 6 });
        assert_eq!("7".parse::<IntRange>().unwrap(), IntRange { lo: 7, hi: 7 });
        assert!("4..1".parse::<IntRange>().unwrap().is_empty());
        assert_eq!("-4..4".parse::<IntRange>().unwrap().iter().count(), 9);
        assert!("a..2".parse::<IntRange>().is_err());
    }
}
