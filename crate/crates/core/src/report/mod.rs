//! Batch audits driven by a config file, and their on-disk reports.

pub mod batch;
pub mod config;
pub mod output;

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::claims::AnchorReport;

pub use batch::{run, AuditRun, VerdictGroup, FIXED_POINT_GROUP};
pub use config::{AuditConfig, ConfigError, Format, OUTPUT_DIR_ENV};
pub use output::{write_run, RunManifest, MANIFEST_FILE};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("reference anchors failed; audit aborted")]
    Anchors(AnchorReport),
    #[error("writing report: {0}")]
    Io(#[from] std::io::Error),
}

/// Runs the configured audit and writes it to the resolved output directory.
pub fn full_report(cfg: &AuditConfig) -> Result<(AuditRun, Vec<PathBuf>), ReportError> {
    full_report_in(cfg, &cfg.resolved_output_dir())
}

pub fn full_report_in(cfg: &AuditConfig, dir: &Path) -> Result<(AuditRun, Vec<PathBuf>), ReportError> {
    match batch::run(cfg) {
        Ok(run) => {
            let files = write_run(cfg, &run, dir)?;
            Ok((run, files))
        }
        Err(anchors) => {
            output::write_aborted(cfg, &anchors, dir)?;
            Err(ReportError::Anchors(anchors))
        }
    }
}
