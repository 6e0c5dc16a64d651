//! Artifact files.

use crate::scenario::{Artifacts, TrialFailure};
use crate::config::ScenarioConfig;
use anyhow::{Context, Result};
use flo_learn::LearnerReport;
use serde::Serialize;
use std::path::{Path, PathBuf};

#[derive(Serialize)]
struct ReportFile<'a> {
    config: &'a ScenarioConfig,
    warnings: &'a [String],
    reports: &'a [LearnerReport],
    failures: &'a [TrialFailure],
}

/// Rows as CSV text with a header line.
pub fn csv_string<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?)?)
}

fn write(dir: &Path, name: &str, text: &str, written: &mut Vec<PathBuf>) -> Result<()> {
    let path = dir.join(name);
    std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    written.push(path);
    Ok(())
}

/// Write `report.json`, `results.csv`, `summary.csv` and, for bootstrap
/// sweeps, `sweep.csv` and `traces.csv`. Returns the paths written.
pub fn write_artifacts(art: &Artifacts, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut written = Vec::new();
    let report = ReportFile { config: &art.config, warnings: &art.warnings, reports: &art.reports, failures: &art.failures };
    write(dir, "report.json", &serde_json::to_string_pretty(&report)?, &mut written)?;
    write(dir, "results.csv", &csv_string(&art.rows)?, &mut written)?;
    write(dir, "summary.csv", &csv_string(&art.summary)?, &mut written)?;
    if !art.sweep.is_empty() {
        write(dir, "sweep.csv", &csv_string(&art.sweep)?, &mut written)?;
        write(dir, "traces.csv", &csv_string(&art.traces)?, &mut written)?;
    }
    Ok(written)
}
