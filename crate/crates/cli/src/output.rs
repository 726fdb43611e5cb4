//! CSV and JSON emission. Floats are printed with 17 significant digits so
//! parsing a produced file recovers the exact values.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use zfdpc_core::{SystemConfig, ThroughputEstimate};

use crate::CliError;

pub fn fmt_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        CsvTable {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Writes `content` to the path, or to stdout when no path is given.
pub fn write_text(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, content)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::usage(format!("cannot write to stdout: {e}")))
        }
    }
}

#[derive(Serialize)]
pub struct RunConfig {
    pub users: usize,
    pub power: f64,
    pub active: usize,
    pub feedback_bits: usize,
    pub perfect_csit: bool,
    pub trials: usize,
    pub inner: usize,
}

/// JSON sidecar recording one simulation run for reproducibility.
#[derive(Serialize)]
pub struct RunSummary {
    pub config: RunConfig,
    pub seed: u64,
    pub scheme: String,
    pub mean: f64,
    pub stderr: f64,
    pub per_user: Vec<f64>,
    pub version: String,
}

impl RunSummary {
    pub fn new(
        cfg: &SystemConfig,
        scheme: &str,
        perfect_csit: bool,
        trials: usize,
        inner: usize,
        est: &ThroughputEstimate,
    ) -> Self {
        RunSummary {
            config: RunConfig {
                users: cfg.users,
                power: cfg.power,
                active: cfg.active,
                feedback_bits: cfg.feedback_bits,
                perfect_csit,
                trials,
                inner,
            },
            seed: est.seed,
            scheme: scheme.to_string(),
            mean: est.mean,
            stderr: est.std_err,
            per_user: est.per_user.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

pub fn summaries_json(summaries: &[RunSummary]) -> Result<String, CliError> {
    let mut text = if summaries.len() == 1 {
        serde_json::to_string_pretty(&summaries[0])
    } else {
        serde_json::to_string_pretty(summaries)
    }
    .map_err(|e| CliError::usage(format!("JSON encoding failed: {e}")))?;
    text.push('\n');
    Ok(text)
}
