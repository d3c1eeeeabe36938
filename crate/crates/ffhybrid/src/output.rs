//! JSON and CSV writers. Both carry the schema version and the run configuration.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::{Destination, Format, RunConfig, SCHEMA_VERSION};

/// A pass/fail check; failures make the run exit with status 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Failing cases or the measured quantity.
    pub detail: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: Value) -> Self {
        Self {
            name: name.into(),
            passed,
            detail,
        }
    }
}

/// Rows for CSV output.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// What a subcommand produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub results: Value,
    pub table: Option<Table>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct JsonDocument {
    pub schema_version: u32,
    pub config: RunConfig,
    pub checks: Vec<Check>,
    pub results: Value,
}

const CSV_SCHEMA: &str = "# schema_version=";
const CSV_CONFIG: &str = "# config=";

pub fn render(config: &RunConfig, report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let doc = JsonDocument {
                schema_version: SCHEMA_VERSION,
                config: config.clone(),
                checks: report.checks.clone(),
                results: report.results.clone(),
            };
            let mut s = serde_json::to_string_pretty(&doc)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let table = report.table.as_ref().context("this subcommand has no tabular output")?;
            let mut out = format!("{CSV_SCHEMA}{SCHEMA_VERSION}\n{CSV_CONFIG}{}\n", serde_json::to_string(config)?);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.header)?;
            for row in &table.rows {
                w.write_record(row)?;
            }
            out.push_str(std::str::from_utf8(&w.into_inner()?)?);
            Ok(out)
        }
    }
}

pub fn write(dest: &Destination, text: &str) -> Result<()> {
    match &dest.path {
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
        }
    }
    Ok(())
}

/// The configuration echoed in a file written by [`render`].
pub fn read_config(path: &Path) -> Result<(RunConfig, Format)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_config_str(&text)
}

pub fn read_config_str(text: &str) -> Result<(RunConfig, Format)> {
    if text.starts_with(CSV_SCHEMA) {
        let line = text
            .lines()
            .find_map(|l| l.strip_prefix(CSV_CONFIG))
            .context("CSV file has no config line")?;
        return Ok((serde_json::from_str(line)?, Format::Csv));
    }
    let doc: JsonDocument = serde_json::from_str(text)?;
    Ok((doc.config, Format::Json))
}

/// Data rows of a CSV file written by [`render`], header included.
pub fn read_csv_rows(text: &str) -> Result<Vec<csv::StringRecord>> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .has_headers(false)
        .from_reader(text.as_bytes());
    Ok(r.records().collect::<Result<Vec<_>, _>>()?)
}
