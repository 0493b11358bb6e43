//! Output artifacts and the metadata file written next to them.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::scenario::Scenario;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "SIMULATE_OUT_DIR";

/// A numeric table with a mandatory header row.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: Vec<String>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    /// Every value must be finite; a NaN or infinity means a computation
    /// went wrong.
    pub fn check_finite(&self) -> Result<(), CliError> {
        for (i, row) in self.rows.iter().enumerate() {
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(CliError::SelfCheck(format!(
                    "non-finite value in column {} at row {i}",
                    self.header[j]
                )));
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut wtr = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        wtr.write_record(&self.header)?;
        for row in &self.rows {
            wtr.serialize(row)?;
        }
        wtr.into_inner().map_err(|e| CliError::Io(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Contents {
    Table(Table),
    /// Pre-rendered text, used where field order is part of the format.
    Text(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub file_name: String,
    pub contents: Contents,
}

/// Everything one command produces.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub artifacts: Vec<Artifact>,
    /// Run-specific facts recorded in the metadata.
    pub notes: Map<String, Value>,
    /// Lines printed to stdout.
    pub summary: Vec<String>,
}

impl Report {
    pub fn table(&mut self, file_name: String, table: Table) {
        self.artifacts.push(Artifact {
            file_name,
            contents: Contents::Table(table),
        });
    }

    pub fn text(&mut self, file_name: String, text: String) {
        self.artifacts.push(Artifact {
            file_name,
            contents: Contents::Text(text),
        });
    }

    pub fn note(&mut self, key: &str, value: Value) {
        self.notes.insert(key.to_owned(), value);
    }
}

/// Resolves the output directory: explicit, then `$SIMULATE_OUT_DIR`, then
/// the working directory.
pub fn output_dir(explicit: Option<&str>) -> PathBuf {
    match explicit {
        Some(dir) => PathBuf::from(dir),
        None => std::env::var_os(OUT_DIR_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(".")),
    }
}

/// Writes every artifact into `dir` plus `<meta_name>` describing the run.
/// Returns the paths written, metadata last.
pub fn write_report(
    dir: &Path,
    meta_name: &str,
    command: &str,
    scenario: &Scenario,
    report: &Report,
) -> Result<Vec<PathBuf>, CliError> {
    let mut rendered = Vec::with_capacity(report.artifacts.len());
    for artifact in &report.artifacts {
        let bytes = match &artifact.contents {
            Contents::Table(table) => {
                table.check_finite()?;
                table.to_csv()?
            }
            Contents::Text(text) => text.clone().into_bytes(),
        };
        rendered.push((dir.join(&artifact.file_name), bytes));
    }

    let meta = json!({
        "tool": "simulate",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "seed": scenario.seed,
        "tolerance": scenario.tolerance,
        "scenario": scenario,
        "outputs": report.artifacts.iter().map(|a| a.file_name.as_str()).collect::<Vec<_>>(),
        "notes": report.notes,
    });
    let mut meta_text = serde_json::to_string_pretty(&meta).expect("metadata serializes");
    meta_text.push('\n');
    rendered.push((dir.join(meta_name), meta_text.into_bytes()));

    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut written = Vec::with_capacity(rendered.len());
    for (path, bytes) in rendered {
        fs::write(&path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        written.push(path);
    }
    Ok(written)
}
