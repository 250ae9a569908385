use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;

use crate::scenario::Scenario;

#[derive(Serialize)]
struct Sidecar<'a> {
    file: &'a str,
    command: &'a str,
    columns: &'a [&'a str],
    rows: usize,
    scenario_hash: &'a str,
    code_version: &'a str,
    scenario: &'a Scenario,
}

/// Writes CSV tables into one directory, each with a JSON sidecar.
pub struct Sink {
    dir: PathBuf,
    command: String,
    scenario: Scenario,
    hash: String,
}

impl Sink {
    pub fn new(dir: &Path, command: &str, scenario: &Scenario) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let sink = Sink {
            dir: dir.to_path_buf(),
            command: command.into(),
            scenario: scenario.clone(),
            hash: scenario.hash(),
        };
        let text = serde_json::to_string_pretty(scenario)? + "\n";
        fs::write(sink.dir.join("scenario.json"), text)?;
        Ok(sink)
    }

    pub fn hash(&self) -> &str {
        &self.hash
    }

    pub fn csv(&self, name: &str, columns: &[&str], rows: &[Vec<f64>]) -> Result<PathBuf> {
        let path = self.dir.join(name);
        let mut w = csv::Writer::from_path(&path)
            .with_context(|| format!("creating {}", path.display()))?;
        w.write_record(columns)?;
        for r in rows {
            debug_assert_eq!(r.len(), columns.len());
            w.serialize(r)?;
        }
        w.flush()?;
        let meta = Sidecar {
            file: name,
            command: &self.command,
            columns,
            rows: rows.len(),
            scenario_hash: &self.hash,
            code_version: env!("CARGO_PKG_VERSION"),
            scenario: &self.scenario,
        };
        fs::write(
            self.dir.join(format!("{name}.json")),
            serde_json::to_string_pretty(&meta)? + "\n",
        )?;
        Ok(path)
    }
}
