//! CSV, JSON and run-manifest writers.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// 17 significant digits, enough to round-trip any `f64`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub enum Cell {
    Num(f64),
    Int(usize),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => num(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => {
                format!("\"{}\"", s.replace('"', "\"\""))
            }
            Cell::Text(s) => s.clone(),
        }
    }
}

pub fn csv_string(header: &[String], rows: &[Vec<Cell>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let line: Vec<String> = row.iter().map(Cell::render).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Collects the files a command writes so the manifest can list them.
pub struct OutputDir {
    root: PathBuf,
    written: Vec<String>,
}

impl OutputDir {
    pub fn create(root: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(root).map_err(|source| CliError::Io {
            path: root.to_path_buf(),
            source,
        })?;
        Ok(Self {
            root: root.to_path_buf(),
            written: Vec::new(),
        })
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<PathBuf, CliError> {
        let path = self.root.join(name);
        fs::write(&path, contents).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        self.written.push(name.to_string());
        Ok(path)
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<PathBuf, CliError> {
        let mut text = to_json(value);
        text.push('\n');
        self.write(name, &text)
    }

    pub fn written(&self) -> &[String] {
        &self.written
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serialises")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Versions {
    pub artifact: String,
    /// sha256 of the command, its parameters and the species table in use.
    pub config_hash: String,
}

/// Record of one invocation and everything it wrote.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub outputs: Vec<String>,
    pub versions: Versions,
}

impl RunManifest {
    pub fn new(
        command: &str,
        parameters: BTreeMap<String, String>,
        outputs: Vec<String>,
        config_text: &str,
    ) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(command.as_bytes());
        hasher.update([0]);
        hasher.update(to_json(&parameters).as_bytes());
        hasher.update([0]);
        hasher.update(config_text.as_bytes());
        Self {
            command: command.to_string(),
            parameters,
            outputs,
            versions: Versions {
                artifact: env!("CARGO_PKG_VERSION").to_string(),
                config_hash: hex::encode(hasher.finalize()),
            },
        }
    }

    /// Named after the first output so runs with different `--n` in one
    /// directory keep separate manifests.
    pub fn file_name(&self) -> String {
        let stem = self
            .outputs
            .first()
            .and_then(|o| Path::new(o).file_stem())
            .and_then(|s| s.to_str())
            .unwrap_or(&self.command);
        format!("{stem}_manifest.json")
    }
}
