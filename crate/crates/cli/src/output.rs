//! Deterministic output files: CSV with fixed float formatting and run
//! manifests with content digests.
//!
//! Floats are written with 17 significant digits so every binary64 value
//! round-trips exactly; re-running a manifest therefore reproduces files byte
//! for byte.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// 17-significant-digit scientific notation; round-trip exact for f64.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// A CSV file under construction; always UTF-8, LF line endings.
pub struct CsvFile {
    buf: String,
}

impl CsvFile {
    pub fn new(header: &str) -> Self {
        Self {
            buf: format!("{header}\n"),
        }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.buf.push_str(&fields.join(","));
        self.buf.push('\n');
    }

    pub fn bytes(&self) -> &[u8] {
        self.buf.as_bytes()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutputRecord {
    pub file: String,
    pub sha256: String,
}

/// Echo of a run: command, full parameters, and digests of everything
/// written. `argv` is the normalized flag list that reproduces the run
/// (output directory and thread count excluded, since neither may affect
/// file contents).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    pub params: BTreeMap<String, String>,
    pub argv: Vec<String>,
    pub outputs: Vec<OutputRecord>,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            params: BTreeMap::new(),
            argv: vec![command.to_string()],
            outputs: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        let value = value.to_string();
        self.argv.push(format!("--{key}"));
        self.argv.push(value.clone());
        self.params.insert(key.to_string(), value);
    }
}

/// Collects output files and writes them plus the manifest in one commit.
pub struct OutputSet {
    dir: PathBuf,
    manifest: RunManifest,
    files: Vec<(String, Vec<u8>)>,
}

impl OutputSet {
    pub fn new(dir: &Path, manifest: RunManifest) -> Self {
        Self {
            dir: dir.to_path_buf(),
            manifest,
            files: Vec::new(),
        }
    }

    pub fn add(&mut self, name: &str, bytes: Vec<u8>) {
        self.manifest.outputs.push(OutputRecord {
            file: name.to_string(),
            sha256: sha256_hex(&bytes),
        });
        self.files.push((name.to_string(), bytes));
    }

    pub fn add_csv(&mut self, name: &str, csv: CsvFile) {
        self.add(name, csv.bytes().to_vec());
    }

    /// Writes all files plus `<command>_manifest.json`; returns the paths.
    pub fn commit(self) -> Result<Vec<PathBuf>, CliError> {
        fs::create_dir_all(&self.dir)?;
        let mut written = Vec::new();
        for (name, bytes) in &self.files {
            let path = self.dir.join(name);
            fs::write(&path, bytes)?;
            written.push(path);
        }
        let manifest_name = format!("{}_manifest.json", self.manifest.command.replace('-', "_"));
        let path = self.dir.join(manifest_name);
        let mut text = serde_json::to_string_pretty(&self.manifest)
            .expect("manifest serialization cannot fail");
        text.push('\n');
        fs::write(&path, text)?;
        written.push(path);
        Ok(written)
    }
}
