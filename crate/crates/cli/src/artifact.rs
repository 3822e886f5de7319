//! Certificate envelopes and their persistence.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use tempfile::NamedTempFile;

use crate::error::CliError;

pub const CERT_SUFFIX: &str = ".cert.json";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Outcome::Pass
    }
}

/// The command, input and parameters that produced an artifact.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub spec: String,
    pub params: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// One artifact written by a command. `measured` holds the headline numbers
/// shown in reports, `detail` the full record.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: String,
    pub name: String,
    pub config: RunConfig,
    pub verdict: Outcome,
    pub measured: BTreeMap<String, Value>,
    pub detail: Value,
}

impl Certificate {
    pub fn file_name(&self) -> String {
        format!("{}.{}{CERT_SUFFIX}", self.name, self.kind)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    let mut tmp = NamedTempFile::new_in(&dir).map_err(|e| CliError::io(&dir, e))?;
    tmp.write_all(contents).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

/// Writes each certificate into `dir`, or prints them when no directory is
/// given.
pub fn emit(certs: &[Certificate], dir: Option<&Path>) -> Result<(), CliError> {
    match dir {
        Some(d) => {
            for c in certs {
                write_atomic(&d.join(c.file_name()), c.to_json().as_bytes())?;
            }
        }
        None => {
            for c in certs {
                print!("{}", c.to_json());
            }
        }
    }
    Ok(())
}

/// All certificate files under `dir`, recursively, in sorted path order.
pub fn find_certificates(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        let entries = fs::read_dir(&d).map_err(|e| CliError::io(&d, e))?;
        for entry in entries {
            let path = entry.map_err(|e| CliError::io(&d, e))?.path();
            if path.is_dir() {
                stack.push(path);
            } else if path.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.ends_with(CERT_SUFFIX)) {
                out.push(path);
            }
        }
    }
    out.sort();
    Ok(out)
}

pub fn load_certificate(path: &Path) -> Result<Certificate, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(path, e))
}
