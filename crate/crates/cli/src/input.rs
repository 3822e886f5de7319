//! Locating and parsing input documents.

use std::fs;
use std::path::{Path, PathBuf};

use asdim_core::amalgam::{AmalgamationDocument, AmalgamationSpec, ResolveContext};
use asdim_core::{load_graph, FiniteGraph};
use serde::Deserialize;

use crate::error::CliError;

/// Specs compiled into the binary, addressable as `shipped:<name>`.
pub const SHIPPED: &[(&str, &str)] = &[
    ("chain_k2", include_str!("../../../specs/chain_k2.json")),
    ("triangle_edge", include_str!("../../../specs/triangle_edge.json")),
    ("type2_k2", include_str!("../../../specs/type2_k2.json")),
    ("iterate_k2", include_str!("../../../specs/iterate_k2.json")),
    ("p10", include_str!("../../../specs/p10.json")),
];

const SHIPPED_PREFIX: &str = "shipped:";

/// Text of an input together with the directory used for relative factor
/// files.
pub struct Source {
    pub label: String,
    pub text: String,
    pub base_dir: Option<PathBuf>,
}

impl Source {
    pub fn open(arg: &str) -> Result<Self, CliError> {
        if let Some(name) = arg.strip_prefix(SHIPPED_PREFIX) {
            return shipped(name).ok_or_else(|| {
                let names: Vec<&str> = SHIPPED.iter().map(|(n, _)| *n).collect();
                CliError::Config(format!("no shipped spec `{name}` (available: {})", names.join(", ")))
            });
        }
        let path = Path::new(arg);
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Ok(Self {
            label: arg.to_string(),
            text,
            base_dir: path.parent().map(Path::to_path_buf),
        })
    }

    fn path(&self) -> &Path {
        Path::new(&self.label)
    }

    pub fn graph(&self) -> Result<FiniteGraph, CliError> {
        load_graph(&self.text).map_err(|e| CliError::parse(self.path(), e))
    }

    pub fn document(&self) -> Result<AmalgamationDocument, CliError> {
        serde_json::from_str(&self.text).map_err(|e| CliError::parse(self.path(), e))
    }

    pub fn spec(&self) -> Result<AmalgamationSpec, CliError> {
        let doc = self.document()?;
        self.resolve(&doc, None)
    }

    pub fn resolve(&self, doc: &AmalgamationDocument, previous: Option<&FiniteGraph>) -> Result<AmalgamationSpec, CliError> {
        let ctx = ResolveContext {
            base_dir: self.base_dir.as_deref(),
            previous,
        };
        AmalgamationSpec::resolve(doc, ctx).map_err(|e| CliError::parse(self.path(), e))
    }

    pub fn iteration(&self) -> Result<IterationDocument, CliError> {
        serde_json::from_str(&self.text).map_err(|e| CliError::parse(self.path(), e))
    }
}

pub fn shipped(name: &str) -> Option<Source> {
    SHIPPED.iter().find(|(n, _)| *n == name).map(|(n, text)| Source {
        label: format!("{SHIPPED_PREFIX}{n}"),
        text: text.to_string(),
        base_dir: None,
    })
}

/// Stages of an iterated amalgamation; every stage after the first takes
/// the previous amalgam as its first factor via `{"previous": true}`.
#[derive(Debug, Deserialize)]
pub struct IterationDocument {
    pub name: String,
    pub stages: Vec<AmalgamationDocument>,
}
