//! Aggregation of certificate files into one table.

use std::fmt::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::artifact::{find_certificates, load_certificate, Certificate, Outcome};
use crate::error::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub name: String,
    pub kind: String,
    pub params: String,
    pub verdict: Outcome,
    pub measured: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ReportTable {
    pub rows: Vec<ReportRow>,
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(map) if map.len() == 2 && map.contains_key("gamma") && map.contains_key("c") => {
            format!("({}, {})", compact(&map["gamma"]), compact(&map["c"]))
        }
        other => other.to_string(),
    }
}

fn pairs<'a>(entries: impl Iterator<Item = (&'a String, &'a Value)>) -> String {
    entries.map(|(k, v)| format!("{k}={}", compact(v))).collect::<Vec<_>>().join(" ")
}

impl ReportRow {
    fn from_certificate(c: &Certificate) -> Self {
        Self {
            name: c.name.clone(),
            kind: c.kind.clone(),
            params: pairs(c.config.params.iter()),
            verdict: c.verdict,
            measured: pairs(c.measured.iter()),
        }
    }
}

impl ReportTable {
    pub fn from_certificates<'a>(certs: impl IntoIterator<Item = &'a Certificate>) -> Self {
        Self {
            rows: certs.into_iter().map(ReportRow::from_certificate).collect(),
        }
    }

    /// Reads every certificate below `dir`; a file that does not parse is
    /// an error naming it.
    pub fn load(dir: &Path) -> Result<Self, CliError> {
        if !dir.is_dir() {
            return Err(CliError::Config(format!("{} is not a directory", dir.display())));
        }
        let certs = find_certificates(dir)?
            .iter()
            .map(|p| load_certificate(p))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_certificates(&certs))
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.verdict.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let header = ["name", "kind", "params", "verdict", "measured"];
        let cells: Vec<[String; 5]> = self
            .rows
            .iter()
            .map(|r| {
                let verdict = if r.verdict.passed() { "PASS" } else { "FAIL" };
                [r.name.clone(), r.kind.clone(), r.params.clone(), verdict.into(), r.measured.clone()]
            })
            .collect();
        let mut widths = header.map(|h| h.chars().count());
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        let mut line = |row: [&str; 5]| {
            let padded: Vec<String> = row.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(header);
        for row in &cells {
            line([&row[0], &row[1], &row[2], &row[3], &row[4]]);
        }
        out
    }
}
