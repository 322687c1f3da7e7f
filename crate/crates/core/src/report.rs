//! Named pass/fail records and their table, JSON and CSV renderings.

use std::fmt::Write as _;

use serde::Serialize;

use crate::lie::RelationReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }

    /// A check that records an outcome rather than asserting one.
    pub fn info(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(name, true, detail)
    }

    /// Turns an error into a failed check so a suite can keep going.
    pub fn from_result(name: impl Into<String>, r: crate::Result<Check>) -> Self {
        match r {
            Ok(c) => c,
            Err(e) => Self::new(name, false, e.to_string()),
        }
    }
}

impl From<&RelationReport> for Check {
    fn from(r: &RelationReport) -> Self {
        Check::new(r.name.clone(), r.pass, r.detail())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub d: Option<usize>,
    pub checks: Vec<Check>,
    /// Command payload (e.g. the decomposition blocks), merged into the
    /// top-level JSON object.
    #[serde(flatten)]
    pub data: serde_json::Map<String, serde_json::Value>,
    /// Human-readable lines printed above the checks in table format.
    #[serde(skip)]
    pub body: Vec<String>,
    pub elapsed_ms: u128,
}

impl RunReport {
    pub fn new(command: impl Into<String>, d: Option<usize>) -> Self {
        Self {
            command: command.into(),
            d,
            checks: Vec::new(),
            data: serde_json::Map::new(),
            body: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.render_table(),
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Csv => self.render_csv(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        for line in &self.body {
            let _ = writeln!(out, "{line}");
        }
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{tag}  {:width$}  {}", c.name, c.detail);
        }
        let _ = writeln!(
            out,
            "{}: {} checks, {} failed ({} ms)",
            self.command,
            self.checks.len(),
            self.failures(),
            self.elapsed_ms
        );
        out
    }

    fn render_csv(&self) -> String {
        let mut out = String::from("name,pass,detail\n");
        for c in &self.checks {
            let _ = writeln!(out, "{},{},{}", csv_field(&c.name), c.pass, csv_field(&c.detail));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_commas() {
        let mut r = RunReport::new("x", Some(1));
        r.checks.push(Check::new("a,b", true, "say \"hi\""));
        assert_eq!(r.render(Format::Csv), "name,pass,detail\n\"a,b\",true,\"say \"\"hi\"\"\"\n");
    }

    #[test]
    fn exit_status_follows_checks() {
        let mut r = RunReport::new("x", None);
        r.checks.push(Check::info("note", ""));
        assert!(r.all_pass());
        r.checks.push(Check::new("bad", false, ""));
        assert!(!r.all_pass());
        assert!(r.render(Format::Table).contains("FAIL  bad"));
    }
}
