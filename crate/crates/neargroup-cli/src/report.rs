//! Machine-readable verification reports. JSON is the primary format
//! (BTreeMap keys keep the output byte-stable across runs); a TSV
//! flattening is available for quick grepping. Exit-code contract:
//! 0 = all verdicts pass, 1 = any verdict fails, 2 = usage error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

#[derive(Serialize)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub rows: Vec<BTreeMap<String, Value>>,
    pub verdicts: Vec<Verdict>,
    pub all_pass: bool,
    /// Wall-clock runtime; reported on stderr, never serialized, so
    /// reports stay byte-stable for a fixed seed and parameters.
    #[serde(skip)]
    pub runtime: Duration,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            rows: Vec::new(),
            verdicts: Vec::new(),
            all_pass: true,
            runtime: Duration::ZERO,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    pub fn push_row(&mut self, row: BTreeMap<String, Value>) {
        self.rows.push(row);
    }

    pub fn verdict(&mut self, check: &str, pass: bool, detail: impl Into<String>) {
        self.all_pass &= pass;
        self.verdicts.push(Verdict {
            check: check.to_string(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command\t{}", self.command);
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "param\t{k}\t{}", tsv_value(v));
        }
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|(k, v)| format!("{k}={}", tsv_value(v)))
                .collect();
            let _ = writeln!(out, "row\t{}", cells.join("\t"));
        }
        for v in &self.verdicts {
            let _ = writeln!(
                out,
                "verdict\t{}\t{}\t{}",
                v.check,
                if v.pass { "pass" } else { "FAIL" },
                v.detail
            );
        }
        let _ = writeln!(out, "all_pass\t{}", self.all_pass);
        out
    }
}

fn tsv_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(tsv_value).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

/// Shorthand for assembling a report row.
pub fn row(pairs: Vec<(&str, Value)>) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
