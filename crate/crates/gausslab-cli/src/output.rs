//! JSON, CSV and plain-text emitters.

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};

use gausslab::Report;
use serde_json::{Map, Value};

/// What a command produced: an evaluation record, reports, or both.
#[derive(Debug, Default)]
pub struct Outcome {
    pub value: Option<Value>,
    pub reports: Vec<Report>,
}

impl Outcome {
    pub fn value(v: Value) -> Self {
        Outcome { value: Some(v), reports: Vec::new() }
    }

    pub fn reports(reports: Vec<Report>) -> Self {
        Outcome { value: None, reports }
    }

    pub fn first_failure(&self) -> Option<&Report> {
        self.reports.iter().find(|r| !r.passed())
    }

    pub fn to_json(&self) -> Value {
        let reports = || -> Value {
            match self.reports.as_slice() {
                [one] => serde_json::to_value(one).expect("report serializes"),
                many => serde_json::to_value(many).expect("report serializes"),
            }
        };
        match (&self.value, self.reports.is_empty()) {
            (Some(v), true) => v.clone(),
            (None, _) => reports(),
            (Some(v), false) => {
                let mut v = v.clone();
                if let Value::Object(m) = &mut v {
                    m.insert("reports".into(), serde_json::to_value(&self.reports).expect("report serializes"));
                }
                v
            }
        }
    }

    /// One row per report (name, params…, ratio, elapsed), or one row for
    /// a bare evaluation with nested keys joined by dots.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        if self.reports.is_empty() {
            let mut flat = Vec::new();
            if let Some(v) = &self.value {
                flatten("", v, &mut flat);
            }
            w.write_record(flat.iter().map(|(k, _)| k.as_str()))?;
            w.write_record(flat.iter().map(|(_, v)| v.as_str()))?;
        } else {
            let keys: BTreeSet<&String> = self.reports.iter().flat_map(|r| r.params.keys()).collect();
            let mut header = vec!["name".to_string()];
            header.extend(keys.iter().map(|k| k.to_string()));
            header.extend(["lhs", "rhs_budget", "ratio", "elapsed"].map(String::from));
            w.write_record(&header)?;
            for r in &self.reports {
                let mut row = vec![r.name.clone()];
                row.extend(keys.iter().map(|k| r.params.get(*k).map(cell).unwrap_or_default()));
                row.extend([r.lhs, r.rhs_budget, r.ratio, r.elapsed].map(|x| x.to_string()));
                w.write_record(&row)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }

    pub fn to_pretty(&self) -> String {
        let mut s = String::new();
        if let Some(v) = &self.value {
            let mut flat = Vec::new();
            flatten("", v, &mut flat);
            for (k, v) in flat {
                s.push_str(&format!("{k:>20}  {v}\n"));
            }
        }
        for r in &self.reports {
            let tag = if r.passed() { "PASS" } else { "FAIL" };
            s.push_str(&format!(
                "{tag}  {:<28} lhs={:.3e} budget={:.3e} ratio={:.3e} ({:.2}s)\n",
                r.name, r.lhs, r.rhs_budget, r.ratio, r.elapsed
            ));
        }
        s
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => flatten_map(prefix, m, out),
        other => out.push((prefix.to_string(), cell(other))),
    }
}

fn flatten_map(prefix: &str, m: &Map<String, Value>, out: &mut Vec<(String, String)>) {
    for (k, v) in m {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        flatten(&key, v, out);
    }
}

/// Writes to `path`, or to stdout for `-`.
pub fn write_to(path: &str, text: &str) -> io::Result<()> {
    if path == "-" {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes())?;
        if !text.ends_with('\n') {
            out.write_all(b"\n")?;
        }
        out.flush()
    } else {
        fs::write(path, text)
    }
}
