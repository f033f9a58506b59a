//! Experiment reports: one table per command, rendered as CSV (data
//! only) or JSON (data plus parameters and wall-clock duration). Both
//! renderings carry identical row data and are byte-deterministic for
//! fixed inputs, the JSON duration field aside.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Serialize)]
pub struct Report {
    pub experiment: String,
    pub parameters: BTreeMap<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    pub complete: bool,
    pub duration_ms: u128,
}

fn csv_field(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

impl Report {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(csv_field).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
