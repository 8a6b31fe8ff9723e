use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Inputs sufficient to regenerate a report (together with the master seed).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    /// Ambient dimension, for experiments not parameterised by `n`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c: Option<f64>,
    pub trials: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact_starts: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub ns: Vec<usize>,
    /// Requested ball volume as a decimal string.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ball_target: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ball_radius: Option<usize>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Timings {
    pub total: Duration,
}

/// Output of one experiment run.
///
/// `trials` holds one flat record per trial, in trial order. Wall-clock
/// timings are kept out of the serialized form so identical inputs give
/// byte-identical JSON.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub name: String,
    pub params: ReportParams,
    pub master_seed: String,
    pub trials: Vec<Map<String, Value>>,
    pub summary: Map<String, Value>,
    #[serde(skip)]
    pub timings: Timings,
}

impl ExperimentReport {
    pub(crate) fn new(name: &str, params: ReportParams, master_seed: u64) -> Self {
        ExperimentReport {
            name: name.to_string(),
            params,
            master_seed: master_seed.to_string(),
            trials: Vec::new(),
            summary: Map::new(),
            timings: Timings::default(),
        }
    }

    pub fn master_seed(&self) -> Result<u64> {
        self.master_seed
            .parse()
            .map_err(|e| Error::Parse(format!("master_seed {:?}: {e}", self.master_seed)))
    }

    pub(crate) fn summarize(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("summary values serialize");
        self.summary.insert(key.to_string(), v);
    }

    pub fn summary_value(&self, key: &str) -> Option<&Value> {
        self.summary.get(key)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// One CSV row per trial; columns follow the first record's keys.
    pub fn trials_csv(&self) -> String {
        records_csv(&self.trials)
    }

    /// `key,value` rows of the scalar summary entries.
    pub fn summary_csv(&self) -> String {
        let mut out = String::from("key,value\n");
        for (k, v) in &self.summary {
            if !v.is_object() && !v.is_array() {
                writeln!(out, "{},{}", csv_field(k), csv_value(v)).unwrap();
            }
        }
        out
    }
}

pub(crate) fn record<T: Serialize>(value: &T) -> Map<String, Value> {
    match serde_json::to_value(value).expect("records serialize") {
        Value::Object(m) => m,
        other => panic!("trial record must be an object, got {other}"),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// A JSON scalar as CSV text; numbers use the same formatting as the JSON.
fn csv_value(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => csv_field(s),
        other => csv_field(&other.to_string()),
    }
}

pub fn records_csv(records: &[Map<String, Value>]) -> String {
    let Some(first) = records.first() else {
        return String::new();
    };
    let keys: Vec<&String> = first.keys().collect();
    let mut out = keys.iter().map(|k| csv_field(k)).collect::<Vec<_>>().join(",");
    out.push('\n');
    for r in records {
        let row: Vec<String> = keys
            .iter()
            .map(|k| r.get(*k).map(csv_value).unwrap_or_default())
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_quotes_and_orders_columns() {
        let r1 = record(&json!({"trial": 0, "ratio": "1/2", "note": "a,b", "ok": true}));
        let r2 = record(&json!({"trial": 1, "ratio": "3/4", "note": "x", "ok": false}));
        let csv = records_csv(&[r1, r2]);
        assert_eq!(csv, "trial,ratio,note,ok\n0,1/2,\"a,b\",true\n1,3/4,x,false\n");
        assert_eq!(records_csv(&[]), "");
    }

    #[test]
    fn floats_match_json_text() {
        let r = record(&json!({"x": 0.1f64, "y": 1e-7f64}));
        let csv = records_csv(std::slice::from_ref(&r));
        let json = serde_json::to_string(&r).unwrap();
        for v in csv.lines().nth(1).unwrap().split(',') {
            assert!(json.contains(v), "{v} not in {json}");
        }
    }

    #[test]
    fn empty_report_is_valid_json() {
        let r = ExperimentReport::new("demo", ReportParams::default(), 5);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["trials"], json!([]));
        assert_eq!(v["master_seed"], "5");
    }
}
