use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "derilab/1";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub checks: usize,
    pub failures: usize,
}

#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub schema: &'static str,
    pub tool: Value,
    pub config: Value,
    pub results: Vec<Value>,
    pub timing: Value,
    pub oracles: Tally,
}

impl ReportDocument {
    pub fn new(config: Value, results: Vec<Value>, wall_ms: u128, oracles: Tally) -> Self {
        ReportDocument {
            schema: SCHEMA,
            tool: json!({ "name": "derilab", "version": env!("CARGO_PKG_VERSION") }),
            config,
            results,
            timing: json!({ "wall_time_ms": wall_ms }),
            oracles,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// Flat projection of the results array: one row per result, nested
    /// values written as JSON text.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut header: Vec<String> = Vec::new();
        for r in &self.results {
            if let Value::Object(m) = r {
                for k in m.keys() {
                    if !header.contains(k) {
                        header.push(k.clone());
                    }
                }
            }
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header)?;
        for r in &self.results {
            let empty = Map::new();
            let m = r.as_object().unwrap_or(&empty);
            w.write_record(header.iter().map(|k| match m.get(k) {
                None | Some(Value::Null) => String::new(),
                Some(Value::String(s)) => s.clone(),
                Some(v) => v.to_string(),
            }))?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("utf-8 csv"))
    }
}

pub fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(p, text)
        }
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}
