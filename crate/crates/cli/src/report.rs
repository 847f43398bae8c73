//! JSON and CSV output with provenance.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: Value,
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(command: &str, config: Value, seed: Option<u64>) -> Self {
        Provenance { tool: "cctool", version: env!("CARGO_PKG_VERSION"), command: command.into(), config, seed }
    }
}

/// `body` with a `provenance` key added; bodies that are not objects are
/// stored under `result`.
pub fn with_provenance(body: impl Serialize, provenance: &Provenance) -> Result<Value> {
    let mut v = serde_json::to_value(body)?;
    if !v.is_object() {
        v = json!({ "result": v });
    }
    v.as_object_mut().unwrap().insert("provenance".into(), serde_json::to_value(provenance)?);
    Ok(v)
}

/// Writes pretty JSON to `out`, or to stdout.
pub fn emit(value: &Value, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(p) => std::fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn cell(v: &Value) -> String {
    let s = match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

/// One row per record, columns from the keys of the first record.
pub fn write_csv<T: Serialize>(rows: &[T], path: &Path) -> Result<()> {
    let values: Vec<Value> = rows.iter().map(serde_json::to_value).collect::<Result<_, _>>()?;
    let header: Vec<String> = match values.first() {
        Some(Value::Object(m)) => m.keys().cloned().collect(),
        _ => Vec::new(),
    };
    let mut f = std::fs::File::create(path).with_context(|| format!("writing {}", path.display()))?;
    writeln!(f, "{}", header.join(","))?;
    for v in &values {
        let line: Vec<String> = header.iter().map(|k| cell(&v[k])).collect();
        writeln!(f, "{}", line.join(","))?;
    }
    Ok(())
}
