//! Report rendering. JSON keys come out sorted, so equal reports give equal
//! bytes in every format.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde_json::{Map, Value};

use finpar::{Error, Result};

use crate::config::Format;
use crate::run::Report;

pub fn emit_report(r: &Report, format: Format) -> Result<String> {
    let v = r.to_value();
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&v)
                .map_err(|e| Error::Internal(format!("report encoding: {e}")))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => csv_text(&v),
        Format::Text => {
            let mut out = String::new();
            text(&mut out, &v, 0);
            Ok(out)
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) if !is_matrix(m) => {
            for (k, x) in m {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
            for (k, x) in xs.iter().enumerate() {
                flatten(&join(&k.to_string()), x, out);
            }
        }
        other => out.push((prefix.to_string(), cell(other))),
    }
}

/// One row per instance for sweeps, `key,value` pairs otherwise.
fn csv_text(v: &Value) -> Result<String> {
    let err = |e: csv::Error| Error::Internal(format!("csv: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    match v.get("rows").and_then(Value::as_array) {
        Some(rows) => {
            let header: BTreeSet<&str> = rows
                .iter()
                .filter_map(Value::as_object)
                .flat_map(|m| m.keys().map(String::as_str))
                .collect();
            w.write_record(&header).map_err(err)?;
            for row in rows {
                w.write_record(header.iter().map(|k| row.get(*k).map(cell).unwrap_or_default()))
                    .map_err(err)?;
            }
        }
        None => {
            let mut pairs = Vec::new();
            flatten("", v, &mut pairs);
            w.write_record(["key", "value"]).map_err(err)?;
            for (k, x) in pairs {
                w.write_record([k, x]).map_err(err)?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(format!("csv: {e}")))
}

fn is_matrix(m: &Map<String, Value>) -> bool {
    m.len() == 4 && ["ring", "rows", "cols", "entries"].iter().all(|k| m.contains_key(*k))
}

/// Gaussian rationals with zero imaginary part lose the `+0 i`.
fn entry_text(v: &Value) -> String {
    let s = cell(v);
    match s.strip_suffix("+0 i") {
        Some(re) => re.to_string(),
        None => s,
    }
}

/// `[1 0; 0 1] over Q(i)`; a matrix without columns is the zero subspace.
fn matrix_text(m: &Map<String, Value>) -> String {
    let ring = cell(&m["ring"]);
    if m["cols"] == Value::from(0) {
        return format!("0 in {ring}^{}", m["rows"]);
    }
    let rows: Vec<String> = m["entries"]
        .as_array()
        .map(|rs| {
            rs.iter()
                .map(|r| {
                    r.as_array()
                        .map(|xs| xs.iter().map(entry_text).collect::<Vec<_>>().join(" "))
                        .unwrap_or_default()
                })
                .collect()
        })
        .unwrap_or_default();
    format!("[{}] over {ring}", rows.join("; "))
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Object(m) if is_matrix(m) => Some(matrix_text(m)),
        Value::Object(_) => None,
        Value::Array(xs) if xs.is_empty() => Some("[]".into()),
        Value::Array(_) => None,
        other => Some(cell(other)),
    }
}

fn text(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) if !is_matrix(m) => {
            for (k, x) in m {
                match scalar_text(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        text(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                match scalar_text(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        text(out, x, depth + 1);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar_text(other).unwrap_or_default());
        }
    }
}
