//! JSON, CSV and table renderings of a command result.
//!
//! CSV and table flatten nested objects into dotted column names in
//! declaration order. Arrays of scalars become one `;`-separated cell, and
//! arrays of objects nested below the top level are embedded as compact JSON.
//! A top-level array becomes one row per element.

use serde_json::Value;

use crate::error::{Error, Result};

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten_into(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten_into(&key(k), x, out);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            out.push((prefix.to_string(), items.iter().map(scalar).collect::<Vec<_>>().join(";")));
        }
        Value::Array(_) => out.push((prefix.to_string(), v.to_string())),
        other => out.push((if prefix.is_empty() { "value".into() } else { prefix.to_string() }, scalar(other))),
    }
}

fn rows(v: &Value) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let items: Vec<&Value> = match v {
        Value::Array(items) => items.iter().collect(),
        other => vec![other],
    };
    let mut header: Vec<String> = Vec::new();
    let mut body = Vec::new();
    for item in items {
        let mut cells = Vec::new();
        flatten_into("", item, &mut cells);
        let keys: Vec<String> = cells.iter().map(|c| c.0.clone()).collect();
        if header.is_empty() {
            header = keys;
        } else if header != keys {
            return Err(Error::internal("rows of a table have different columns"));
        }
        body.push(cells.into_iter().map(|c| c.1).collect());
    }
    Ok((header, body))
}

pub fn to_csv(v: &Value) -> Result<String> {
    let (header, body) = rows(v)?;
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    let io = |e: csv::Error| Error::internal(format!("csv: {e}"));
    if !header.is_empty() {
        w.write_record(&header).map_err(io)?;
    }
    for row in &body {
        w.write_record(row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::internal(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::internal(e.to_string()))
}

/// Aligned columns for arrays, `key  value` lines for single objects.
pub fn to_table(v: &Value) -> Result<String> {
    let (header, body) = rows(v)?;
    let mut out = String::new();
    if !v.is_array() {
        let width = header.iter().map(|h| h.chars().count()).max().unwrap_or(0);
        for (h, x) in header.iter().zip(body.first().into_iter().flatten()) {
            out.push_str(&format!("{h:<width$}  {x}\n"));
        }
        return Ok(out);
    }
    if body.is_empty() {
        out.push_str("(none)\n");
        return Ok(out);
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|i| body.iter().map(|r| r[i].chars().count()).chain([header[i].chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    out.push_str(&line(&header));
    for r in &body {
        out.push_str(&line(r));
    }
    Ok(out)
}
