//! JSON and CSV emission from one `serde_json::Value`, so both formats carry
//! the same numbers.

use std::io::Write;
use std::path::Path;

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// How a document becomes CSV rows.
pub enum Table {
    /// `path,value` rows over every leaf.
    Flatten,
    /// The array under `key`, one row per element, columns from the keys of
    /// its first element. Booleans become `0`/`1`.
    Rows(&'static str),
}

/// Rounds every non-integer number to `digits` significant digits.
pub fn round_floats(v: &mut Value, digits: usize) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            let rounded: f64 = format!("{:.*e}", digits.max(1) - 1, x)
                .parse()
                .expect("formatted float parses");
            if let Some(r) = serde_json::Number::from_f64(rounded) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|x| round_floats(x, digits)),
        Value::Object(map) => map.values_mut().for_each(|x| round_floats(x, digits)),
        _ => {}
    }
}

fn leaf(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => u8::from(*b).to_string(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<[String; 2]>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => map.iter().for_each(|(k, x)| flatten(&join(k), x, out)),
        Value::Array(items) if !items.is_empty() => items
            .iter()
            .enumerate()
            .for_each(|(i, x)| flatten(&join(&i.to_string()), x, out)),
        other => out.push([prefix.to_string(), leaf(other)]),
    }
}

fn to_csv(doc: &Value, table: &Table) -> Result<Vec<u8>, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let e = |err: csv::Error| err.to_string();
    match table {
        Table::Flatten => {
            w.write_record(["path", "value"]).map_err(e)?;
            let mut rows = Vec::new();
            flatten("", doc, &mut rows);
            for r in rows {
                w.write_record(&r).map_err(e)?;
            }
        }
        Table::Rows(key) => {
            let rows = doc
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| format!("no `{key}` table in the output"))?;
            let empty = Map::new();
            let columns: Vec<String> = rows
                .first()
                .and_then(Value::as_object)
                .unwrap_or(&empty)
                .keys()
                .cloned()
                .collect();
            w.write_record(&columns).map_err(e)?;
            for row in rows {
                let cells: Vec<String> = columns.iter().map(|c| leaf(&row[c.as_str()])).collect();
                w.write_record(&cells).map_err(e)?;
            }
        }
    }
    w.into_inner().map_err(|err| err.to_string())
}

pub fn emit(
    mut doc: Value,
    format: Format,
    table: Table,
    digits: usize,
    path: Option<&Path>,
) -> Result<(), String> {
    round_floats(&mut doc, digits);
    let bytes = match format {
        Format::Json => {
            let mut b = serde_json::to_vec_pretty(&doc).map_err(|e| e.to_string())?;
            b.push(b'\n');
            b
        }
        Format::Csv => to_csv(&doc, &table)?,
    };
    match path {
        Some(p) => {
            std::fs::write(p, bytes).map_err(|e| format!("cannot write {}: {e}", p.display()))
        }
        None => std::io::stdout()
            .write_all(&bytes)
            .map_err(|e| e.to_string()),
    }
}
