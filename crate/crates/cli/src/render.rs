//! Text, JSON and CSV rendering of command results.
//!
//! Every command produces a JSON value (an object, or an array of
//! objects). Text output is an indented `key: value` listing of the same
//! value, and CSV writes one row per object with nested values as JSON.

use std::fmt::Write as _;

use anyhow::Result;
use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

pub fn render(value: &Value, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(value)? + "\n"),
        Format::Text => {
            let mut out = String::new();
            match value {
                Value::Array(items) => {
                    for (i, item) in items.iter().enumerate() {
                        if i > 0 {
                            out.push('\n');
                        }
                        text_value(&mut out, item, 0);
                    }
                }
                other => text_value(&mut out, other, 0),
            }
            Ok(out)
        }
        Format::Csv => csv_rows(value),
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| i.is_number() || i.is_boolean()) => Some(format!(
            "[{}]",
            items.iter().map(|i| scalar(i).unwrap_or_default()).collect::<Vec<_>>().join(", ")
        )),
        Value::Array(items) if items.iter().all(|i| matches!(i, Value::Array(inner) if inner.iter().all(Value::is_number))) => {
            Some(format!(
                "[{}]",
                items.iter().map(|i| scalar(i).unwrap_or_default()).collect::<Vec<_>>().join(", ")
            ))
        }
        _ => None,
    }
}

fn text_value(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match scalar(val) {
                    Some(s) => writeln!(out, "{pad}{k}: {s}").unwrap(),
                    None if val.as_array().is_some_and(Vec::is_empty) => writeln!(out, "{pad}{k}: []").unwrap(),
                    None => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        text_value(out, val, indent + 2);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None => {
                        let mut inner = String::new();
                        text_value(&mut inner, item, indent + 2);
                        let trimmed = inner.trim_start_matches(' ');
                        write!(out, "{pad}- {trimmed}").unwrap();
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar(other).unwrap_or_default()).unwrap(),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_rows(value: &Value) -> Result<String> {
    let rows: Vec<&serde_json::Map<String, Value>> = match value {
        Value::Array(items) => items.iter().filter_map(Value::as_object).collect(),
        Value::Object(map) => vec![map],
        _ => Vec::new(),
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(first) = rows.first() {
        w.write_record(first.keys())?;
        for row in &rows {
            w.write_record(first.keys().map(|k| row.get(k).map(cell).unwrap_or_default()))?;
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_listing() {
        let v = json!({"n": 4, "set": [1, 2], "edges": [[0, 1], [1, 2]], "rows": [{"a": 1, "b": "x"}], "none": null});
        let text = render(&v, Format::Text).unwrap();
        assert_eq!(text, "n: 4\nset: [1, 2]\nedges: [[0, 1], [1, 2]]\nrows:\n  - a: 1\n    b: x\nnone: -\n");
    }

    #[test]
    fn csv_quotes_nested_values() {
        let v = json!([{"id": "a", "list": [1, 2]}, {"id": "b,c", "list": []}]);
        assert_eq!(render(&v, Format::Csv).unwrap(), "id,list\na,\"[1,2]\"\n\"b,c\",[]\n");
    }
}
