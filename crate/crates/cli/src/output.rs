//! Rendering of command results as JSON, CSV or plain text.
//!
//! Results are converted to `serde_json::Value` first and every float is
//! rounded to 10 significant digits, so all three formats agree.

use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::Format;

pub const SIGNIFICANT: usize = 10;

pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT - 1, x)
        .parse()
        .expect("formatted float parses")
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(num) if num.is_f64() => {
            let x = round_sig(num.as_f64().expect("f64 number"));
            if let Some(r) = serde_json::Number::from_f64(x) {
                *num = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

pub fn to_value<T: Serialize>(data: &T) -> Value {
    let mut v = serde_json::to_value(data).expect("results serialize to JSON");
    round_value(&mut v);
    v
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar_text).collect::<Vec<_>>().join(" "),
        Value::Object(_) => v.to_string(),
        other => other.to_string(),
    }
}

fn rows(v: &Value) -> Option<Vec<&Map<String, Value>>> {
    match v {
        Value::Object(map) => Some(vec![map]),
        Value::Array(items) => items.iter().map(Value::as_object).collect(),
        _ => None,
    }
}

fn write_csv(v: &Value, out: &mut dyn Write) -> Result<(), String> {
    let rows = rows(v).ok_or("csv needs an object or a list of objects")?;
    let Some(first) = rows.first() else {
        return Ok(());
    };
    let header: Vec<&String> = first.keys().collect();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header.iter().map(|k| k.as_str()))
        .map_err(|e| e.to_string())?;
    for row in &rows {
        let mut record = Vec::with_capacity(header.len());
        for key in &header {
            let cell = row.get(*key).unwrap_or(&Value::Null);
            if matches!(cell, Value::Object(_))
                || cell
                    .as_array()
                    .is_some_and(|a| a.iter().any(|x| x.is_object()))
            {
                return Err(format!(
                    "column {key} is nested and cannot be written as csv"
                ));
            }
            record.push(scalar_text(cell));
        }
        w.write_record(&record).map_err(|e| e.to_string())?;
    }
    w.flush().map_err(|e| e.to_string())
}

fn write_text(v: &Value, out: &mut dyn Write) -> std::io::Result<()> {
    match v {
        Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
            let header: Vec<&String> = items[0].as_object().expect("object").keys().collect();
            writeln!(
                out,
                "{}",
                header
                    .iter()
                    .map(|k| k.as_str())
                    .collect::<Vec<_>>()
                    .join("\t")
            )?;
            for item in items {
                let map = item.as_object().expect("object");
                let cells: Vec<String> = header
                    .iter()
                    .map(|k| scalar_text(map.get(*k).unwrap_or(&Value::Null)))
                    .collect();
                writeln!(out, "{}", cells.join("\t"))?;
            }
        }
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Array(items) if items.iter().any(Value::is_object) => {
                        writeln!(out, "{k}:")?;
                        for item in items {
                            writeln!(out, "  {}", item)?;
                        }
                    }
                    _ => writeln!(out, "{k}: {}", scalar_text(val))?,
                }
            }
        }
        other => writeln!(out, "{}", scalar_text(other))?,
    }
    Ok(())
}

/// Writes `v` in `format`; `graph6` is handled by the caller.
pub fn emit(v: &Value, format: Format, out: &mut dyn Write) -> Result<(), String> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, v).map_err(|e| e.to_string())?;
            writeln!(out).map_err(|e| e.to_string())
        }
        Format::Csv => write_csv(v, out),
        Format::Text => write_text(v, out).map_err(|e| e.to_string()),
        Format::Graph6 => {
            Err("graph6 output is only available for commands that produce graphs".into())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(1.0 + 3f64.sqrt()), 2.732050808);
        assert_eq!(round_sig(1.0 / 1836.0), 5.446623094e-4);
        assert_eq!(round_sig(0.0), 0.0);
        let v = to_value(&json!({"a": 1.0 / 3.0, "b": [1, 2.0000000000001]}));
        assert_eq!(v, json!({"a": 0.3333333333, "b": [1, 2.0]}));
    }

    #[test]
    fn csv_rows() {
        let v = json!([{"n": 6, "x": 1.5, "s": null}, {"n": 7, "x": 2.5, "s": "a"}]);
        let mut buf = Vec::new();
        emit(&v, Format::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "n,x,s\n6,1.5,\n7,2.5,a\n");
        let nested = json!({"inner": {"a": 1}});
        assert!(emit(&nested, Format::Csv, &mut Vec::new()).is_err());
    }

    #[test]
    fn text_table() {
        let v = json!([{"n": 6, "x": 1.5}]);
        let mut buf = Vec::new();
        emit(&v, Format::Text, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "n\tx\n6\t1.5\n");
    }
}
