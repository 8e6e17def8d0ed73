//! Indented plain-text rendering of the JSON reports.

use serde_json::Value;

use crate::Output;

pub fn render(out: &Output) -> String {
    let mut buf = String::new();
    match out {
        Output::Json(v) => value(&mut buf, v, 0),
        Output::Lines(lines) => {
            for (i, v) in lines.iter().enumerate() {
                if i > 0 {
                    buf.push_str("---\n");
                }
                value(&mut buf, v, 0);
            }
        }
    }
    buf.trim_end().to_string()
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// Flat arrays of scalars print on one line; arrays of those print as a grid.
fn inline(v: &Value) -> Option<String> {
    if let Some(s) = scalar(v) {
        return Some(s);
    }
    let items = v.as_array()?;
    let parts: Option<Vec<String>> = items
        .iter()
        .map(|x| if x.is_array() || x.is_object() { None } else { scalar(x) })
        .collect();
    parts.map(|p| format!("[{}]", p.join(" ")))
}

fn is_grid(v: &Value) -> bool {
    v.as_array()
        .is_some_and(|rows| !rows.is_empty() && rows.iter().all(|r| r.is_array() && inline(r).is_some()))
}

fn value(buf: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if let Some(s) = inline(x) {
                    buf.push_str(&format!("{pad}{k}: {s}\n"));
                } else if is_grid(x) {
                    buf.push_str(&format!("{pad}{k}:\n"));
                    for row in x.as_array().unwrap() {
                        buf.push_str(&format!("{pad}  {}\n", inline(row).unwrap()));
                    }
                } else if x.as_object().is_some_and(|m| m.is_empty())
                    || x.as_array().is_some_and(|a| a.is_empty())
                {
                    buf.push_str(&format!("{pad}{k}: (none)\n"));
                } else {
                    buf.push_str(&format!("{pad}{k}:\n"));
                    value(buf, x, indent + 1);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match inline(x) {
                    Some(s) => buf.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        buf.push_str(&format!("{pad}-\n"));
                        value(buf, x, indent + 1);
                    }
                }
            }
        }
        other => buf.push_str(&format!("{pad}{}\n", scalar(other).unwrap())),
    }
}
