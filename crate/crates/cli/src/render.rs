//! Output formats. JSON wraps the value as `{"result": ...}`; markdown and
//! plain text lay out the same value, with Hecke tables in their native
//! layout.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use slopekit::{Error, Result};

use crate::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Md,
    Latex,
    Plain,
}

pub fn render(report: &Report, format: Format) -> Result<String> {
    match (format, &report.table) {
        (Format::Json, _) => {
            let doc = serde_json::json!({ "result": report.value });
            Ok(format!("{}\n", serde_json::to_string_pretty(&doc).expect("json value")))
        }
        (Format::Md, Some(t)) => Ok(t.to_markdown()),
        (Format::Latex, Some(t)) => Ok(t.to_latex()),
        (Format::Plain, Some(t)) => Ok(t.to_plain()),
        (Format::Md, None) => Ok(markdown(&report.value)),
        (Format::Plain, None) => Ok(plain(&report.value)),
        (Format::Latex, None) => {
            Err(Error::config("cli", "render", "latex output is only available for slope tables"))
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "null".to_string(),
        other => other.to_string(),
    }
}

fn cell(v: &Value) -> String {
    scalar(v).replace('|', "\\|")
}

/// Columns shared by an array of objects, in first-seen order.
fn record_columns(items: &[Value]) -> Option<Vec<String>> {
    let mut cols: Vec<String> = Vec::new();
    for item in items {
        for k in item.as_object()?.keys() {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    Some(cols)
}

fn md_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut out = format!("| {} |\n|{}\n", header.join(" | "), "---|".repeat(header.len()));
    for r in rows {
        out.push_str(&format!("| {} |\n", r.join(" | ")));
    }
    out
}

fn is_nested(v: &Value) -> bool {
    match v {
        Value::Object(_) => true,
        Value::Array(items) => items.iter().any(|x| x.is_object() || x.is_array()),
        _ => false,
    }
}

/// Flat fields go in one table; nested fields get their own headed section.
fn md_section(title: &str, level: usize, v: &Value, out: &mut String) {
    if !title.is_empty() {
        out.push_str(&format!("\n{} {title}\n\n", "#".repeat(level)));
    }
    match v {
        Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_array) => {
            for (i, x) in items.iter().enumerate() {
                md_section(&format!("{title}[{i}]"), level + 1, x, out);
            }
        }
        Value::Array(items) if !items.is_empty() => match record_columns(items) {
            Some(cols) => {
                let rows: Vec<Vec<String>> = items
                    .iter()
                    .map(|it| cols.iter().map(|c| it.get(c).map_or(String::new(), cell)).collect())
                    .collect();
                out.push_str(&md_table(&cols, &rows));
            }
            None => {
                let rows: Vec<Vec<String>> =
                    items.iter().enumerate().map(|(i, x)| vec![i.to_string(), cell(x)]).collect();
                out.push_str(&md_table(&["index".to_string(), "value".to_string()], &rows));
            }
        },
        Value::Object(map) if !map.is_empty() => {
            let rows: Vec<Vec<String>> = map
                .iter()
                .filter(|(_, x)| !is_nested(x))
                .map(|(k, x)| vec![k.clone(), cell(x)])
                .collect();
            if !rows.is_empty() {
                out.push_str(&md_table(&["field".to_string(), "value".to_string()], &rows));
            }
            for (k, x) in map.iter().filter(|(_, x)| is_nested(x)) {
                let t = if title.is_empty() { k.clone() } else { format!("{title}.{k}") };
                md_section(&t, level + 1, x, out);
            }
        }
        other => out.push_str(&format!("{}\n", scalar(other))),
    }
}

fn markdown(v: &Value) -> String {
    let mut out = String::new();
    md_section("", 1, v, &mut out);
    out.trim_start_matches('\n').to_string()
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, x) in map {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        other => {
            let key = if prefix.is_empty() { "result" } else { prefix };
            out.push(format!("{key} = {}", scalar(other)));
        }
    }
}

fn plain(v: &Value) -> String {
    let mut lines = Vec::new();
    flatten("", v, &mut lines);
    lines.iter().map(|l| format!("{l}\n")).collect()
}
