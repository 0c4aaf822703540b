//! Output records and their three renderings: aligned tables, `key=value`
//! lines, and JSON lines.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Kv,
    Records,
}

/// An ordered set of named fields.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(Map<String, Value>);

impl Record {
    pub fn new() -> Self {
        Record(Map::new())
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.0.insert(key.to_owned(), value.into());
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.0.insert(key.to_owned(), value.into());
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.get(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &String> {
        self.0.keys()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("plain values serialize")
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::from("-"),
        other => other.to_string(),
    }
}

/// One record as two aligned columns.
pub fn vertical_table(r: &Record) -> String {
    let width = r.keys().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in &r.0 {
        let _ = writeln!(out, "{k:<width$}  {}", plain(v));
    }
    out
}

/// Several records as rows under a header made of the first record's keys.
pub fn horizontal_table(rows: &[Record]) -> String {
    let Some(first) = rows.first() else {
        return String::new();
    };
    let keys: Vec<&String> = first.keys().collect();
    let cells: Vec<Vec<String>> =
        rows.iter().map(|r| keys.iter().map(|k| r.get(k).map_or_else(String::new, plain)).collect()).collect();
    let widths: Vec<usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| cells.iter().map(|row| row[i].len()).max().unwrap_or(0).max(k.len()))
        .collect();
    let mut out = String::new();
    let line = |out: &mut String, items: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = items.zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&mut out, &mut keys.iter().map(|k| k.as_str()));
    for row in &cells {
        line(&mut out, &mut row.iter().map(String::as_str));
    }
    out
}

pub fn kv(r: &Record) -> String {
    let mut out = String::new();
    for (k, v) in &r.0 {
        let _ = writeln!(out, "{k}={}", plain(v));
    }
    out
}

/// Renders a single record.
pub fn render_one(r: &Record, format: Format) -> String {
    match format {
        Format::Table => vertical_table(r),
        Format::Kv => kv(r),
        Format::Records => format!("{}\n", r.to_json()),
    }
}

/// Renders a list; `kv` separates records with blank lines.
pub fn render_many(rows: &[Record], format: Format) -> String {
    match format {
        Format::Table => horizontal_table(rows),
        Format::Kv => rows.iter().map(kv).collect::<Vec<_>>().join("\n"),
        Format::Records => rows.iter().map(|r| format!("{}\n", r.to_json())).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renderings() {
        let r = Record::new().with("genus", 0).with("config", "[2],[2]").with("verdict.hurwitz", "pass");
        assert_eq!(kv(&r), "genus=0\nconfig=[2],[2]\nverdict.hurwitz=pass\n");
        assert_eq!(r.to_json(), r#"{"genus":0,"config":"[2],[2]","verdict.hurwitz":"pass"}"#);
        assert_eq!(vertical_table(&r), "genus            0\nconfig           [2],[2]\nverdict.hurwitz  pass\n");
        let rows = [Record::new().with("a", 1).with("bb", "x"), Record::new().with("a", 22).with("bb", "yyy")];
        assert_eq!(horizontal_table(&rows), "a   bb\n1   x\n22  yyy\n");
        assert_eq!(render_many(&rows, Format::Kv), "a=1\nbb=x\n\na=22\nbb=yyy\n");
    }
}
