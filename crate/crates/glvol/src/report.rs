//! Command records and their JSON / TSV / markdown renderings.
//!
//! A record is one JSON object; TSV and markdown are derived from it
//! mechanically, so all three are byte-stable for fixed inputs.

use std::fmt::Write as _;

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    /// A numerical estimate missed its tolerance.
    ToleranceFailure,
    /// An exact identity did not hold.
    IdentityViolation,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::ToleranceFailure | Status::IdentityViolation => "FAIL",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::IdentityViolation => 3,
            Status::ToleranceFailure => 4,
        }
    }

    /// Worst of two statuses; identity violations dominate.
    pub fn worst(self, other: Status) -> Status {
        let rank = |s: Status| match s {
            Status::Pass => 0,
            Status::ToleranceFailure => 1,
            Status::IdentityViolation => 2,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Tsv,
    Markdown,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    pub command: &'static str,
    pub status: Status,
    fields: Map<String, Value>,
}

impl Record {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            status: Status::Pass,
            fields: Map::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_owned(), value.into());
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.get(key)
    }

    pub fn fail(&mut self, status: Status) {
        self.status = self.status.worst(status);
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::from(self.command));
        m.extend(self.fields.clone());
        m.insert("status".into(), Value::from(self.status.label()));
        Value::Object(m)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
            OutputFormat::Tsv => render_tsv(&self.to_json()),
            OutputFormat::Markdown => render_markdown(self.command, &self.to_json()),
        }
    }
}

/// Objects rendered as a single cell rather than expanded into fields.
fn is_atomic_object(m: &Map<String, Value>) -> bool {
    m.contains_key("display") || (m.len() == 2 && m.contains_key("re") && m.contains_key("im"))
}

fn cell(v: &Value) -> String {
    let text = match v {
        Value::Null => "-".to_owned(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::Object(m) if m.contains_key("display") => cell(&m["display"]),
        Value::Object(m) if is_atomic_object(m) => {
            format!("{} + {}i", cell(&m["re"]), cell(&m["im"]))
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().map(cell).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    };
    text.replace(['\t', '\n'], " ").replace('|', "\\|")
}

enum Piece {
    Field(String, String),
    Table(String, Vec<String>, Vec<Vec<String>>),
}

fn flatten_into(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) if !is_atomic_object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten_into(&key, x, out);
            }
        }
        other => out.push((prefix.to_owned(), cell(other))),
    }
}

fn pieces(record: &Value) -> Vec<Piece> {
    let mut out = Vec::new();
    let Value::Object(m) = record else {
        return out;
    };
    for (k, v) in m {
        match v {
            Value::Array(rows) if !rows.is_empty() && rows.iter().all(Value::is_object) => {
                let flat: Vec<Vec<(String, String)>> = rows
                    .iter()
                    .map(|r| {
                        let mut cells = Vec::new();
                        flatten_into("", r, &mut cells);
                        cells
                    })
                    .collect();
                let mut header: Vec<String> = Vec::new();
                for row in &flat {
                    for (h, _) in row {
                        if !header.contains(h) {
                            header.push(h.clone());
                        }
                    }
                }
                let body = flat
                    .iter()
                    .map(|row| {
                        header
                            .iter()
                            .map(|h| {
                                row.iter()
                                    .find(|(k, _)| k == h)
                                    .map_or_else(|| "-".to_owned(), |(_, c)| c.clone())
                            })
                            .collect()
                    })
                    .collect();
                out.push(Piece::Table(k.clone(), header, body));
            }
            _ => {
                let mut cells = Vec::new();
                flatten_into(k, v, &mut cells);
                out.extend(cells.into_iter().map(|(k, c)| Piece::Field(k, c)));
            }
        }
    }
    out
}

fn render_tsv(record: &Value) -> String {
    let mut fields = String::new();
    let mut tables = String::new();
    for p in pieces(record) {
        match p {
            Piece::Field(k, v) => {
                let _ = writeln!(fields, "{k}\t{v}");
            }
            Piece::Table(name, header, rows) => {
                let _ = writeln!(tables, "\n# {name}");
                let _ = writeln!(tables, "{}", header.join("\t"));
                for r in rows {
                    let _ = writeln!(tables, "{}", r.join("\t"));
                }
            }
        }
    }
    fields + &tables
}

fn md_table(out: &mut String, header: &[String], rows: &[Vec<String>]) {
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
    for r in rows {
        let _ = writeln!(out, "| {} |", r.join(" | "));
    }
}

fn render_markdown(command: &str, record: &Value) -> String {
    let mut fields = Vec::new();
    let mut tables = Vec::new();
    for p in pieces(record) {
        match p {
            Piece::Field(k, v) => fields.push(vec![format!("`{k}`"), v]),
            Piece::Table(name, header, rows) => tables.push((name, header, rows)),
        }
    }
    let mut out = format!("## {command}\n\n");
    md_table(&mut out, &["field".into(), "value".into()], &fields);
    for (name, header, rows) in tables {
        let _ = writeln!(out, "\n### {name}\n");
        md_table(&mut out, &header, &rows);
    }
    out
}
