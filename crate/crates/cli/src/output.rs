//! The output envelope and its JSON and CSV renderings. Both renderings are
//! produced from the same [`Data`] so they carry the same numbers.

use serde_json::{Map, Value};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Integer of any size, kept as its decimal digits.
    Int(String),
    Float(f64),
    Bool(bool),
    Text(String),
    Null,
}

impl Cell {
    pub fn int(v: impl ToString) -> Self {
        Cell::Int(v.to_string())
    }

    pub fn text(v: impl Into<String>) -> Self {
        Cell::Text(v.into())
    }

    pub fn float(v: Option<f64>) -> Self {
        match v {
            Some(x) if x.is_finite() => Cell::Float(x),
            _ => Cell::Null,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(s) | Cell::Text(s) => Value::String(s.clone()),
            Cell::Float(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Null => Value::Null,
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Cell::Int(s) | Cell::Text(s) => s.clone(),
            Cell::Float(x) => x.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Null => String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &'static str, columns: &[&'static str]) -> Self {
        Table {
            name,
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| ((*c).to_string(), v.to_json()))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Data {
    /// A bare sequence: a JSON array, one CSV line.
    Seq(Vec<Cell>),
    /// Named scalar fields followed by named tables.
    Record {
        fields: Vec<(&'static str, Cell)>,
        tables: Vec<Table>,
    },
}

impl Data {
    fn to_json(&self) -> Value {
        match self {
            Data::Seq(v) => Value::Array(v.iter().map(Cell::to_json).collect()),
            Data::Record { fields, tables } => {
                let mut obj = Map::new();
                for (k, v) in fields {
                    obj.insert((*k).to_string(), v.to_json());
                }
                for t in tables {
                    obj.insert(t.name.to_string(), t.to_json());
                }
                Value::Object(obj)
            }
        }
    }
}

/// A finished command: what ran, with which parameters, and what came out.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub params: Vec<(&'static str, Cell)>,
    pub data: Data,
    /// A check inside the command failed.
    pub failed: bool,
}

pub fn render_json(r: &Report) -> String {
    let mut params = Map::new();
    for (k, v) in &r.params {
        params.insert((*k).to_string(), v.to_json());
    }
    let mut env = Map::new();
    env.insert("command".into(), Value::String(r.command.into()));
    env.insert("params".into(), Value::Object(params));
    env.insert("format_version".into(), Value::String(FORMAT_VERSION.into()));
    env.insert("data".into(), r.data.to_json());
    let mut s = serde_json::to_string_pretty(&Value::Object(env)).expect("json values serialize");
    s.push('\n');
    s
}

fn write_block(out: &mut Vec<u8>, header: &[&str], rows: &[Vec<String>]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .flexible(true)
        .from_writer(Vec::new());
    if !header.is_empty() {
        w.write_record(header)?;
    }
    for row in rows {
        w.write_record(row)?;
    }
    out.extend(w.into_inner().map_err(|e| e.into_error())?);
    Ok(())
}

/// The payload only: a sequence is one line; a record is a header and value
/// line for its fields, then each table as header and rows, blocks separated
/// by an empty line.
pub fn render_csv(r: &Report) -> String {
    let mut out = Vec::new();
    let res = match &r.data {
        Data::Seq(v) => write_block(&mut out, &[], &[v.iter().map(Cell::to_csv).collect()]),
        Data::Record { fields, tables } => (|| {
            let mut first = true;
            if !fields.is_empty() {
                let header: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
                let row: Vec<String> = fields.iter().map(|(_, v)| v.to_csv()).collect();
                write_block(&mut out, &header, &[row])?;
                first = false;
            }
            for t in tables {
                if !first {
                    out.push(b'\n');
                }
                first = false;
                let rows: Vec<Vec<String>> = t
                    .rows
                    .iter()
                    .map(|row| row.iter().map(Cell::to_csv).collect())
                    .collect();
                write_block(&mut out, &t.columns, &rows)?;
            }
            Ok(())
        })(),
    };
    res.expect("writing csv to memory");
    String::from_utf8(out).expect("csv output is utf-8")
}
