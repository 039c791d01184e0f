//! Tables emitted by every subcommand. JSON cells keep the structured value;
//! CSV cells use its display form.

use std::fmt::Display;
use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::Format;
use crate::CliError;

#[derive(Clone, Debug)]
pub struct Cell {
    json: Value,
    text: String,
}

impl Cell {
    pub fn value<T: Serialize + Display>(v: &T) -> Self {
        Cell {
            json: serde_json::to_value(v).expect("serializable"),
            text: v.to_string(),
        }
    }

    /// Display-only value; JSON gets the same string.
    pub fn text(s: impl Into<String>) -> Self {
        let text = s.into();
        Cell {
            json: Value::String(text.clone()),
            text,
        }
    }

    pub fn pair(json: Value, text: impl Into<String>) -> Self {
        Cell { json, text: text.into() }
    }

    pub fn json(json: Value) -> Self {
        let text = match &json {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            other => other.to_string(),
        };
        Cell { json, text }
    }

    pub fn empty() -> Self {
        Cell::json(Value::Null)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::json(Value::Bool(b))
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::json(x.into())
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::json(x.into())
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::json(x.into())
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn extend(&mut self, other: Table) {
        assert_eq!(self.columns, other.columns);
        self.rows.extend(other.rows);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn emit(&self, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
        match format {
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let mut m = Map::new();
                        for (c, cell) in self.columns.iter().zip(r) {
                            m.insert((*c).to_string(), cell.json.clone());
                        }
                        Value::Object(m)
                    })
                    .collect();
                serde_json::to_writer_pretty(&mut *out, &rows).map_err(|e| CliError::Io(e.to_string()))?;
                writeln!(out).map_err(|e| CliError::Io(e.to_string()))
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                let io = |e: csv::Error| CliError::Io(e.to_string());
                w.write_record(&self.columns).map_err(io)?;
                for r in &self.rows {
                    w.write_record(r.iter().map(|c| c.text.as_str())).map_err(io)?;
                }
                w.flush().map_err(|e| CliError::Io(e.to_string()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec![1i64.into(), Cell::text("x, y")]);
        t.push(vec![true.into(), Cell::empty()]);
        t
    }

    #[test]
    fn csv_quotes_and_blanks() {
        let mut buf = Vec::new();
        sample().emit(Format::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b\n1,\"x, y\"\ntrue,\n");
    }

    #[test]
    fn json_rows() {
        let mut buf = Vec::new();
        sample().emit(Format::Json, &mut buf).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v, serde_json::json!([{"a": 1, "b": "x, y"}, {"a": true, "b": null}]));
    }
}
