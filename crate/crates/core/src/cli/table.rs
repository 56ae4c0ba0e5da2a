//! Result tables and their CSV/JSON serialization.

use serde_json::{Map, Number, Value};

use crate::error::{Error, Result};

use super::config::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map_or(Cell::Empty, Into::into)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Written as `# key: value` lines above CSV output.
    pub metadata: Vec<(String, String)>,
}

impl ResultTable {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), ..Self::default() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.metadata.push((key.into(), value.into()));
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn render(&self, format: Format, precision: usize) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(precision),
            Format::Json => self.to_json(precision),
        }
    }

    pub fn to_csv(&self, precision: usize) -> Result<String> {
        let mut out = String::new();
        for (key, value) in &self.metadata {
            for (i, line) in value.lines().enumerate() {
                if i == 0 {
                    out.push_str(&format!("# {key}: {line}\n"));
                } else {
                    out.push_str(&format!("#   {line}\n"));
                }
            }
        }
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            writer.write_record(row.iter().map(|c| cell_text(c, precision))).map_err(io)?;
        }
        let bytes = writer.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        out.push_str(&String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))?);
        Ok(out)
    }

    pub fn to_json(&self, precision: usize) -> Result<String> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    obj.insert(name.clone(), cell_json(cell, precision));
                }
                Value::Object(obj)
            })
            .collect();
        let mut text = serde_json::to_string_pretty(&Value::Array(rows)).map_err(|e| Error::Io(e.to_string()))?;
        text.push('\n');
        Ok(text)
    }
}

fn io(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// Rounds to `digits` significant digits.
pub fn round_significant(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x).parse().unwrap_or(x)
}

/// Shortest text that reads back as the rounded value.
pub fn format_number(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round_significant(x, digits);
    // normalize −0
    if r == 0.0 {
        "0".into()
    } else {
        format!("{r}")
    }
}

fn cell_text(cell: &Cell, precision: usize) -> String {
    match cell {
        Cell::Num(x) => format_number(*x, precision),
        Cell::Int(i) => i.to_string(),
        Cell::Text(s) => s.clone(),
        Cell::Empty => String::new(),
    }
}

fn cell_json(cell: &Cell, precision: usize) -> Value {
    match cell {
        Cell::Num(x) if x.is_finite() => {
            Number::from_f64(round_significant(*x, precision) + 0.0).map_or(Value::Null, Value::Number)
        }
        Cell::Num(x) if x.is_nan() => Value::Null,
        Cell::Num(x) => Value::String(format_number(*x, precision)),
        Cell::Int(i) => Value::Number((*i).into()),
        Cell::Text(s) => Value::String(s.clone()),
        Cell::Empty => Value::Null,
    }
}
