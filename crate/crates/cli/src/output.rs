//! Table assembly and emission.
//!
//! CSV cells print floats with 17 significant digits so a reader can
//! round-trip them exactly; JSON uses native numbers (non-finite values
//! become null, noted in the README). Column order is fixed by the command,
//! so identical runs emit identical bytes.

use std::fmt::Write as _;

#[derive(Clone, Debug)]
pub enum Cell {
    Str(String),
    F(f64),
    U(u64),
    B(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Str(s) => s.clone(),
            Cell::F(v) => format_float(*v),
            Cell::U(v) => v.to_string(),
            Cell::B(v) => v.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Str(s) => serde_json::Value::String(s.clone()),
            Cell::F(v) => serde_json::Number::from_f64(*v)
                .map(serde_json::Value::Number)
                .unwrap_or(serde_json::Value::Null),
            Cell::U(v) => serde_json::Value::from(*v),
            Cell::B(v) => serde_json::Value::Bool(*v),
            Cell::Empty => serde_json::Value::Null,
        }
    }
}

/// 17 significant digits: exact f64 round-trip.
pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row arity mismatch");
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let mut first = true;
            for cell in row {
                if !first {
                    out.push(',');
                }
                let _ = write!(out, "{}", cell.csv());
                first = false;
            }
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let map: serde_json::Map<String, serde_json::Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(name, cell)| (name.to_string(), cell.json()))
                    .collect();
                serde_json::Value::Object(map)
            })
            .collect();
        let mut text = serde_json::to_string_pretty(&serde_json::Value::Array(rows))
            .expect("table serialization cannot fail");
        text.push('\n');
        text
    }
}
