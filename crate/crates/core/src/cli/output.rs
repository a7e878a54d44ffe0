//! Tabular reports and their CSV/JSON rendering.

use serde_json::{Map, Number, Value};

use super::CliError;

/// Render a float with 17 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn to_csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format_float(*x),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Float(x) => float_value(*x),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
        }
    }
}

/// JSON number carrying the same digits as the CSV rendering; `null` if not finite.
pub fn float_value(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    format_float(x)
        .parse::<Number>()
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: impl IntoIterator<Item = impl Into<String>>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn to_json(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .cloned()
                    .zip(row.iter().map(Cell::to_json))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        Value::Array(rows)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub meta: Map<String, Value>,
    pub levels: Table,
    pub samples: Option<Table>,
    /// Per-level values repeated as constant columns when samples go to CSV.
    pub level_columns: Vec<(String, f64)>,
}

impl Report {
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.samples {
            Some(samples) => {
                let header = samples
                    .columns
                    .iter()
                    .cloned()
                    .chain(self.level_columns.iter().map(|(name, _)| name.clone()));
                w.write_record(header)?;
                let constants: Vec<String> = self
                    .level_columns
                    .iter()
                    .map(|(_, v)| format_float(*v))
                    .collect();
                for row in &samples.rows {
                    let cells = row
                        .iter()
                        .map(Cell::to_csv)
                        .chain(constants.iter().cloned());
                    w.write_record(cells)?;
                }
            }
            None => {
                w.write_record(&self.levels.columns)?;
                for row in &self.levels.rows {
                    w.write_record(row.iter().map(Cell::to_csv))?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
    }

    pub fn to_json(&self) -> String {
        let mut data = Map::new();
        data.insert("levels".into(), self.levels.to_json());
        data.insert(
            "samples".into(),
            self.samples
                .as_ref()
                .map_or(Value::Array(Vec::new()), Table::to_json),
        );
        let mut doc = Map::new();
        doc.insert("meta".into(), Value::Object(self.meta.clone()));
        doc.insert("data".into(), Value::Object(data));
        let mut out =
            serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialize");
        out.push('\n');
        out
    }
}
