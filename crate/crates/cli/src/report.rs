use serde::Serialize;
use serde_json::Value;

use crate::config::OutputFormat;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
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

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<u32> for Cell {
    fn from(n: u32) -> Self {
        Cell::Int(n.into())
    }
}

/// Shortest round-trip text, switching to exponent form outside
/// `[1e-4, 1e15)`.
pub fn format_exact(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 {
        "0".into()
    } else if (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn format_digits(x: f64, digits: usize) -> String {
    let a = x.abs();
    if a == 0.0 {
        return "0".into();
    }
    if (1e-4..1e15).contains(&a) {
        let magnitude = a.log10().floor() as i64;
        let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.prec$e}", prec = digits - 1)
    }
}

impl Cell {
    fn exact(&self) -> String {
        match self {
            Cell::Num(x) => format_exact(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn rounded(&self, digits: usize) -> String {
        match self {
            Cell::Num(x) => format_digits(*x, digits),
            other => other.exact(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Two-column `field,value` table.
    pub fn fields(rows: Vec<(&str, Cell)>) -> Self {
        let mut t = Table::new(&["field", "value"]);
        for (k, v) in rows {
            t.push(vec![Cell::from(k), v]);
        }
        t
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Array(
                    r.iter()
                        .map(|c| match c {
                            Cell::Num(x) => serde_json::json!(x),
                            Cell::Int(n) => serde_json::json!(n),
                            Cell::Text(s) => Value::String(s.clone()),
                            Cell::Bool(b) => Value::Bool(*b),
                            Cell::Empty => Value::Null,
                        })
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({ "columns": self.columns, "rows": rows })
    }
}

/// A command's output, rendered as the JSON envelope or as its table.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub settings: Value,
    pub result: Value,
    pub table: Table,
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    inputs: &'a Value,
    settings: &'a Value,
    result: &'a Value,
}

impl Report {
    pub fn render(&self, format: OutputFormat, digits: usize) -> CliResult<String> {
        match format {
            OutputFormat::Json => {
                let env = Envelope {
                    command: &self.command,
                    inputs: &self.inputs,
                    settings: &self.settings,
                    result: &self.result,
                };
                let mut text = serde_json::to_string_pretty(&env).map_err(|e| CliError::Output(e.to_string()))?;
                text.push('\n');
                Ok(text)
            }
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.table.columns)
                    .map_err(|e| CliError::Output(e.to_string()))?;
                for row in &self.table.rows {
                    w.write_record(row.iter().map(Cell::exact))
                        .map_err(|e| CliError::Output(e.to_string()))?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
            }
            OutputFormat::Table => Ok(self.render_table(digits)),
        }
    }

    fn render_table(&self, digits: usize) -> String {
        let cells: Vec<Vec<String>> = self
            .table
            .rows
            .iter()
            .map(|r| r.iter().map(|c| c.rounded(digits)).collect())
            .collect();
        let mut widths: Vec<usize> = self.table.columns.iter().map(|c| c.len()).collect();
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let line = |items: &[String]| {
            let padded: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = format!("# {}\n", self.command);
        out += &line(&self.table.columns);
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        out += &line(&rule);
        for row in &cells {
            out += &line(row);
        }
        out
    }
}
