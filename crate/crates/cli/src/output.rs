//! Rendering of tabular results as CSV, JSON or an aligned text table.

use std::fmt::Write as _;

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Table,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Shortest representation that parses back to the same `f64`.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        serde_json::Number::from_f64(x).expect("finite").to_string()
    }
}

/// Ten significant digits, fixed-point for moderate magnitudes.
pub fn fmt_sig10(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return fmt_real(x);
    }
    let mag = x.abs().log10().floor() as i32;
    if (-3..7).contains(&mag) {
        let decimals = (9 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.9e}")
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => fmt_real(*v),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Real(v) => fmt_sig10(*v),
            Cell::Empty => "-".to_string(),
            other => other.csv(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Real(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Empty => Value::Null,
        }
    }
}

/// Column-oriented result plus optional `# key: value` metadata and a
/// trailing summary record.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Rendered after the rows: as a final CSV row with only the last column
    /// filled, as a top-level JSON field, and as a labelled line in text.
    pub trailer: Option<(String, Cell)>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table { columns: columns.into_iter().map(Into::into).collect(), ..Default::default() }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format, with_meta: bool) -> String {
        match format {
            Format::Csv => self.render_csv(with_meta),
            Format::Json => self.render_json(with_meta),
            Format::Table => self.render_text(with_meta),
        }
    }

    fn meta_lines(&self, out: &mut String, with_meta: bool) {
        if with_meta {
            for (k, v) in &self.meta {
                let _ = writeln!(out, "# {k}: {v}");
            }
        }
    }

    fn render_csv(&self, with_meta: bool) -> String {
        let mut out = String::new();
        self.meta_lines(&mut out, with_meta);
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        if let Some((_, v)) = &self.trailer {
            let mut cells = vec![String::new(); self.columns.len().saturating_sub(1)];
            cells.push(v.csv());
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self, with_meta: bool) -> String {
        let mut top = Map::new();
        let mut meta = Map::new();
        if with_meta {
            for (k, v) in &self.meta {
                meta.insert(k.clone(), Value::from(v.as_str()));
            }
        }
        top.insert("meta".into(), Value::Object(meta));
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                Value::Object(obj)
            })
            .collect();
        top.insert("rows".into(), Value::Array(rows));
        if let Some((k, v)) = &self.trailer {
            top.insert(k.clone(), v.json());
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("serializable");
        s.push('\n');
        s
    }

    fn render_text(&self, with_meta: bool) -> String {
        let mut out = String::new();
        self.meta_lines(&mut out, with_meta);
        if self.rows.len() == 1 {
            // single record: one name/value pair per line
            let width = self.columns.iter().map(String::len).max().unwrap_or(0);
            for (c, v) in self.columns.iter().zip(&self.rows[0]) {
                let _ = writeln!(out, "{c:<width$}  {}", v.text());
            }
        } else {
            let cells: Vec<Vec<String>> =
                self.rows.iter().map(|r| r.iter().map(Cell::text).collect()).collect();
            let widths: Vec<usize> = (0..self.columns.len())
                .map(|j| {
                    cells.iter().map(|r| r[j].len()).chain([self.columns[j].len()]).max().unwrap_or(0)
                })
                .collect();
            let line = |items: &[String]| {
                items
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            let _ = writeln!(out, "{}", line(&self.columns));
            for r in &cells {
                let _ = writeln!(out, "{}", line(r));
            }
        }
        if let Some((k, v)) = &self.trailer {
            let _ = writeln!(out, "{k}: {}", v.text());
        }
        out
    }
}
