use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::orbits::CALIBRATED_SLOPE;
use crate::shells::ShellDecomposition;
use crate::spectrum::MagicTable;

use super::config::RunConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(u64),
    Real(f64),
    Text(&'static str),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            // shortest representation that parses back to the same f64
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => v.to_string(),
            Cell::Text(s) => s.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Real(v) => json!(v),
            Cell::Text(s) => json!(s),
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(u64::from(v))
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

/// Header, rows, and an optional footer of named scalars.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub footer: Vec<(String, Cell)>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            ..Self::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Header line, one line per row, then `# key=value,...` if there is a footer.
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        if !self.footer.is_empty() {
            let items: Vec<String> = self.footer.iter().map(|(k, v)| format!("{k}={}", v.csv())).collect();
            let _ = writeln!(out, "# {}", items.join(","));
        }
        out
    }

    /// `{"metadata": {...config}, "records": [...], "footer": {...}}`.
    pub fn to_json(&self, cfg: &RunConfig) -> String {
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(k, c)| (k.to_string(), c.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("metadata".into(), json!({ "config": cfg }));
        doc.insert("records".into(), Value::Array(records));
        if !self.footer.is_empty() {
            let f: Map<String, Value> = self.footer.iter().map(|(k, v)| (k.clone(), v.json())).collect();
            doc.insert("footer".into(), Value::Object(f));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("plain values serialise");
        s.push('\n');
        s
    }
}

/// Data behind a plot: one of the two table kinds.
#[derive(Debug, Clone, Copy)]
pub enum PlotSource<'a> {
    Magic(&'a MagicTable),
    Shells(&'a ShellDecomposition),
}

fn six(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

/// Plot-ready CSV with six decimals: `i,cbrt_N,reference` for a magic table,
/// `N,cbrt_N,E_shell` for a shell decomposition.
pub fn emit_plot_data(source: PlotSource<'_>) -> Result<String> {
    let mut table = match source {
        PlotSource::Magic(m) => {
            let mut t = Table::new(&["i", "cbrt_N", "reference"]);
            for &(i, n) in &m.entries {
                t.push(vec![
                    i.into(),
                    six((n as f64).cbrt()).into(),
                    six(CALIBRATED_SLOPE * i as f64).into(),
                ]);
            }
            t
        }
        PlotSource::Shells(d) => {
            let mut t = Table::new(&["N", "cbrt_N", "E_shell"]);
            for s in &d.samples {
                t.push(vec![s.n.into(), six((s.n as f64).cbrt()).into(), six(s.e_shell).into()]);
            }
            t
        }
    };
    if table.rows.is_empty() {
        return Err(Error::EmptyInput);
    }
    table.footer.clear();
    Ok(table.to_csv())
}
