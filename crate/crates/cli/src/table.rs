use std::fmt::Write as _;

use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Num(f64),
    Flag(bool),
    Empty,
}

impl Cell {
    /// Shortest representation that parses back to the same `f64`.
    fn csv(&self, out: &mut String) {
        match self {
            Cell::Num(v) => write!(out, "{v:?}").unwrap(),
            Cell::Flag(b) => out.push(if *b { '1' } else { '0' }),
            Cell::Empty => {}
        }
    }

    fn json(&self) -> Value {
        match *self {
            Cell::Num(v) => serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number),
            Cell::Flag(b) => Value::Bool(b),
            Cell::Empty => Value::Null,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                cell.csv(&mut out);
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "columns": self.columns,
            "rows": self
                .rows
                .iter()
                .map(|r| r.iter().map(Cell::json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}
