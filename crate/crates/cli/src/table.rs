use serde::Serialize;
use serde_json::Value;

use crate::Format;

pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    /// Two columns, one row per leaf field. Nested objects become dotted
    /// keys; arrays stay as compact JSON.
    pub fn from_fields(value: &Value) -> Self {
        fn walk(prefix: &str, v: &Value, t: &mut Table) {
            match v {
                Value::Object(map) => {
                    for (k, v) in map {
                        let key = if prefix.is_empty() {
                            k.clone()
                        } else {
                            format!("{prefix}.{k}")
                        };
                        walk(&key, v, t);
                    }
                }
                Value::String(s) => t.push(vec![prefix.to_string(), s.clone()]),
                other => t.push(vec![prefix.to_string(), other.to_string()]),
            }
        }
        let mut t = Table::new(&["field", "value"]);
        walk("", value, &mut t);
        t
    }

    pub fn render(&self) -> String {
        let width = |i: usize| {
            self.rows
                .iter()
                .map(|r| r.get(i).map_or(0, |c| c.chars().count()))
                .chain([self.columns[i].chars().count()])
                .max()
                .unwrap_or(0)
        };
        let widths: Vec<usize> = (0..self.columns.len()).map(width).collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = line(&self.columns);
        out.push('\n');
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        out.push_str(&line(&rule));
        for r in &self.rows {
            out.push('\n');
            out.push_str(&line(r));
        }
        out
    }
}

/// Prints `value` as JSON, or as `table` (field listing when `None`).
pub fn emit<T: Serialize>(format: Format, value: &T, table: Option<Table>) {
    let json = serde_json::to_value(value).expect("reports serialize");
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&json).expect("valid JSON")
            );
        }
        Format::Table => {
            let t = table.unwrap_or_else(|| Table::from_fields(&json));
            println!("{}", t.render());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aligned_columns() {
        let mut t = Table::new(&["a", "long"]);
        t.push(vec!["wide cell".into(), "x".into()]);
        let s = t.render();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "a          long");
        assert_eq!(lines[2], "wide cell  x");
    }

    #[test]
    fn fields_from_object() {
        let v = serde_json::json!({"n": 3, "name": "k3", "opt": {"x": [1, 2]}});
        let t = Table::from_fields(&v);
        let keys: Vec<&str> = t.rows.iter().map(|r| r[0].as_str()).collect();
        assert_eq!(keys, ["n", "name", "opt.x"]);
        assert_eq!(t.rows[2][1], "[1,2]");
    }
}
