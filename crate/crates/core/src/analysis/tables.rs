use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{compat_report_for, CompatFlags, CompatReport, FLAG_NAMES};
use crate::error::Result;
use crate::generators::GeneratorSpec;

/// One row of the reference grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub id: usize,
    pub spec: GeneratorSpec,
    pub expected: CompatFlags,
}

const GENERIC: CompatFlags = CompatFlags([false, false, false, false, true]);
const Q_VANISHES: CompatFlags = CompatFlags([false, false, false, true, true]);

/// The eleven reference rows: two premultiplied brackets on `R^3`, four
/// determinant brackets in dimensions 4 and 5, five Vanhaecke brackets.
pub fn builtin_rows() -> Vec<TableRow> {
    let det = |dim, args: &[&str], f| GeneratorSpec::det(dim, args, f);
    let van = |d, phi| GeneratorSpec::vanhaecke(d, phi).expect("builtin phi");
    let specs = [
        (
            det(
                3,
                &["x1^5*x2^3*x3^4 + x1^2*x3^5 + x1*x2^5*x3"],
                Some("x1^3 + x2^2"),
            ),
            GENERIC,
        ),
        (
            det(3, &["x1*x2 + x1*x3 + x2*x3"], Some("x1^2 + x2")),
            GENERIC,
        ),
        (det(4, &["x2^3*x3^2*x4", "x1*x3^4*x4"], None), GENERIC),
        (
            det(4, &["x1^2*x2^3*x3^4*x4^5", "x1*x2*x3*x4"], None),
            Q_VANISHES,
        ),
        (
            det(4, &["x2^2*x3^2*x4^2", "x1^2*x3^2*x4^2"], None),
            Q_VANISHES,
        ),
        (
            det(5, &["x2^3*x3^2*x4", "x1*x3^4*x4", "x3^3*x4^2*x5^4"], None),
            GENERIC,
        ),
        (van(2, "x^2*y^2"), GENERIC),
        (van(2, "x^2*y"), GENERIC),
        (van(2, "x^3*y^2"), GENERIC),
        (van(2, "x^3*y^3"), GENERIC),
        (van(3, "x^2*y^2"), GENERIC),
    ];
    specs
        .into_iter()
        .enumerate()
        .map(|(i, (spec, expected))| TableRow {
            id: i + 1,
            spec,
            expected,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TablesReport {
    pub rows: Vec<(TableRow, CompatReport)>,
}

impl TablesReport {
    pub fn matching(&self) -> usize {
        self.rows
            .iter()
            .filter(|(row, rep)| row.expected == rep.flags)
            .count()
    }

    pub fn all_match(&self) -> bool {
        self.matching() == self.rows.len()
    }

    pub fn render_text(&self) -> String {
        let specs: Vec<String> = self.rows.iter().map(|(r, _)| r.spec.to_string()).collect();
        let width = specs
            .iter()
            .map(|s| s.chars().count())
            .max()
            .unwrap_or(4)
            .max(4);
        let mut out = String::new();
        write!(out, "{:>3}  {:<width$}", "row", "spec").unwrap();
        for name in FLAG_NAMES {
            write!(out, "  {name:^9}").unwrap();
        }
        out.push_str("  match\n");
        for ((row, rep), spec) in self.rows.iter().zip(&specs) {
            write!(out, "{:>3}  {:<width$}", row.id, spec).unwrap();
            for m in rep.flags.marks() {
                write!(out, "  {m:^9}").unwrap();
            }
            let ok = if row.expected == rep.flags {
                "yes"
            } else {
                "NO"
            };
            writeln!(out, "  {ok}").unwrap();
        }
        writeln!(out, "{}/{} rows match", self.matching(), self.rows.len()).unwrap();
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|(row, rep)| {
                let mut v = rep.to_json();
                let obj = v.as_object_mut().expect("object");
                let mut ordered = serde_json::Map::new();
                ordered.insert("id".into(), json!(row.id));
                for key in ["spec", "flags", "witnesses"] {
                    ordered.insert(key.into(), obj.remove(key).unwrap_or(Value::Null));
                }
                ordered.insert("expected".into(), row.expected.to_json());
                ordered.insert("matches".into(), json!(row.expected == rep.flags));
                Value::Object(ordered)
            })
            .collect();
        json!({ "rows": rows, "matching": self.matching() })
    }
}

/// Recomputes every reference row; rows run in parallel, output keeps row order.
pub fn reproduce_tables() -> Result<TablesReport> {
    let rows = builtin_rows()
        .into_par_iter()
        .map(|row| {
            let rep = compat_report_for(&row.spec)?;
            Ok((row, rep))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TablesReport { rows })
}
