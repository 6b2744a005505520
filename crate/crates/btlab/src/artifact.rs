//! The output document and its renderings. JSON is canonical; tables and DOT are views of it.

use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

use crate::args::Format;
use crate::CliError;

pub const SCHEMA_VERSION: &str = "btlab/1";

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ArtifactDocument {
    pub schema_version: &'static str,
    pub command: String,
    pub request: Value,
    pub result: Value,
    pub provenance: Vec<String>,
}

/// A graph to draw: node labels are lattice labels.
#[derive(Debug, Clone, PartialEq)]
pub struct DotGraph {
    pub name: String,
    pub nodes: Vec<(String, usize)>,
    pub edges: Vec<(usize, usize)>,
}

pub fn export_dot(g: &DotGraph) -> String {
    let mut s = format!("graph {} {{\n", g.name);
    for (label, depth) in &g.nodes {
        writeln!(s, "  \"{label}\" [depth={depth}];").unwrap();
    }
    for (i, j) in &g.edges {
        writeln!(s, "  \"{}\" -- \"{}\";", g.nodes[*i].0, g.nodes[*j].0).unwrap();
    }
    s.push_str("}\n");
    s
}

pub struct Rendered {
    pub doc: ArtifactDocument,
    pub dot: Option<DotGraph>,
}

impl Rendered {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.doc).expect("documents serialize");
                s.push('\n');
                Ok(s)
            }
            Format::Table => {
                let mut s = String::new();
                writeln!(s, "# {} ({})", self.doc.command, self.doc.schema_version).unwrap();
                table(&mut s, "", &self.doc.result);
                for note in &self.doc.provenance {
                    writeln!(s, "# {note}").unwrap();
                }
                Ok(s)
            }
            Format::Dot => self
                .dot
                .as_ref()
                .map(export_dot)
                .ok_or_else(|| CliError::input(format!("{} has no DOT rendering", self.doc.command))),
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(scalar).collect::<Vec<_>>().join(", "),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn table(out: &mut String, prefix: &str, v: &Value) {
    let Value::Object(map) = v else {
        writeln!(out, "{}{}", prefix, scalar(v)).unwrap();
        return;
    };
    for (k, x) in map {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        match x {
            Value::Array(rows) if !rows.is_empty() && rows.iter().all(Value::is_object) => {
                writeln!(out, "[{key}]").unwrap();
                let mut cols: Vec<String> = Vec::new();
                for r in rows {
                    for k in r.as_object().unwrap().keys() {
                        if !cols.contains(k) {
                            cols.push(k.clone());
                        }
                    }
                }
                let cells: Vec<Vec<String>> = rows
                    .iter()
                    .map(|r| cols.iter().map(|c| r.get(c).map(scalar).unwrap_or_default()).collect())
                    .collect();
                let width: Vec<usize> =
                    (0..cols.len()).map(|i| cells.iter().map(|r| r[i].len()).chain([cols[i].len()]).max().unwrap()).collect();
                let line = |r: &[String]| r.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ");
                writeln!(out, "{}", line(&cols).trim_end()).unwrap();
                for r in &cells {
                    writeln!(out, "{}", line(r).trim_end()).unwrap();
                }
            }
            Value::Object(_) => table(out, &key, x),
            _ => writeln!(out, "{key}: {}", scalar(x)).unwrap(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_is_stable() {
        let g = DotGraph { name: "ball".into(), nodes: vec![("1,0;0,1".into(), 0), ("3,0;0,1".into(), 1)], edges: vec![(0, 1)] };
        assert_eq!(export_dot(&g), export_dot(&g.clone()));
        assert!(export_dot(&g).contains("\"1,0;0,1\" -- \"3,0;0,1\";"));
    }

    #[test]
    fn tables_of_rows() {
        let mut s = String::new();
        table(&mut s, "", &serde_json::json!({"rows": [{"r": 0, "x": "O"}, {"r": 1, "x": "O(1/2)"}], "d": 2}));
        assert!(s.contains("[rows]"));
        assert!(s.contains("d: 2"));
    }
}
