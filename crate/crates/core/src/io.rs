//! Interchange formats: JSON block lists, 0/1 CSV matrices and Graphviz DOT.

use crate::error::{Error, Result};
use crate::incidence::IncidenceStructure;
use serde::{Deserialize, Serialize};
use std::fmt::Write;

#[derive(Debug, Serialize, Deserialize)]
struct Interchange {
    v: usize,
    b: usize,
    blocks: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    point_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    block_labels: Option<Vec<String>>,
}

/// Serializes to the JSON interchange format (single line, trailing newline).
pub fn to_json(s: &IncidenceStructure) -> String {
    let doc = Interchange {
        v: s.v(),
        b: s.b(),
        blocks: s.blocks(),
        point_labels: s.point_labels().map(<[String]>::to_vec),
        block_labels: s.block_labels().map(<[String]>::to_vec),
    };
    let mut out = serde_json::to_string(&doc).expect("interchange serializes");
    out.push('\n');
    out
}

pub fn from_json(text: &str) -> Result<IncidenceStructure> {
    let doc: Interchange = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.blocks.len() != doc.b {
        return Err(Error::Parse(format!("b={} but {} blocks listed", doc.b, doc.blocks.len())));
    }
    for blk in &doc.blocks {
        let mut sorted = blk.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != blk.len() {
            return Err(Error::Parse("repeated point inside a block".into()));
        }
    }
    let mut s = IncidenceStructure::from_blocks(doc.v, &doc.blocks)?;
    if let Some(l) = doc.point_labels {
        if l.len() != doc.v {
            return Err(Error::Parse("point_labels length differs from v".into()));
        }
        s = s.with_point_labels(l);
    }
    if let Some(l) = doc.block_labels {
        if l.len() != doc.b {
            return Err(Error::Parse("block_labels length differs from b".into()));
        }
        s = s.with_block_labels(l);
    }
    Ok(s)
}

/// `v` lines of `b` comma-separated 0/1 entries.
pub fn to_csv(s: &IncidenceStructure) -> String {
    let mut out = String::new();
    for x in 0..s.v() {
        let row: Vec<&str> = (0..s.b()).map(|j| if s.incident(x, j) { "1" } else { "0" }).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn from_csv(text: &str) -> Result<IncidenceStructure> {
    let mut rows: Vec<Vec<bool>> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|c| match c.trim() {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(Error::Parse(format!("line {}: bad entry {other:?}", ln + 1))),
            })
            .collect::<Result<Vec<bool>>>()?;
        rows.push(row);
    }
    let b = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != b) {
        return Err(Error::Parse("ragged CSV rows".into()));
    }
    IncidenceStructure::from_fn(rows.len(), b, |x, j| rows[x][j])
}

/// Levi graph in Graphviz syntax: points black, blocks white.
pub fn to_dot(s: &IncidenceStructure) -> String {
    let mut out = String::from("graph levi {\n  node [style=filled, shape=circle, label=\"\"];\n");
    for x in 0..s.v() {
        let _ = writeln!(out, "  p{x} [fillcolor=black];");
    }
    for j in 0..s.b() {
        let _ = writeln!(out, "  b{j} [fillcolor=white];");
    }
    for x in 0..s.v() {
        for j in s.point_blocks(x) {
            let _ = writeln!(out, "  p{x} -- b{j};");
        }
    }
    out.push_str("}\n");
    out
}
