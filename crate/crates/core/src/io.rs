//! Serialization: versioned JSON documents for graphs and colourings, DOT
//! export for visual inspection, and CSV for percolation sweeps.
//!
//! All output is deterministic byte for byte: no timestamps, no map
//! iteration order surprises, vertices and edges in id order. Vertex ids
//! and colour ids are 0-based in every document; only DOT display labels
//! show coordinates 1-based, matching how the grid families are usually
//! drawn.

use crate::coloring::{
    ColoringError, ConsistentColoring, FractionalColoring, VerificationReport,
};
use crate::graph::{Graph, GraphError};
use crate::percolation::SweepReport;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use thiserror::Error;

pub const GRAPH_FORMAT: &str = "strongprod.graph/v1";
pub const COLORING_FORMAT: &str = "strongprod.coloring/v1";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("failed to parse JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("field `format` is {got:?}, expected {expected:?}")]
    WrongFormat { got: String, expected: &'static str },
    #[error("field `labels` has {got} entries, field `vertex_count` says {expected}")]
    LabelCountMismatch { got: usize, expected: usize },
    #[error("field `order` is missing, the document is not a consistent colouring")]
    MissingOrder,
    #[error("field `order` at vertex {v} disagrees with field `assign`")]
    OrderMismatch { v: usize },
}

/// On-disk graph: vertex labels plus an edge list with `u < v`,
/// lexicographically sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub format: String,
    pub vertex_count: usize,
    pub labels: Vec<Vec<i64>>,
    pub edges: Vec<(usize, usize)>,
}

pub fn graph_to_document(g: &Graph) -> GraphDocument {
    GraphDocument {
        format: GRAPH_FORMAT.to_string(),
        vertex_count: g.vertex_count(),
        labels: g.labels().to_vec(),
        edges: g.edges(),
    }
}

pub fn document_to_graph(doc: &GraphDocument) -> Result<Graph, IoError> {
    if doc.format != GRAPH_FORMAT {
        return Err(IoError::WrongFormat {
            got: doc.format.clone(),
            expected: GRAPH_FORMAT,
        });
    }
    if doc.labels.len() != doc.vertex_count {
        return Err(IoError::LabelCountMismatch {
            got: doc.labels.len(),
            expected: doc.vertex_count,
        });
    }
    Ok(Graph::from_edges(doc.labels.clone(), &doc.edges)?)
}

pub fn write_graph_json(g: &Graph) -> String {
    let mut s = serde_json::to_string_pretty(&graph_to_document(g)).expect("document serializes");
    s.push('\n');
    s
}

pub fn read_graph_json(text: &str) -> Result<Graph, IoError> {
    document_to_graph(&serde_json::from_str(text)?)
}

/// On-disk colouring. `assign` always holds the sorted colour sets;
/// `order` is present exactly when the colouring carries consistent-tuple
/// ordering, and must sort to `assign` vertex by vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringDocument {
    pub format: String,
    pub p: usize,
    pub q: usize,
    pub assign: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<Vec<usize>>>,
}

pub fn coloring_to_document(f: &FractionalColoring) -> ColoringDocument {
    ColoringDocument {
        format: COLORING_FORMAT.to_string(),
        p: f.p(),
        q: f.q(),
        assign: f.sets().to_vec(),
        order: None,
    }
}

pub fn consistent_to_document(c: &ConsistentColoring) -> ColoringDocument {
    let mut doc = coloring_to_document(&c.to_fractional());
    doc.order = Some(c.tuples().to_vec());
    doc
}

fn check_coloring_document(doc: &ColoringDocument) -> Result<(), IoError> {
    if doc.format != COLORING_FORMAT {
        return Err(IoError::WrongFormat {
            got: doc.format.clone(),
            expected: COLORING_FORMAT,
        });
    }
    if let Some(order) = &doc.order {
        if order.len() != doc.assign.len() {
            return Err(IoError::OrderMismatch {
                v: order.len().min(doc.assign.len()),
            });
        }
        for (v, tuple) in order.iter().enumerate() {
            let mut sorted = tuple.clone();
            sorted.sort_unstable();
            if sorted != doc.assign[v] {
                return Err(IoError::OrderMismatch { v });
            }
        }
    }
    Ok(())
}

/// Reads the set form, usable whether or not the document carries tuples.
pub fn document_to_fractional(doc: &ColoringDocument) -> Result<FractionalColoring, IoError> {
    check_coloring_document(doc)?;
    Ok(FractionalColoring::new(doc.p, doc.q, doc.assign.clone())?)
}

/// Reads the tuple form; errors when the document has no `order`.
pub fn document_to_consistent(doc: &ColoringDocument) -> Result<ConsistentColoring, IoError> {
    check_coloring_document(doc)?;
    let order = doc.order.as_ref().ok_or(IoError::MissingOrder)?;
    Ok(ConsistentColoring::new(doc.p, doc.q, order.clone())?)
}

pub fn write_coloring_json(f: &FractionalColoring) -> String {
    let mut s = serde_json::to_string_pretty(&coloring_to_document(f)).expect("document serializes");
    s.push('\n');
    s
}

pub fn write_consistent_json(c: &ConsistentColoring) -> String {
    let mut s =
        serde_json::to_string_pretty(&consistent_to_document(c)).expect("document serializes");
    s.push('\n');
    s
}

pub fn read_coloring_json(text: &str) -> Result<FractionalColoring, IoError> {
    document_to_fractional(&serde_json::from_str(text)?)
}

pub fn read_consistent_json(text: &str) -> Result<ConsistentColoring, IoError> {
    document_to_consistent(&serde_json::from_str(text)?)
}

pub fn report_to_json(report: &VerificationReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// DOT rendering. Vertex labels show the graph's coordinate labels shifted
/// to 1-based; with a colouring, vertices are filled by their first colour
/// (evenly spaced hues) and annotated with the full colour set.
pub fn export_dot(g: &Graph, coloring: Option<&FractionalColoring>) -> String {
    let mut out = String::from("graph {\n  node [style=filled, shape=circle];\n");
    for v in 0..g.vertex_count() {
        let coords: Vec<String> = g.label(v).iter().map(|c| (c + 1).to_string()).collect();
        let mut attrs = format!("label=\"({})\"", coords.join(","));
        if let Some(f) = coloring {
            let set = f.set(v);
            let hue = set[0] as f64 / f.p().max(1) as f64;
            let colors: Vec<String> = set.iter().map(|c| c.to_string()).collect();
            write!(
                attrs,
                ", fillcolor=\"{hue:.4} 0.45 1.0\", xlabel=\"{}\"",
                colors.join(",")
            )
            .expect("writing to a String cannot fail");
        } else {
            attrs.push_str(", fillcolor=\"0.0 0.0 0.95\"");
        }
        let _ = writeln!(out, "  {v} [{attrs}];");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

/// Long-format CSV for a sweep: one row per (density, trial), stable column
/// order, no metadata rows so files diff cleanly. The per-density summaries
/// live in the JSON form; this is the raw data they summarize.
pub fn sweep_to_csv(report: &SweepReport) -> String {
    let mut out = String::from("density,trial,max_cluster\n");
    for row in &report.densities {
        for (trial, &size) in row.per_trial.iter().enumerate() {
            let _ = writeln!(out, "{},{},{}", row.density, trial, size);
        }
    }
    out
}

pub fn sweep_to_json(report: &SweepReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}
