//! Canonical text formats.
//!
//! Graph and certificate documents are JSON objects written with two-space
//! indentation, keys in a fixed order and one edge per line:
//!
//! ```text
//! {
//!   "format_version": "1",
//!   "r": 3,
//!   "n": 4,
//!   "edges": [
//!     [0, 1, 2],
//!     [0, 1, 3]
//!   ]
//! }
//! ```
//!
//! `k` and `labels` follow `n` when the vertex layout is known; certificates
//! append `ignition`, `sequence`, `predicted_t` and, for gluable
//! certificates, `apex`. Traces are one JSON object per line: a header
//! `{"format_version":"1","r":..,"n":..,"running_time":..}` and then
//! `{"step":..,"edge":[..]}` records in step order.

use std::fmt::Write as _;
use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{CertificateError, SequentialCertificate};
use crate::engine::RunResult;
use crate::hypergraph::{Edge, EdgeError, Hypergraph, HypergraphError, Layout, VertexId, VertexLabel};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid document at line {line}: {message}")]
    Schema { line: usize, message: String },
    #[error("unsupported format_version {0:?}")]
    Version(String),
    #[error("{field}[{position}]: {source}")]
    Edge { field: &'static str, position: usize, source: EdgeError },
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("uniformity must be positive")]
    ZeroUniformity,
    #[error("labels: {0}")]
    Labels(String),
    #[error(transparent)]
    Certificate(CertificateError),
}

impl ParseError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "syntax",
            ParseError::Schema { .. } => "schema",
            ParseError::Version(_) => "version",
            ParseError::Edge { source: EdgeError::WrongArity { .. }, .. } => "arity",
            ParseError::Edge { source: EdgeError::DuplicateVertex(_), .. } => "duplicate-vertex",
            ParseError::Edge { source: EdgeError::OutOfRange { .. }, .. } => "out-of-range",
            ParseError::DuplicateEdge(_) => "duplicate-edge",
            ParseError::ZeroUniformity => "arity",
            ParseError::Labels(_) => "labels",
            ParseError::Certificate(_) => "certificate",
        }
    }
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        use serde_json::error::Category;
        match e.classify() {
            Category::Data => ParseError::Schema { line: e.line(), message: e.to_string() },
            _ => ParseError::Syntax { line: e.line(), column: e.column(), message: e.to_string() },
        }
    }
}

#[derive(Deserialize)]
struct RawGraph {
    format_version: String,
    r: usize,
    n: u32,
    #[serde(default)]
    k: Option<u32>,
    #[serde(default)]
    labels: Option<Vec<VertexLabel>>,
    edges: Vec<Vec<u32>>,
}

#[derive(Deserialize)]
struct RawCertificate {
    #[serde(flatten)]
    graph: RawGraph,
    ignition: Vec<u32>,
    sequence: Vec<Vec<u32>>,
    predicted_t: u64,
    #[serde(default)]
    apex: Option<VertexId>,
}

/// A parsed graph document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDocument {
    pub graph: Hypergraph,
    pub k: Option<u32>,
}

fn layout_for(k: u32, n: u32) -> Option<Layout> {
    let width = (4 * k).checked_sub(3).filter(|&w| w > 0)?;
    Layout::new(k, n.div_ceil(width).max(1)).ok()
}

fn edge_line(e: &[u32]) -> String {
    let ids: Vec<String> = e.iter().map(u32::to_string).collect();
    format!("[{}]", ids.join(", "))
}

fn block(items: Vec<String>) -> String {
    if items.is_empty() {
        return "[]".to_string();
    }
    let mut out = String::from("[\n");
    out.push_str(&items.iter().map(|s| format!("    {s}")).collect::<Vec<_>>().join(",\n"));
    out.push_str("\n  ]");
    out
}

fn graph_fields(graph: &Hypergraph, k: Option<u32>) -> Vec<(&'static str, String)> {
    let mut fields = vec![
        ("format_version", format!("\"{FORMAT_VERSION}\"")),
        ("r", graph.r().to_string()),
        ("n", graph.n().to_string()),
    ];
    if let Some(layout) = k.and_then(|k| layout_for(k, graph.n())) {
        fields.push(("k", layout.k().to_string()));
        let labels = (0..graph.n())
            .map(|id| {
                let l = layout.label(id).expect("layout covers n");
                format!("{{\"layer\": {}, \"index\": {}}}", l.layer, l.index)
            })
            .collect();
        fields.push(("labels", block(labels)));
    }
    fields.push(("edges", block(graph.iter().map(|e| edge_line(e.vertices())).collect())));
    fields
}

fn object(fields: Vec<(&'static str, String)>) -> String {
    let body: Vec<String> = fields.into_iter().map(|(key, value)| format!("  \"{key}\": {value}")).collect();
    format!("{{\n{}\n}}\n", body.join(",\n"))
}

/// Canonical graph document. Labels are written iff `k` is given.
pub fn emit_graph(graph: &Hypergraph, k: Option<u32>) -> String {
    object(graph_fields(graph, k))
}

pub fn emit_certificate(cert: &SequentialCertificate) -> String {
    let mut fields = graph_fields(cert.graph(), cert.k());
    fields.push(("ignition", edge_line(cert.ignition().vertices())));
    fields.push(("sequence", block(cert.sequence().iter().map(|e| edge_line(e.vertices())).collect())));
    fields.push(("predicted_t", cert.predicted_t().to_string()));
    if let Some(apex) = cert.apex() {
        fields.push(("apex", apex.to_string()));
    }
    object(fields)
}

fn graph_from_raw(raw: RawGraph) -> Result<GraphDocument, ParseError> {
    if raw.format_version != FORMAT_VERSION {
        return Err(ParseError::Version(raw.format_version));
    }
    if raw.r == 0 {
        return Err(ParseError::ZeroUniformity);
    }
    if let Some(labels) = &raw.labels {
        let layout = raw
            .k
            .and_then(|k| layout_for(k, raw.n))
            .ok_or_else(|| ParseError::Labels("labels require a valid k".into()))?;
        if labels.len() != raw.n as usize {
            return Err(ParseError::Labels(format!("{} labels for {} vertices", labels.len(), raw.n)));
        }
        for (id, label) in labels.iter().enumerate() {
            if layout.id(*label).ok() != Some(id as VertexId) {
                return Err(ParseError::Labels(format!("vertex {id} labelled {label}")));
            }
        }
    }
    let edges = raw
        .edges
        .iter()
        .enumerate()
        .map(|(position, ids)| {
            Edge::new(ids, raw.r, raw.n).map_err(|source| ParseError::Edge { field: "edges", position, source })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let graph = Hypergraph::new(raw.n, raw.r, edges).map_err(|e| match e {
        HypergraphError::DuplicateEdge(e) => ParseError::DuplicateEdge(e),
        HypergraphError::Edge { position, source } => ParseError::Edge { field: "edges", position, source },
        HypergraphError::ZeroUniformity | HypergraphError::Shrink { .. } => ParseError::ZeroUniformity,
    })?;
    Ok(GraphDocument { graph, k: raw.k })
}

/// Parses a graph document. Certificate documents are accepted too; their
/// extra fields are ignored.
pub fn parse_graph(text: &str) -> Result<GraphDocument, ParseError> {
    graph_from_raw(serde_json::from_str(text)?)
}

pub fn parse_certificate(text: &str) -> Result<SequentialCertificate, ParseError> {
    let raw: RawCertificate = serde_json::from_str(text)?;
    let doc = graph_from_raw(raw.graph)?;
    let (r, n) = (doc.graph.r(), doc.graph.n());
    let ignition =
        Edge::new(&raw.ignition, r, n).map_err(|source| ParseError::Edge { field: "ignition", position: 0, source })?;
    let sequence = raw
        .sequence
        .iter()
        .enumerate()
        .map(|(position, ids)| {
            Edge::new(ids, r, n).map_err(|source| ParseError::Edge { field: "sequence", position, source })
        })
        .collect::<Result<Vec<_>, _>>()?;
    SequentialCertificate::new(doc.graph, ignition, sequence, doc.k, raw.predicted_t, raw.apex)
        .map_err(ParseError::Certificate)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceHeader {
    pub format_version: String,
    pub r: usize,
    pub n: u32,
    pub running_time: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub step: u64,
    pub edge: Vec<u32>,
}

/// Writes the header and one record per infected edge.
pub fn emit_trace<W: Write>(result: &RunResult, mut sink: W) -> io::Result<()> {
    let header = TraceHeader {
        format_version: FORMAT_VERSION.to_string(),
        r: result.final_graph.r(),
        n: result.final_graph.n(),
        running_time: result.running_time,
    };
    writeln!(sink, "{}", serde_json::to_string(&header)?)?;
    for (step, e) in result.trace.iter() {
        let record = TraceRecord { step, edge: e.vertices().to_vec() };
        writeln!(sink, "{}", serde_json::to_string(&record)?)?;
    }
    sink.flush()
}

pub fn trace_to_string(result: &RunResult) -> String {
    let mut buf = Vec::new();
    emit_trace(result, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// Reads a trace stream back.
pub fn read_trace<R: BufRead>(source: R) -> Result<(TraceHeader, Vec<TraceRecord>), ParseError> {
    let mut lines = source.lines().enumerate();
    let io_err = |line: usize, e: io::Error| ParseError::Syntax { line, column: 0, message: e.to_string() };
    let (_, first) = lines.next().ok_or(ParseError::Schema { line: 1, message: "missing header".into() })?;
    let header: TraceHeader = serde_json::from_str(&first.map_err(|e| io_err(1, e))?)?;
    if header.format_version != FORMAT_VERSION {
        return Err(ParseError::Version(header.format_version));
    }
    let mut records = Vec::new();
    for (i, line) in lines {
        let line = line.map_err(|e| io_err(i + 1, e))?;
        let record: TraceRecord = serde_json::from_str(&line).map_err(|e| match ParseError::from(e) {
            ParseError::Syntax { column, message, .. } => ParseError::Syntax { line: i + 1, column, message },
            ParseError::Schema { message, .. } => ParseError::Schema { line: i + 1, message },
            other => other,
        })?;
        records.push(record);
    }
    Ok((header, records))
}

/// Summary line used by the CLI, e.g. `r=3 n=11 edges=21`.
pub fn describe(graph: &Hypergraph) -> String {
    let mut s = String::new();
    let _ = write!(s, "r={} n={} edges={}", graph.r(), graph.n(), graph.len());
    s
}
