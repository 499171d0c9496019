use std::collections::HashSet;

use thiserror::Error;

use crate::hypergraph::{Edge, EdgeError, Hypergraph, VertexId};

/// A malformed certificate: the claimed sequence is inconsistent with the
/// graph, independently of what the process actually does.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("sequence is empty")]
    EmptySequence,
    #[error("ignition edge {ignition} differs from sequence[0] = {first}")]
    IgnitionMismatch { ignition: Edge, first: Edge },
    #[error("ignition edge {0} is not in the graph")]
    IgnitionNotInGraph(Edge),
    #[error("sequence[{position}] = {edge} is already in the graph")]
    SequenceEdgeInGraph { position: usize, edge: Edge },
    #[error("sequence[{position}] = {edge} repeats an earlier entry")]
    RepeatedSequenceEdge { position: usize, edge: Edge },
    #[error("sequence[{position}]: {source}")]
    BadSequenceEdge { position: usize, source: EdgeError },
    #[error("predicted T = {predicted} but the sequence implies {implied}")]
    PredictedMismatch { predicted: u64, implied: u64 },
    #[error("apex {apex} is missing from sequence[{position}]")]
    ApexMissing { apex: VertexId, position: usize },
    #[error("apex {apex} is outside the {n}-vertex graph")]
    ApexOutOfRange { apex: VertexId, n: u32 },
}

/// A graph `H` together with a claimed infection order `e_0, e_1, …, e_T`:
/// the process started from `H` should infect exactly `e_i` at step `i`,
/// `H ∖ {e_0}` should be stationary, and swapping `e_0` for `e_T` should
/// replay the sequence backwards.
///
/// `apex` is the vertex shared by every sequence edge of a certificate that
/// can still be glued. Glued certificates carry `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequentialCertificate {
    graph: Hypergraph,
    sequence: Vec<Edge>,
    k: Option<u32>,
    apex: Option<VertexId>,
}

impl SequentialCertificate {
    /// Checks every structural invariant; the process itself is checked by
    /// [`crate::verify::verify_sequential`].
    pub fn new(
        graph: Hypergraph,
        ignition: Edge,
        sequence: Vec<Edge>,
        k: Option<u32>,
        predicted_t: u64,
        apex: Option<VertexId>,
    ) -> Result<Self, CertificateError> {
        let first = sequence.first().ok_or(CertificateError::EmptySequence)?;
        if *first != ignition {
            return Err(CertificateError::IgnitionMismatch { ignition, first: first.clone() });
        }
        for (position, e) in sequence.iter().enumerate() {
            Edge::new(e.vertices(), graph.r(), graph.n())
                .map_err(|source| CertificateError::BadSequenceEdge { position, source })?;
        }
        if !graph.contains(&ignition) {
            return Err(CertificateError::IgnitionNotInGraph(ignition));
        }
        let mut seen = HashSet::with_capacity(sequence.len());
        for (position, e) in sequence.iter().enumerate() {
            if !seen.insert(e) {
                return Err(CertificateError::RepeatedSequenceEdge { position, edge: e.clone() });
            }
            if position > 0 && graph.contains(e) {
                return Err(CertificateError::SequenceEdgeInGraph { position, edge: e.clone() });
            }
        }
        let implied = sequence.len() as u64 - 1;
        if predicted_t != implied {
            return Err(CertificateError::PredictedMismatch { predicted: predicted_t, implied });
        }
        if let Some(apex) = apex {
            if apex >= graph.n() {
                return Err(CertificateError::ApexOutOfRange { apex, n: graph.n() });
            }
            if let Some(position) = sequence.iter().position(|e| !e.contains(apex)) {
                return Err(CertificateError::ApexMissing { apex, position });
            }
        }
        Ok(Self { graph, sequence, k, apex })
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }

    pub fn ignition(&self) -> &Edge {
        &self.sequence[0]
    }

    /// `e_0, …, e_T`.
    pub fn sequence(&self) -> &[Edge] {
        &self.sequence
    }

    /// The last sequence edge `e_T`.
    pub fn terminal(&self) -> &Edge {
        self.sequence.last().expect("nonempty")
    }

    pub fn r(&self) -> usize {
        self.graph.r()
    }

    pub fn k(&self) -> Option<u32> {
        self.k
    }

    pub fn predicted_t(&self) -> u64 {
        self.sequence.len() as u64 - 1
    }

    pub fn apex(&self) -> Option<VertexId> {
        self.apex
    }

    /// `H ∖ {e_0}`, which should be stationary.
    pub fn without_ignition(&self) -> Hypergraph {
        self.graph.without_edge(self.ignition())
    }

    /// `(H ∪ {e_T}) ∖ {e_0}`, which should replay the sequence backwards.
    pub fn reversed_start(&self) -> Hypergraph {
        self.without_ignition().with_edges([self.terminal().clone()]).expect("sequence edges are valid")
    }

    pub fn into_parts(self) -> (Hypergraph, Vec<Edge>, Option<u32>, Option<VertexId>) {
        (self.graph, self.sequence, self.k, self.apex)
    }
}
