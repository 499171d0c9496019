//! Vertex labels, canonical edges and uniform hypergraphs.

use std::fmt;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

use crate::combinatorics::{complement, merge_sorted, Combinations};

pub type VertexId = u32;

type Vertices = SmallVec<[VertexId; 8]>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EdgeError {
    #[error("edge has {found} vertices, expected {expected}")]
    WrongArity { expected: usize, found: usize },
    #[error("duplicate vertex in edge: {0}")]
    DuplicateVertex(VertexId),
    #[error("vertex {id} out of range for {n} vertices")]
    OutOfRange { id: VertexId, n: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("edge #{position}: {source}")]
    Edge { position: usize, source: EdgeError },
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("uniformity must be positive")]
    ZeroUniformity,
    #[error("cannot shrink a graph on {current} vertices to {requested}")]
    Shrink { current: u32, requested: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("k must be at least 1, got {0}")]
    BadK(u32),
    #[error("layer {layer} outside [1, {layers}]")]
    Layer { layer: u32, layers: u32 },
    #[error("index {index} outside [1, {width}]")]
    Index { index: u32, width: u32 },
    #[error("vertex id {id} outside the {count}-vertex layout")]
    Id { id: VertexId, count: u64 },
}

/// A strictly increasing set of vertex ids.
///
/// Used both for `r`-edges and for `m`-vertex tuples. The canonical sorted
/// form is the only stored form, so the derived ordering is lexicographic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Edge(Vertices);

/// A candidate clique: a sorted vertex set whose facets are edges.
pub type Tuple = Edge;

impl Edge {
    /// Validates `ids` as an `r`-edge over `0..n` and sorts it.
    pub fn new(ids: &[VertexId], r: usize, n: u32) -> Result<Self, EdgeError> {
        if ids.len() != r {
            return Err(EdgeError::WrongArity { expected: r, found: ids.len() });
        }
        Self::from_set(ids, n)
    }

    /// Validates an arbitrary-size vertex set over `0..n`.
    pub fn from_set(ids: &[VertexId], n: u32) -> Result<Self, EdgeError> {
        if let Some(&id) = ids.iter().find(|&&id| id >= n) {
            return Err(EdgeError::OutOfRange { id, n });
        }
        let mut v: Vertices = ids.iter().copied().collect();
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(EdgeError::DuplicateVertex(w[0]));
        }
        Ok(Self(v))
    }

    /// Caller guarantees `ids` is strictly increasing.
    pub(crate) fn from_sorted(ids: &[VertexId]) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]), "unsorted edge {ids:?}");
        Self(ids.iter().copied().collect())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn max_vertex(&self) -> Option<VertexId> {
        self.0.last().copied()
    }

    /// `self ∪ {v}`.
    pub fn with_vertex(&self, v: VertexId) -> Self {
        let mut out = self.0.clone();
        if let Err(pos) = out.binary_search(&v) {
            out.insert(pos, v);
        }
        Self(out)
    }

    /// `self ∖ {v}`.
    pub fn without_vertex(&self, v: VertexId) -> Self {
        Self(self.0.iter().copied().filter(|&x| x != v).collect())
    }

    /// Replaces `from` by `to`, keeping the canonical order.
    pub fn rename(&self, from: VertexId, to: VertexId) -> Self {
        if !self.contains(from) {
            return self.clone();
        }
        self.without_vertex(from).with_vertex(to)
    }

    pub fn is_subset_of(&self, other: &Edge) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    pub fn union(&self, other: &Edge) -> Self {
        let mut out: Vertices = self.0.iter().chain(other.0.iter()).copied().collect();
        out.sort_unstable();
        out.dedup();
        Self(out)
    }

    /// The facets of a tuple: drop position `p` for `p = 0..len`.
    pub fn facets(&self) -> Vec<Edge> {
        (0..self.0.len())
            .map(|p| Self(self.0.iter().enumerate().filter(|&(i, _)| i != p).map(|(_, &v)| v).collect()))
            .collect()
    }

    /// All `r`-subsets of this set, in lexicographic order.
    pub fn subsets(&self, r: usize) -> Vec<Edge> {
        let mut out = Vec::new();
        let mut c = Combinations::new(self.0.len(), r);
        while let Some(idx) = c.next() {
            out.push(Self(idx.iter().map(|&i| self.0[i]).collect()));
        }
        out
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Builds the canonical `r`-edge on `ids`.
pub fn make_edge(ids: &[VertexId], r: usize, n: u32) -> Result<Edge, EdgeError> {
    Edge::new(ids, r, n)
}

/// The `m`-vertex tuples of `0..n` containing `e`, in lexicographic order.
///
/// For `m = r + 1` these are the `n - r` sets `e ∪ {v}`.
pub fn supersets(e: &Edge, n: u32, m: usize) -> Result<Vec<Tuple>, EdgeError> {
    let r = e.len();
    if m <= r {
        return Err(EdgeError::WrongArity { expected: r + 1, found: m });
    }
    let rest = complement(e.vertices(), n);
    let mut out = Vec::new();
    let mut extra = Vec::with_capacity(m - r);
    let mut merged = Vec::with_capacity(m);
    let mut c = Combinations::new(rest.len(), m - r);
    while let Some(idx) = c.next() {
        extra.clear();
        extra.extend(idx.iter().map(|&i| rest[i]));
        merge_sorted(e.vertices(), &extra, &mut merged);
        out.push(Edge::from_sorted(&merged));
    }
    out.sort_unstable();
    Ok(out)
}

/// The facets of a sorted tuple, in "drop position p" order.
pub fn facets(t: &Tuple) -> Vec<Edge> {
    t.facets()
}

/// The vertex `v_index^layer`: `layer` is the superscript, `index` the
/// subscript.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexLabel {
    pub layer: u32,
    pub index: u32,
}

impl VertexLabel {
    pub fn new(layer: u32, index: u32) -> Self {
        Self { layer, index }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v_{}^{}", self.index, self.layer)
    }
}

/// Layer-major dense numbering of `layers` layers of `4k - 3` vertices:
/// `id(i, j) = (i - 1)(4k - 3) + (j - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Layout {
    k: u32,
    layers: u32,
}

impl Layout {
    pub fn new(k: u32, layers: u32) -> Result<Self, LabelError> {
        if k == 0 {
            return Err(LabelError::BadK(k));
        }
        Ok(Self { k, layers })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn layers(&self) -> u32 {
        self.layers
    }

    /// Vertices per layer, `4k - 3`.
    pub fn width(&self) -> u32 {
        4 * self.k - 3
    }

    pub fn vertex_count(&self) -> u64 {
        u64::from(self.layers) * u64::from(self.width())
    }

    pub fn id(&self, label: VertexLabel) -> Result<VertexId, LabelError> {
        if label.layer == 0 || label.layer > self.layers {
            return Err(LabelError::Layer { layer: label.layer, layers: self.layers });
        }
        if label.index == 0 || label.index > self.width() {
            return Err(LabelError::Index { index: label.index, width: self.width() });
        }
        Ok((label.layer - 1) * self.width() + (label.index - 1))
    }

    pub fn label(&self, id: VertexId) -> Result<VertexLabel, LabelError> {
        if u64::from(id) >= self.vertex_count() {
            return Err(LabelError::Id { id, count: self.vertex_count() });
        }
        Ok(VertexLabel { layer: id / self.width() + 1, index: id % self.width() + 1 })
    }

    /// `id(layer, index)` for labels known to be in range.
    pub(crate) fn v(&self, layer: u32, index: u32) -> VertexId {
        self.id(VertexLabel::new(layer, index)).unwrap_or_else(|e| panic!("construction label v_{index}^{layer}: {e}"))
    }
}

/// An `r`-uniform hypergraph on the vertices `0..n`, identified with its
/// edge set.
///
/// Edges live in an insertion-ordered hash set that is always filled in
/// lexicographic order, so membership is O(1) and iteration is canonical.
#[derive(Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: u32,
    r: usize,
    edges: IndexSet<Edge>,
}

impl Hypergraph {
    /// Validates every edge and rejects duplicates.
    pub fn new(n: u32, r: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, HypergraphError> {
        if r == 0 {
            return Err(HypergraphError::ZeroUniformity);
        }
        let mut list: Vec<Edge> = Vec::new();
        for (position, e) in edges.into_iter().enumerate() {
            check_edge(&e, r, n).map_err(|source| HypergraphError::Edge { position, source })?;
            list.push(e);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(HypergraphError::DuplicateEdge(w[0].clone()));
        }
        Ok(Self::from_sorted_unique(n, r, list))
    }

    /// Builds from raw id lists, sorting each one.
    pub fn from_id_lists<L: AsRef<[VertexId]>>(
        n: u32,
        r: usize,
        lists: impl IntoIterator<Item = L>,
    ) -> Result<Self, HypergraphError> {
        let mut edges = Vec::new();
        for (position, ids) in lists.into_iter().enumerate() {
            edges.push(Edge::new(ids.as_ref(), r, n).map_err(|source| HypergraphError::Edge { position, source })?);
        }
        Self::new(n, r, edges)
    }

    pub(crate) fn from_sorted_unique(n: u32, r: usize, list: Vec<Edge>) -> Self {
        Self { n, r, edges: list.into_iter().collect() }
    }

    /// Collects possibly repeated, already valid edges.
    pub(crate) fn from_valid(n: u32, r: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut list: Vec<Edge> = edges.into_iter().collect();
        debug_assert!(list.iter().all(|e| check_edge(e, r, n).is_ok()));
        list.sort_unstable();
        list.dedup();
        Self::from_sorted_unique(n, r, list)
    }

    pub fn empty(n: u32, r: usize) -> Self {
        Self { n, r, edges: IndexSet::new() }
    }

    /// `K^r_n`.
    pub fn complete(n: u32, r: usize) -> Self {
        let all = Edge::from_sorted(&(0..n).collect::<Vec<_>>());
        Self::from_sorted_unique(n, r, all.subsets(r))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    /// Edges in lexicographic order.
    pub fn iter(&self) -> impl ExactSizeIterator<Item = &Edge> + '_ {
        self.edges.iter()
    }

    /// `self ∪ extra`; repeated edges are merged.
    pub fn with_edges(&self, extra: impl IntoIterator<Item = Edge>) -> Result<Self, HypergraphError> {
        let extra: Vec<Edge> = extra.into_iter().collect();
        for (position, e) in extra.iter().enumerate() {
            check_edge(e, self.r, self.n).map_err(|source| HypergraphError::Edge { position, source })?;
        }
        Ok(Self::from_valid(self.n, self.r, self.edges.iter().cloned().chain(extra)))
    }

    pub fn without_edge(&self, e: &Edge) -> Self {
        Self::from_sorted_unique(self.n, self.r, self.edges.iter().filter(|x| *x != e).cloned().collect())
    }

    /// The same edge set on `n` vertices (adds isolated vertices).
    pub fn with_vertex_count(&self, n: u32) -> Result<Self, HypergraphError> {
        if n < self.n {
            return Err(HypergraphError::Shrink { current: self.n, requested: n });
        }
        Ok(Self { n, r: self.r, edges: self.edges.clone() })
    }

    pub fn is_subgraph_of(&self, other: &Hypergraph) -> bool {
        self.edges.iter().all(|e| other.contains(e))
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("n", &self.n)
            .field("r", &self.r)
            .field("edges", &self.edges.iter().collect::<Vec<_>>())
            .finish()
    }
}

fn check_edge(e: &Edge, r: usize, n: u32) -> Result<(), EdgeError> {
    if e.len() != r {
        return Err(EdgeError::WrongArity { expected: r, found: e.len() });
    }
    if let Some(id) = e.max_vertex().filter(|&id| id >= n) {
        return Err(EdgeError::OutOfRange { id, n });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn edge(ids: &[u32]) -> Edge {
        Edge::from_set(ids, 1000).unwrap()
    }

    #[test]
    fn make_edge_sorts() {
        assert_eq!(make_edge(&[3, 1, 2], 3, 4).unwrap().vertices(), &[1, 2, 3]);
        assert_eq!(make_edge(&[0, 5, 9], 3, 11).unwrap().vertices(), &[0, 5, 9]);
    }

    #[test]
    fn make_edge_errors_are_distinct() {
        assert_eq!(make_edge(&[1, 1, 2], 3, 4), Err(EdgeError::DuplicateVertex(1)));
        assert_eq!(make_edge(&[1, 2], 3, 4), Err(EdgeError::WrongArity { expected: 3, found: 2 }));
        assert_eq!(make_edge(&[1, 2, 11], 3, 11), Err(EdgeError::OutOfRange { id: 11, n: 11 }));
        assert_eq!(make_edge(&[0, 0, 1], 3, 4).unwrap_err().to_string(), "duplicate vertex in edge: 0");
    }

    #[test]
    fn label_examples() {
        let layout = Layout::new(2, 3).unwrap();
        assert_eq!(layout.id(VertexLabel::new(1, 1)).unwrap(), 0);
        assert_eq!(layout.id(VertexLabel::new(3, 1)).unwrap(), 10);
        assert_eq!(layout.id(VertexLabel::new(2, 5)).unwrap(), 9);
        assert_eq!(layout.label(9).unwrap(), VertexLabel::new(2, 5));
    }

    #[test]
    fn label_range_errors() {
        let layout = Layout::new(2, 3).unwrap();
        assert!(matches!(layout.id(VertexLabel::new(0, 1)), Err(LabelError::Layer { .. })));
        assert!(matches!(layout.id(VertexLabel::new(4, 1)), Err(LabelError::Layer { .. })));
        assert!(matches!(layout.id(VertexLabel::new(1, 6)), Err(LabelError::Index { .. })));
        assert!(matches!(layout.id(VertexLabel::new(1, 0)), Err(LabelError::Index { .. })));
        assert!(matches!(layout.label(15), Err(LabelError::Id { .. })));
        assert!(Layout::new(0, 3).is_err());
    }

    #[test]
    fn supersets_examples() {
        let e = edge(&[0, 1, 2]);
        assert_eq!(supersets(&e, 4, 4).unwrap(), vec![edge(&[0, 1, 2, 3])]);
        assert_eq!(supersets(&e, 5, 4).unwrap(), vec![edge(&[0, 1, 2, 3]), edge(&[0, 1, 2, 4])]);
        assert!(supersets(&e, 3, 4).unwrap().is_empty());
        assert!(supersets(&e, 5, 3).is_err());
        assert_eq!(supersets(&e, 6, 5).unwrap().len(), 3);
    }

    #[test]
    fn facets_examples() {
        let f = facets(&edge(&[0, 1, 2, 3]));
        assert_eq!(f, vec![edge(&[1, 2, 3]), edge(&[0, 2, 3]), edge(&[0, 1, 3]), edge(&[0, 1, 2])]);
        assert!(facets(&edge(&[2, 5, 7, 9])).iter().all(|e| e.len() == 3));
        let five = facets(&edge(&[0, 1, 2, 3, 4]));
        assert_eq!(five.len(), 5);
        assert!(five.iter().all(|e| e.len() == 4));
    }

    #[test]
    fn hypergraph_rejects_duplicates_and_iterates_sorted() {
        let g = Hypergraph::from_id_lists(5, 3, [[2, 3, 4], [0, 1, 2]]).unwrap();
        assert_eq!(g.iter().cloned().collect::<Vec<_>>(), vec![edge(&[0, 1, 2]), edge(&[2, 3, 4])]);
        assert!(matches!(
            Hypergraph::from_id_lists(5, 3, [[0, 1, 2], [2, 1, 0]]),
            Err(HypergraphError::DuplicateEdge(_))
        ));
        assert!(matches!(
            Hypergraph::from_id_lists(5, 3, [vec![0, 1, 2], vec![0, 1]]),
            Err(HypergraphError::Edge { position: 1, .. })
        ));
    }

    #[test]
    fn complete_graph_counts() {
        assert_eq!(Hypergraph::complete(4, 3).len(), 4);
        assert_eq!(Hypergraph::complete(15, 4).len(), 1365);
    }

    #[test]
    fn rename_keeps_canonical_order() {
        assert_eq!(edge(&[1, 4, 7]).rename(4, 9), edge(&[1, 7, 9]));
        assert_eq!(edge(&[1, 4, 7]).rename(5, 9), edge(&[1, 4, 7]));
    }

    proptest! {
        #[test]
        fn label_round_trip(k in 1u32..8, layers in 1u32..8, raw in 0u32..10_000) {
            let layout = Layout::new(k, layers).unwrap();
            let id = raw % (layout.vertex_count() as u32);
            prop_assert_eq!(layout.id(layout.label(id).unwrap()).unwrap(), id);
        }

        #[test]
        fn superset_and_facet_counts(set in proptest::collection::btree_set(0u32..12, 1..5), extra in 0u32..4) {
            let e: Vec<u32> = set.into_iter().collect();
            let n = 12 + extra;
            let edge = Edge::from_set(&e, n).unwrap();
            let sup = supersets(&edge, n, e.len() + 1).unwrap();
            prop_assert_eq!(sup.len(), n as usize - e.len());
            for t in &sup {
                let fs = facets(t);
                prop_assert_eq!(fs.len(), e.len() + 1);
                let distinct: std::collections::BTreeSet<_> = fs.iter().collect();
                prop_assert_eq!(distinct.len(), fs.len());
                prop_assert!(fs.iter().all(|f| f.is_subset_of(t)));
                prop_assert!(fs.contains(&edge));
            }
        }
    }
}
