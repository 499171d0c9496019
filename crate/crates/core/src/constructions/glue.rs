//! Chaining apex copies of a sequential graph (gluing) and raising the
//! uniformity by one (lifting).

use std::collections::BTreeSet;

use super::{ConstructionError, SequentialCertificate};
use crate::hypergraph::{Edge, Hypergraph, Layout, VertexId};

/// Bridge gadget on `{a, b, c} ∪ anchor`: every `r`-subset that contains
/// neither both of `a, c` nor the whole `anchor` (which has `r - 1`
/// vertices).
pub fn bridge_gadget(outer: [VertexId; 3], anchor: &Edge, r: usize) -> Vec<Edge> {
    debug_assert_eq!(anchor.len() + 1, r);
    let [a, _, c] = outer;
    let pool = outer.iter().fold(anchor.clone(), |acc, &v| acc.with_vertex(v));
    pool.subsets(r).into_iter().filter(|e| !(e.contains(a) && e.contains(c)) && !anchor.is_subset_of(e)).collect()
}

/// Chains `2k - 1` apex-renamed copies of `cert`, alternating direction and
/// joined by bridge edges, into an apex-free certificate on `A_r^*` with
/// `T = (2k - 1) T_1 + 4(k - 1)`.
///
/// `cert` must live on `A_{r-1}^* ∪ {v_1^r}` with apex `v_1^r` in every
/// sequence edge and `T_1 >= 2`.
pub fn glue(cert: &SequentialCertificate, k: u32) -> Result<SequentialCertificate, ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::KTooSmall(k));
    }
    if let Some(ck) = cert.k().filter(|&ck| ck != k) {
        return Err(ConstructionError::KMismatch { certificate: ck, requested: k });
    }
    let r = cert.r();
    let layout = Layout::new(k, r as u32).expect("k >= 2");
    let w = layout.width();
    let expected_n = (r as u32 - 1) * w + 1;
    if cert.graph().n() != expected_n {
        return Err(ConstructionError::VertexSetMismatch { expected: expected_n, found: cert.graph().n() });
    }
    let apex = layout.v(r as u32, 1);
    match cert.apex() {
        Some(a) if a == apex => {}
        found => return Err(ConstructionError::ApexExpected { expected: apex, found }),
    }
    let t1 = cert.predicted_t();
    if t1 < 2 {
        return Err(ConstructionError::SequenceTooShort(t1));
    }

    let top = |j: u32| layout.v(r as u32, j);
    let copies = 2 * k - 1;
    let ignition = cert.ignition().clone();
    let first_tail = ignition.without_vertex(apex);
    let last_tail = cert.terminal().without_vertex(apex);

    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    let core = cert.without_ignition();
    for j in 1..=copies {
        let target = top(2 * j - 1);
        edges.extend(core.iter().map(|e| e.rename(apex, target)));
    }
    for j in 1..k {
        edges.extend(bridge_gadget([top(4 * j - 3), top(4 * j - 2), top(4 * j - 1)], &last_tail, r));
        edges.extend(bridge_gadget([top(4 * j - 1), top(4 * j), top(4 * j + 1)], &first_tail, r));
    }
    edges.insert(ignition.clone());

    let mut sequence = Vec::new();
    for j in 1..=copies {
        let target = top(2 * j - 1);
        let copy = cert.sequence().iter().map(|e| e.rename(apex, target));
        if j % 2 == 1 {
            sequence.extend(copy);
        } else {
            sequence.extend(copy.rev());
        }
        if j < copies {
            let tail = if j % 2 == 1 { &last_tail } else { &first_tail };
            sequence.push(tail.with_vertex(top(2 * j)));
        }
    }

    let predicted = u64::from(copies) * t1 + 4 * u64::from(k - 1);
    debug_assert_eq!(sequence.len() as u64, predicted + 1);
    let graph = Hypergraph::new(r as u32 * w, r, edges)?;
    Ok(SequentialCertificate::new(graph, ignition, sequence, Some(k), predicted, None)?)
}

/// Raises a glued certificate on `A_r^*` to uniformity `r + 1`: every edge
/// gains the new apex `v_1^{r+1}` and the complete `(r+1)`-graph on `A_r^*`
/// is added to the initial graph.
pub fn lift(cert: &SequentialCertificate) -> Result<SequentialCertificate, ConstructionError> {
    let k = cert.k().ok_or(ConstructionError::MissingK)?;
    if let Some(found) = cert.apex() {
        return Err(ConstructionError::ApexPresent(found));
    }
    let r = cert.r();
    let layout = Layout::new(k, r as u32 + 1).map_err(|_| ConstructionError::KTooSmall(k))?;
    let expected_n = r as u32 * layout.width();
    if cert.graph().n() != expected_n {
        return Err(ConstructionError::VertexSetMismatch { expected: expected_n, found: cert.graph().n() });
    }
    let apex = layout.v(r as u32 + 1, 1);
    let mut edges: Vec<Edge> = cert.graph().iter().map(|e| e.with_vertex(apex)).collect();
    edges.extend(Hypergraph::complete(expected_n, r + 1).iter().cloned());
    let graph = Hypergraph::new(expected_n + 1, r + 1, edges)?;
    let sequence: Vec<Edge> = cert.sequence().iter().map(|e| e.with_vertex(apex)).collect();
    let ignition = sequence[0].clone();
    Ok(SequentialCertificate::new(graph, ignition, sequence, Some(k), cert.predicted_t(), Some(apex))?)
}
