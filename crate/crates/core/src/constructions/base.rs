//! The 3-uniform base instance on `A_1 ∪ A_2 ∪ {v_1^3}`.
//!
//! Two paths `v_1^1 … v_{4k-3}^1` and `v_1^2 … v_{4k-3}^2` plus an apex
//! `v_1^3`. The initial graph holds the apex joined to every consecutive pair
//! of either path, nested families of apex-free triples that steer the
//! infection around shrinking rectangles, and the ignition edge
//! `v_1^1 v_1^2 v_1^3`. The process then infects one apex edge per step for
//! `8k^2 - 12k + 4` steps.

use std::collections::BTreeSet;

use super::{ConstructionError, SequentialCertificate};
use crate::hypergraph::{Edge, Hypergraph, Layout};

/// `8k^2 - 12k + 4`.
pub fn base_running_time(k: u32) -> u64 {
    let k = u64::from(k);
    8 * k * k - 12 * k + 4
}

/// Cumulative step count after the first `s` stages, `s(16k - 8s - 12)`.
fn stage_end(k: u64, s: u64) -> u64 {
    s * (16 * k - 8 * s - 12)
}

/// The four legs walked in each stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leg {
    /// `v_{2s-1}^1` fixed, layer-2 end moves forward.
    Layer2Forward,
    /// `v_{4k-2s-1}^2` fixed, layer-1 end moves forward.
    Layer1Forward,
    /// `v_{4k-2s-1}^1` fixed, layer-2 end moves back.
    Layer2Backward,
    /// `v_{2s+1}^2` fixed, layer-1 end moves back.
    Layer1Backward,
}

/// Position of step `i` in the walk: stage `s`, offset `α` within the stage
/// and the leg it falls on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BaseStep {
    pub stage: u64,
    pub offset: u64,
    pub leg: Leg,
    /// Subscripts `(j1, j2)` of the layer-1 and layer-2 vertices.
    pub indices: (u64, u64),
}

/// Locates step `i ∈ [1, 8k^2 - 12k + 4]` of the base process.
pub fn base_step(k: u32, i: u64) -> Result<BaseStep, ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::KTooSmall(k));
    }
    let total = base_running_time(k);
    if i == 0 || i > total {
        return Err(ConstructionError::StepOutOfRange { i, max: total });
    }
    let k = u64::from(k);
    let s = (1..k).find(|&s| i <= stage_end(k, s)).expect("i <= T_1 = end of stage k-1");
    let a = i - stage_end(k, s - 1);
    let d = k - s;
    // Signed arithmetic: some closed forms subtract before adding α.
    let (si, ki, ai) = (s as i64, k as i64, a as i64);
    let (leg, j1, j2) = if a <= 4 * d {
        (Leg::Layer2Forward, 2 * si - 1, 2 * si - 1 + ai)
    } else if a <= 8 * d {
        (Leg::Layer1Forward, 6 * si - 4 * ki - 1 + ai, 4 * ki - 2 * si - 1)
    } else if a <= 12 * d - 2 {
        (Leg::Layer2Backward, 4 * ki - 2 * si - 1, 12 * ki - 10 * si - 1 - ai)
    } else {
        (Leg::Layer1Backward, 16 * ki - 14 * si - 3 - ai, 2 * si + 1)
    };
    debug_assert!(j1 >= 1 && j2 >= 1 && j1 <= 4 * ki - 3 && j2 <= 4 * ki - 3);
    Ok(BaseStep { stage: s, offset: a, leg, indices: (j1 as u64, j2 as u64) })
}

/// The edge `e_i` infected at step `i` of the base process, from its closed
/// form (no simulation).
pub fn predicted_base_edge(k: u32, i: u64) -> Result<Edge, ConstructionError> {
    let step = base_step(k, i)?;
    let layout = base_layout(k);
    let (j1, j2) = step.indices;
    Ok(Edge::from_sorted(&[layout.v(1, j1 as u32), layout.v(2, j2 as u32), layout.v(3, 1)]))
}

fn base_layout(k: u32) -> Layout {
    Layout::new(k, 3).expect("k >= 2")
}

/// The apex-free families, indexed `[family][i - 1]`.
pub fn rectangle_families(k: u32) -> Result<[Vec<Vec<Edge>>; 4], ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::KTooSmall(k));
    }
    let l = base_layout(k);
    let triple = |a, b, c| {
        let mut v = [a, b, c];
        v.sort_unstable();
        Edge::from_sorted(&v)
    };
    let mut families: [Vec<Vec<Edge>>; 4] = Default::default();
    for i in 1..k {
        let hi = 4 * k - 2 - 2 * i;
        families[0].push((2 * i - 1..=hi).map(|j| triple(l.v(1, 2 * i - 1), l.v(2, j), l.v(2, j + 1))).collect());
        families[1]
            .push((2 * i - 1..=hi).map(|j| triple(l.v(1, j), l.v(1, j + 1), l.v(2, 4 * k - 1 - 2 * i))).collect());
        families[2]
            .push((2 * i + 1..=hi).map(|j| triple(l.v(1, 4 * k - 1 - 2 * i), l.v(2, j), l.v(2, j + 1))).collect());
        families[3].push((2 * i + 1..=hi).map(|j| triple(l.v(1, j), l.v(1, j + 1), l.v(2, 2 * i + 1))).collect());
    }
    Ok(families)
}

/// The apex edges `v_j^l v_{j+1}^l v_1^3` for consecutive path pairs.
pub fn path_apex_edges(k: u32) -> Result<Vec<Edge>, ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::KTooSmall(k));
    }
    let l = base_layout(k);
    let apex = l.v(3, 1);
    let mut out: Vec<Edge> = (1..=4 * k - 4)
        .flat_map(|j| (1..=2).map(move |layer| (layer, j)))
        .map(|(layer, j)| Edge::from_sorted(&[l.v(layer, j), l.v(layer, j + 1), apex]))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// The 3-uniform base certificate for `k >= 2`.
pub fn build_base(k: u32) -> Result<SequentialCertificate, ConstructionError> {
    let families = rectangle_families(k)?;
    let l = base_layout(k);
    let mut edges = BTreeSet::new();
    for e in families.iter().flatten().flatten() {
        assert!(edges.insert(e.clone()), "rectangle families overlap at {e}");
    }
    for e in path_apex_edges(k)? {
        assert!(edges.insert(e.clone()), "apex edge {e} overlaps the rectangle families");
    }
    let ignition = Edge::from_sorted(&[l.v(1, 1), l.v(2, 1), l.v(3, 1)]);
    edges.insert(ignition.clone());

    let n = 2 * l.width() + 1;
    let graph = Hypergraph::new(n, 3, edges)?;
    let total = base_running_time(k);
    let mut sequence = Vec::with_capacity(total as usize + 1);
    sequence.push(ignition.clone());
    for i in 1..=total {
        sequence.push(predicted_base_edge(k, i)?);
    }
    Ok(SequentialCertificate::new(graph, ignition, sequence, Some(k), total, Some(l.v(3, 1)))?)
}
