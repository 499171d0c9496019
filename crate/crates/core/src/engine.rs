//! Exact simulation of the `K^r_m`-bootstrap process.
//!
//! At step `i`, every `r`-edge that is the unique uninfected facet of some
//! `m`-vertex tuple becomes infected. Two engines produce identical traces:
//!
//! - [`run_naive`] recomputes [`step`] on the whole infected graph until a
//!   fixpoint;
//! - [`run_fast`] finalizes edges in infection-step order from a priority
//!   queue and keeps one lazily allocated counter per tuple that meets an
//!   infected edge.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap, HashSet};

use thiserror::Error;

use crate::combinatorics::{binomial, complement, merge_sorted, Binomials, Combinations};
use crate::hypergraph::{Edge, Hypergraph};

/// Default cap on live tuple counters for [`run_fast`].
pub const DEFAULT_MAX_TUPLES: usize = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("clique size m = {m} must exceed the uniformity r = {r}")]
    CliqueTooSmall { m: usize, r: usize },
    #[error("C({n}, {m}) does not fit in 64 bits")]
    TooLarge { n: u32, m: usize },
    #[error("more than {cap} live tuple counters")]
    TupleCapExceeded { cap: usize },
}

/// Which engine to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EngineKind {
    Naive,
    Fast,
}

/// Edges newly infected at steps `1..=T`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InfectionTrace {
    steps: Vec<Vec<Edge>>,
}

impl InfectionTrace {
    /// Each step must be nonempty and lexicographically sorted.
    pub fn from_steps(steps: Vec<Vec<Edge>>) -> Self {
        debug_assert!(steps.iter().all(|s| !s.is_empty() && s.windows(2).all(|w| w[0] < w[1])));
        Self { steps }
    }

    pub fn steps(&self) -> &[Vec<Edge>] {
        &self.steps
    }

    /// Number of steps, i.e. the running time.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Edges infected at `step` (1-based); empty outside `1..=T`.
    pub fn at(&self, step: u64) -> &[Edge] {
        if step == 0 {
            return &[];
        }
        self.steps.get(step as usize - 1).map_or(&[], Vec::as_slice)
    }

    /// `(step, edge)` pairs in step order, lexicographic within a step.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &Edge)> + '_ {
        self.steps.iter().enumerate().flat_map(|(i, s)| s.iter().map(move |e| (i as u64 + 1, e)))
    }

    pub fn edge_steps(&self) -> BTreeMap<Edge, u64> {
        self.iter().map(|(s, e)| (e.clone(), s)).collect()
    }

    pub fn infected_count(&self) -> usize {
        self.steps.iter().map(Vec::len).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult {
    /// `G_0` together with every traced edge.
    pub final_graph: Hypergraph,
    pub trace: InfectionTrace,
    /// The last step that infected anything; 0 if `G_0` is stationary.
    pub running_time: u64,
}

/// Ranking and facet bookkeeping for one `(n, r, m)`.
struct Context {
    n: u32,
    r: usize,
    m: usize,
    binom: Binomials,
    facets_per_tuple: u64,
    // Position lists of the facets when m > r + 1.
    facet_positions: Vec<Vec<usize>>,
}

impl Context {
    fn new(g: &Hypergraph, m: usize) -> Result<Self, EngineError> {
        let (n, r) = (g.n(), g.r());
        if m <= r {
            return Err(EngineError::CliqueTooSmall { m, r });
        }
        let too_large = EngineError::TooLarge { n, m };
        binomial(u64::from(n), m as u64).ok_or(too_large.clone())?;
        let binom = Binomials::new(n as usize, m).ok_or(too_large.clone())?;
        let facets_per_tuple = binomial(m as u64, r as u64).filter(|&f| f < u64::from(u32::MAX)).ok_or(too_large)?;
        let mut facet_positions = Vec::new();
        if m > r + 1 {
            let mut c = Combinations::new(m, r);
            while let Some(idx) = c.next() {
                facet_positions.push(idx.to_vec());
            }
        }
        Ok(Self { n, r, m, binom, facets_per_tuple, facet_positions })
    }

    fn rank(&self, vertices: &[u32]) -> u64 {
        self.binom.rank(vertices)
    }

    /// Ranks of all facets of `tuple`; facet `j` is [`Context::facet`]`(tuple, j)`.
    fn facet_ranks(&self, tuple: &[u32], out: &mut Vec<u64>, scratch: &mut Vec<u32>) {
        if self.m == self.r + 1 {
            self.binom.facet_ranks(tuple, out);
        } else {
            out.clear();
            for pos in &self.facet_positions {
                scratch.clear();
                scratch.extend(pos.iter().map(|&p| tuple[p]));
                out.push(self.binom.rank(scratch));
            }
        }
    }

    fn facet(&self, tuple: &[u32], j: usize) -> Edge {
        let vertices: Vec<u32> = if self.m == self.r + 1 {
            tuple.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &v)| v).collect()
        } else {
            self.facet_positions[j].iter().map(|&p| tuple[p]).collect()
        };
        Edge::from_sorted(&vertices)
    }

    /// Calls `f` with every `m`-tuple containing `edge`.
    fn for_each_tuple<F: FnMut(&[u32])>(&self, edge: &[u32], mut f: F) {
        let rest = complement(edge, self.n);
        let mut extra = Vec::with_capacity(self.m - self.r);
        let mut tuple = Vec::with_capacity(self.m);
        let mut c = Combinations::new(rest.len(), self.m - self.r);
        while let Some(idx) = c.next() {
            extra.clear();
            extra.extend(idx.iter().map(|&i| rest[i]));
            merge_sorted(edge, &extra, &mut tuple);
            f(&tuple);
        }
    }
}

/// Membership over edge ranks: a bitmap when `C(n, r)` is small enough.
enum RankSet {
    Dense(Vec<u64>),
    Sparse(HashSet<u64>),
}

impl RankSet {
    const DENSE_LIMIT: u64 = 1 << 28;

    fn new(universe: u64) -> Self {
        if universe <= Self::DENSE_LIMIT {
            RankSet::Dense(vec![0; universe.div_ceil(64) as usize])
        } else {
            RankSet::Sparse(HashSet::new())
        }
    }

    fn insert(&mut self, rank: u64) {
        match self {
            RankSet::Dense(bits) => bits[(rank / 64) as usize] |= 1 << (rank % 64),
            RankSet::Sparse(set) => {
                set.insert(rank);
            }
        }
    }

    fn contains(&self, rank: u64) -> bool {
        match self {
            RankSet::Dense(bits) => bits[(rank / 64) as usize] >> (rank % 64) & 1 == 1,
            RankSet::Sparse(set) => set.contains(&rank),
        }
    }
}

fn naive_step(ctx: &Context, edges: &[Edge], present: &RankSet) -> BTreeSet<Edge> {
    let mut found = BTreeSet::new();
    let mut ranks = Vec::new();
    let mut scratch = Vec::new();
    for g in edges {
        ctx.for_each_tuple(g.vertices(), |tuple| {
            ctx.facet_ranks(tuple, &mut ranks, &mut scratch);
            let mut missing = None;
            for (j, &fr) in ranks.iter().enumerate() {
                if !present.contains(fr) {
                    if missing.is_some() {
                        return;
                    }
                    missing = Some(j);
                }
            }
            if let Some(j) = missing {
                found.insert(ctx.facet(tuple, j));
            }
        });
    }
    found
}

fn present_set(ctx: &Context, g: &Hypergraph) -> RankSet {
    let universe = ctx.binom.get(ctx.n as usize, ctx.r);
    let mut present = RankSet::new(universe);
    for e in g.iter() {
        present.insert(ctx.rank(e.vertices()));
    }
    present
}

/// One synchronous update: the edges not in `g` that are the only missing
/// facet of some `m`-vertex tuple. `g` is not modified.
pub fn step(g: &Hypergraph, m: usize) -> Result<BTreeSet<Edge>, EngineError> {
    let ctx = Context::new(g, m)?;
    let present = present_set(&ctx, g);
    let edges: Vec<Edge> = g.iter().cloned().collect();
    Ok(naive_step(&ctx, &edges, &present))
}

/// `true` iff [`step`] infects nothing.
pub fn is_stationary(g: &Hypergraph, m: usize) -> Result<bool, EngineError> {
    Ok(step(g, m)?.is_empty())
}

/// Reference engine: iterate [`step`] until nothing changes.
pub fn run_naive(g0: &Hypergraph, m: usize) -> Result<RunResult, EngineError> {
    let ctx = Context::new(g0, m)?;
    let mut present = present_set(&ctx, g0);
    let mut edges: Vec<Edge> = g0.iter().cloned().collect();
    let mut steps = Vec::new();
    loop {
        let new = naive_step(&ctx, &edges, &present);
        if new.is_empty() {
            break;
        }
        for e in &new {
            present.insert(ctx.rank(e.vertices()));
        }
        edges.extend(new.iter().cloned());
        steps.push(new.into_iter().collect::<Vec<_>>());
    }
    Ok(finish(g0, edges, steps))
}

/// Fast engine with the default counter cap.
pub fn run_fast(g0: &Hypergraph, m: usize) -> Result<RunResult, EngineError> {
    run_fast_capped(g0, m, DEFAULT_MAX_TUPLES)
}

/// Fast engine; fails once more than `max_tuples` counters are live.
///
/// An edge's infection step is one more than the smallest, over the tuples
/// containing it, of the latest step among the tuple's other facets. Edges
/// are finalized in nondecreasing step order, so when a tuple's counter
/// reaches "all facets but one" upon finalizing a facet at step `s`, the
/// remaining facet is a candidate for step `s + 1`, and its first dequeue
/// fixes its step.
pub fn run_fast_capped(g0: &Hypergraph, m: usize, max_tuples: usize) -> Result<RunResult, EngineError> {
    let ctx = Context::new(g0, m)?;
    let threshold = ctx.facets_per_tuple as u32 - 1;
    let mut finalized: HashSet<u64> = HashSet::with_capacity(g0.len());
    let mut counters: HashMap<u64, u32> = HashMap::new();
    let mut queue: BinaryHeap<Reverse<(u64, u64)>> = g0.iter().map(|e| Reverse((0, ctx.rank(e.vertices())))).collect();
    let mut infected: Vec<(u64, Edge)> = Vec::new();
    let mut vertices = Vec::with_capacity(ctx.r);
    let mut ranks = Vec::new();
    let mut scratch = Vec::new();

    while let Some(Reverse((s, edge_rank))) = queue.pop() {
        if !finalized.insert(edge_rank) {
            continue;
        }
        ctx.binom.unrank(edge_rank, ctx.r, &mut vertices);
        if s > 0 {
            infected.push((s, Edge::from_sorted(&vertices)));
        }
        let mut overflow = false;
        ctx.for_each_tuple(&vertices, |tuple| {
            let count = counters.entry(ctx.rank(tuple)).or_insert(0);
            *count += 1;
            if *count == threshold {
                ctx.facet_ranks(tuple, &mut ranks, &mut scratch);
                let mut missing = ranks.iter().filter(|fr| !finalized.contains(fr));
                let last = *missing.next().expect("one facet left");
                debug_assert!(missing.next().is_none());
                queue.push(Reverse((s + 1, last)));
            }
            overflow |= counters.len() > max_tuples;
        });
        if overflow {
            return Err(EngineError::TupleCapExceeded { cap: max_tuples });
        }
    }

    infected.sort_unstable();
    let mut steps: Vec<Vec<Edge>> = Vec::new();
    let mut edges: Vec<Edge> = g0.iter().cloned().collect();
    for (s, e) in infected {
        if steps.len() < s as usize {
            debug_assert_eq!(steps.len() + 1, s as usize, "steps must be contiguous");
            steps.push(Vec::new());
        }
        steps[s as usize - 1].push(e.clone());
        edges.push(e);
    }
    Ok(finish(g0, edges, steps))
}

/// Runs the selected engine.
pub fn run(kind: EngineKind, g0: &Hypergraph, m: usize, max_tuples: usize) -> Result<RunResult, EngineError> {
    match kind {
        EngineKind::Naive => run_naive(g0, m),
        EngineKind::Fast => run_fast_capped(g0, m, max_tuples),
    }
}

fn finish(g0: &Hypergraph, edges: Vec<Edge>, steps: Vec<Vec<Edge>>) -> RunResult {
    let running_time = steps.len() as u64;
    RunResult {
        final_graph: Hypergraph::from_valid(g0.n(), g0.r(), edges),
        trace: InfectionTrace::from_steps(steps),
        running_time,
    }
}
