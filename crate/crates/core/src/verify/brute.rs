//! Exhaustive maximal running time over every initial graph `G_0 ⊆ K^r_n`.
//!
//! Initial graphs are bitmasks over the `C(n, r)` edges of `K^r_n` in
//! lexicographic order (bit `i` = `i`-th edge). The mask space is split into
//! contiguous ranges, one per worker; each worker scans its range in
//! ascending order and keeps the first mask reaching its local maximum, and
//! the merge takes the largest maximum and then the smallest mask. The
//! result therefore does not depend on the number of workers.

use std::thread;

use thiserror::Error;

use crate::combinatorics::binomial;
use crate::engine::{self, EngineError};
use crate::hypergraph::{Edge, Hypergraph};

pub const DEFAULT_EDGE_CAP: u64 = 24;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BruteForceError {
    #[error("r must be at least 1 and below n (r = {r}, n = {n})")]
    BadParameters { r: usize, n: u32 },
    #[error("K^{r}_{n} has {edges} edges, above the cap of {cap}")]
    CapExceeded { r: usize, n: u32, edges: u64, cap: u64 },
    #[error("engines disagree on initial mask {mask:#x}")]
    EngineMismatch { mask: u64 },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Clone, Copy, Debug)]
pub struct BruteForceOptions {
    pub jobs: usize,
    /// Largest admissible `C(n, r)`; at most 63.
    pub edge_cap: u64,
    /// Also replay every instance with both general engines and require
    /// identical traces and running times.
    pub cross_check: bool,
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        Self { jobs: 1, edge_cap: DEFAULT_EDGE_CAP, cross_check: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceResult {
    pub max_t: u64,
    pub witness: Hypergraph,
    pub witness_mask: u64,
    /// Number of initial graphs examined, `2^{C(n,r)}`.
    pub searched: u64,
}

/// Bit-parallel synchronous simulation on `K^r_n` for tiny `C(n, r)`.
struct MaskSimulator {
    edges: Vec<Edge>,
    /// Facet masks of every `(r+1)`-tuple.
    tuples: Vec<u64>,
}

impl MaskSimulator {
    fn new(n: u32, r: usize) -> Self {
        let edges: Vec<Edge> = Hypergraph::complete(n, r).iter().cloned().collect();
        let index = |e: &Edge| edges.binary_search(e).expect("facet of a tuple is an edge") as u32;
        let tuples = Hypergraph::complete(n, r + 1)
            .iter()
            .map(|t| t.facets().iter().fold(0u64, |acc, f| acc | 1 << index(f)))
            .collect();
        Self { edges, tuples }
    }

    fn running_time(&self, mut infected: u64) -> u64 {
        let mut t = 0;
        loop {
            let mut new = 0u64;
            for &tuple in &self.tuples {
                let missing = tuple & !infected;
                if missing.count_ones() == 1 {
                    new |= missing;
                }
            }
            if new == 0 {
                return t;
            }
            infected |= new;
            t += 1;
        }
    }

    fn graph(&self, n: u32, r: usize, mask: u64) -> Hypergraph {
        let chosen = self.edges.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, e)| e.clone());
        Hypergraph::from_sorted_unique(n, r, chosen.collect())
    }
}

pub fn brute_force_max_time(r: usize, n: u32, jobs: usize) -> Result<BruteForceResult, BruteForceError> {
    brute_force_max_time_with(r, n, &BruteForceOptions { jobs, ..Default::default() })
}

pub fn brute_force_max_time_with(
    r: usize,
    n: u32,
    opts: &BruteForceOptions,
) -> Result<BruteForceResult, BruteForceError> {
    if r == 0 || r as u32 >= n {
        return Err(BruteForceError::BadParameters { r, n });
    }
    let edges = binomial(u64::from(n), r as u64).unwrap_or(u64::MAX);
    let cap = opts.edge_cap.min(63);
    if edges > cap {
        return Err(BruteForceError::CapExceeded { r, n, edges, cap });
    }
    let sim = MaskSimulator::new(n, r);
    let total = 1u64 << edges;
    let jobs = opts.jobs.max(1) as u64;
    let chunk = total.div_ceil(jobs);
    let ranges: Vec<(u64, u64)> =
        (0..jobs).map(|j| (j * chunk, ((j + 1) * chunk).min(total))).filter(|(lo, hi)| lo < hi).collect();

    let scan = |(lo, hi): (u64, u64)| -> Result<(u64, u64), BruteForceError> {
        let mut best = (0u64, lo);
        for mask in lo..hi {
            let t = sim.running_time(mask);
            if opts.cross_check {
                let g = sim.graph(n, r, mask);
                let naive = engine::run_naive(&g, r + 1)?;
                let fast = engine::run_fast(&g, r + 1)?;
                if naive != fast || naive.running_time != t {
                    return Err(BruteForceError::EngineMismatch { mask });
                }
            }
            if t > best.0 {
                best = (t, mask);
            }
        }
        Ok(best)
    };

    let locals: Vec<Result<(u64, u64), BruteForceError>> = if ranges.len() == 1 {
        vec![scan(ranges[0])]
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = ranges.iter().map(|&range| s.spawn(move || scan(range))).collect();
            handles.into_iter().map(|h| h.join().expect("brute-force worker panicked")).collect()
        })
    };

    let mut best: Option<(u64, u64)> = None;
    for local in locals {
        let (t, mask) = local?;
        best = match best {
            Some((bt, bm)) if bt > t || (bt == t && bm <= mask) => Some((bt, bm)),
            _ => Some((t, mask)),
        };
    }
    let (max_t, witness_mask) = best.expect("at least one range");
    Ok(BruteForceResult { max_t, witness: sim.graph(n, r, witness_mask), witness_mask, searched: total })
}
