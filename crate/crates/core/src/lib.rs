//! Clique bootstrap percolation on complete uniform hypergraphs.
//!
//! The `K^r_m`-bootstrap process starts from an infected `r`-graph `G_0` and,
//! at every step, infects each `r`-edge that is the only uninfected facet of
//! some `m`-vertex clique. This crate provides:
//!
//! - [`hypergraph`]: vertex labels, canonical edges and uniform hypergraphs;
//! - [`engine`]: a reference and a fast exact simulator with identical traces;
//! - [`constructions`]: the slow-percolating extremal instances (base case,
//!   gluing, lifting) with their predicted infection sequences and bounds;
//! - [`verify`]: sequentiality checks, local density, clique census and an
//!   exhaustive maximal-running-time search for tiny instances;
//! - [`io`]: the canonical document and trace formats;
//! - [`cli`]: the `bootperc` command line.

pub mod cli;
pub mod combinatorics;
pub mod constructions;
pub mod engine;
pub mod hypergraph;
pub mod io;
pub mod verify;

pub use constructions::{
    build_base, build_full, glue, lift, predicted_base_edge, theorem_bounds, witness_for_n, Bounds, ConstructionError,
    SequentialCertificate,
};
pub use engine::{is_stationary, run_fast, run_naive, step, EngineError, InfectionTrace, RunResult};
pub use hypergraph::{make_edge, Edge, EdgeError, Hypergraph, HypergraphError, Layout, Tuple, VertexId, VertexLabel};
pub use verify::{
    brute_force_max_time, check_density, clique_census, verify_sequential, BruteForceResult, VerificationReport,
};
