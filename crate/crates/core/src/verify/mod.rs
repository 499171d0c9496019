//! Computational checks of sequential certificates, local density and
//! maximal running times.

mod brute;

use std::collections::BTreeSet;
use std::fmt;

use crate::combinatorics::binomial;
use crate::constructions::SequentialCertificate;
use crate::engine::{self, EngineError, InfectionTrace, DEFAULT_MAX_TUPLES};
use crate::hypergraph::{supersets, Edge, Hypergraph, Tuple};

pub use brute::{
    brute_force_max_time, brute_force_max_time_with, BruteForceError, BruteForceOptions, BruteForceResult,
    DEFAULT_EDGE_CAP,
};

/// Which of the three sequentiality properties a divergence belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    /// `H` infects exactly `e_i` at step `i`.
    Forward,
    /// `H ∖ {e_0}` infects nothing.
    Stationary,
    /// `(H ∪ {e_T}) ∖ {e_0}` infects exactly `e_{T-i}` at step `i`.
    Reverse,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Forward => "i",
            Property::Stationary => "ii",
            Property::Reverse => "iii",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence {
    pub property: Property,
    pub step: u64,
    pub expected: Vec<Edge>,
    pub actual: Vec<Edge>,
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Edge]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        write!(
            f,
            "property ({}) diverges at step {}: expected {{{}}}, got {{{}}}",
            self.property,
            self.step,
            list(&self.expected),
            list(&self.actual)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub property_i: bool,
    pub property_ii: bool,
    pub property_iii: bool,
    /// The earliest mismatch, checking (i), (ii), (iii) in that order.
    pub first_divergence: Option<Divergence>,
    pub measured_t_forward: u64,
    pub measured_t_reverse: u64,
    /// Whether the reference engine reproduced the forward trace; `None`
    /// when the instance was too large to replay it.
    pub engines_agree: Option<bool>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.property_i && self.property_ii && self.property_iii
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Replay property (i) with the reference engine when `C(n, r+1)` is at
    /// most this.
    pub naive_limit: u64,
    pub max_tuples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { naive_limit: 1_000_000, max_tuples: DEFAULT_MAX_TUPLES }
    }
}

pub fn verify_sequential(cert: &SequentialCertificate) -> Result<VerificationReport, EngineError> {
    verify_sequential_with(cert, &VerifyOptions::default())
}

pub fn verify_sequential_with(
    cert: &SequentialCertificate,
    opts: &VerifyOptions,
) -> Result<VerificationReport, EngineError> {
    let m = cert.r() + 1;
    let seq = cert.sequence();

    let forward = engine::run_fast_capped(cert.graph(), m, opts.max_tuples)?;
    let mut div_i = compare(Property::Forward, &forward.trace, seq[1..].iter());

    let engines_agree = match binomial(u64::from(cert.graph().n()), m as u64) {
        Some(c) if c <= opts.naive_limit => Some(engine::run_naive(cert.graph(), m)? == forward),
        _ => None,
    };
    if engines_agree == Some(false) && div_i.is_none() {
        // The fast trace matched the claim but the reference engine did not.
        let naive = engine::run_naive(cert.graph(), m)?;
        div_i = compare(Property::Forward, &naive.trace, seq[1..].iter());
    }
    let property_i = div_i.is_none() && engines_agree != Some(false);

    let stationary = engine::step(&cert.without_ignition(), m)?;
    let div_ii = (!stationary.is_empty()).then(|| Divergence {
        property: Property::Stationary,
        step: 1,
        expected: Vec::new(),
        actual: stationary.into_iter().collect(),
    });

    let reverse = engine::run_fast_capped(&cert.reversed_start(), m, opts.max_tuples)?;
    let div_iii = compare(Property::Reverse, &reverse.trace, seq[..seq.len() - 1].iter().rev());

    Ok(VerificationReport {
        property_i,
        property_ii: div_ii.is_none(),
        property_iii: div_iii.is_none(),
        first_divergence: div_i.or(div_ii).or(div_iii),
        measured_t_forward: forward.running_time,
        measured_t_reverse: reverse.running_time,
        engines_agree,
    })
}

/// First step where the trace is not exactly the singleton of the expected
/// edge (or nonempty past the end of the expectation).
fn compare<'a>(
    property: Property,
    trace: &InfectionTrace,
    expected: impl Iterator<Item = &'a Edge>,
) -> Option<Divergence> {
    let expected: Vec<&Edge> = expected.collect();
    let steps = expected.len().max(trace.len());
    (1..=steps as u64).find_map(|step| {
        let want: Vec<Edge> = expected.get(step as usize - 1).map(|e| vec![(*e).clone()]).unwrap_or_default();
        let got = trace.at(step);
        (want != got).then(|| Divergence { property, step, expected: want, actual: got.to_vec() })
    })
}

/// Densest `(r+1)`-tuple: the maximum number of edges of `g` spanned by an
/// `(r+1)`-vertex set, with the lexicographically first tuple achieving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Density {
    pub max_edges: usize,
    pub witness: Option<Tuple>,
}

pub fn check_density(g: &Hypergraph) -> Density {
    let mut best = Density { max_edges: 0, witness: None };
    for e in g.iter() {
        for t in supersets(e, g.n(), g.r() + 1).expect("r + 1 > r") {
            let count = t.facets().iter().filter(|f| g.contains(f)).count();
            let better =
                count > best.max_edges || (count == best.max_edges && best.witness.as_ref().is_some_and(|w| t < *w));
            if better {
                best = Density { max_edges: count, witness: Some(t) };
            }
        }
    }
    best
}

/// All `(r+1)`-tuples whose every facet is an edge of `g`.
pub fn clique_census(g: &Hypergraph) -> BTreeSet<Tuple> {
    let mut out = BTreeSet::new();
    for e in g.iter() {
        for t in supersets(e, g.n(), g.r() + 1).expect("r + 1 > r") {
            if t.facets().iter().all(|f| g.contains(f)) {
                out.insert(t);
            }
        }
    }
    out
}
