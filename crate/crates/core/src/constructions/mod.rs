//! Slow-percolating extremal instances with their predicted infection
//! sequences.
//!
//! Predicted sequences come from closed forms only; replaying them through
//! an engine is left to [`crate::verify`].

mod base;
mod bounds;
mod certificate;
mod glue;

use thiserror::Error;

pub use base::{
    base_running_time, base_step, build_base, path_apex_edges, predicted_base_edge, rectangle_families, BaseStep, Leg,
};
pub use bounds::{k_of_n, theorem_bounds, witness_for_n, Bounds};
pub use certificate::{CertificateError, SequentialCertificate};
pub use glue::{bridge_gadget, glue, lift};

use crate::hypergraph::{HypergraphError, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("k must be at least 2, got {0}")]
    KTooSmall(u32),
    #[error("r must be at least 3, got {0}")]
    RTooSmall(u32),
    #[error("step {i} outside [1, {max}]")]
    StepOutOfRange { i: u64, max: u64 },
    #[error("certificate was built for k = {certificate}, not {requested}")]
    KMismatch { certificate: u32, requested: u32 },
    #[error("certificate has no k parameter")]
    MissingK,
    #[error("expected a graph on {expected} vertices, found {found}")]
    VertexSetMismatch { expected: u32, found: u32 },
    #[error("expected apex {expected}, found {found:?}")]
    ApexExpected { expected: VertexId, found: Option<VertexId> },
    #[error("certificate still has apex {0}; glue it before lifting")]
    ApexPresent(VertexId),
    #[error("gluing needs T_1 >= 2, got {0}")]
    SequenceTooShort(u64),
    #[error("n = {n} is below the required {min} vertices")]
    TooFewVertices { n: u64, min: u64 },
    #[error("n = {0} does not fit the vertex id type")]
    TooManyVertices(u64),
    #[error(transparent)]
    Graph(#[from] HypergraphError),
    #[error(transparent)]
    Certificate(#[from] CertificateError),
}

/// `(2k - 1)^{r-2} (8k^2 - 12k + 6) - 2`.
pub fn full_running_time(r: usize, k: u32) -> u64 {
    let k = u64::from(k);
    (2 * k - 1).pow(r as u32 - 2) * (8 * k * k - 12 * k + 6) - 2
}

/// Base case, then glue at every uniformity and lift between them. The
/// result is an apex-free certificate on `A_r^*`.
pub fn build_full(r: usize, k: u32) -> Result<SequentialCertificate, ConstructionError> {
    if r < 3 {
        return Err(ConstructionError::RTooSmall(r as u32));
    }
    let mut cert = build_base(k)?;
    for rho in 3..=r {
        cert = glue(&cert, k)?;
        if rho < r {
            cert = lift(&cert)?;
        }
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_predictions() {
        for (r, k, t) in [(3, 2, 40), (4, 2, 124), (5, 2, 376), (3, 3, 208)] {
            assert_eq!(full_running_time(r, k), t);
            let cert = build_full(r, k).unwrap();
            assert_eq!(cert.predicted_t(), t, "r={r} k={k}");
            assert_eq!(cert.r(), r);
            assert_eq!(cert.graph().n(), r as u32 * (4 * k - 3));
            assert_eq!(cert.apex(), None);
        }
    }

    #[test]
    fn glue_recurrence_composes_to_closed_form() {
        for k in 2..=5u32 {
            let mut t = base_running_time(k);
            for r in 3..=7usize {
                t = u64::from(2 * k - 1) * t + 4 * u64::from(k - 1);
                assert_eq!(t, full_running_time(r, k));
            }
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(build_full(2, 2), Err(ConstructionError::RTooSmall(2))));
        assert!(matches!(build_full(3, 1), Err(ConstructionError::KTooSmall(1))));
    }
}
