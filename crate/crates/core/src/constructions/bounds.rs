use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::{build_full, ConstructionError};
use crate::hypergraph::Hypergraph;

/// Running-time bounds for the `K^r_{r+1}` process on `n` vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Bounds {
    pub r: u32,
    pub n: u64,
    /// `n^r / (2^{r+3} r^r)`.
    pub lower: BigRational,
    /// `C(n, r)`: the process infects at least one edge per step.
    pub upper_exact: BigUint,
    /// `(n e / r)^r`, for display only.
    pub upper_analytic: f64,
    /// `⌊(n/r + 3)/4⌋`, the construction parameter used for `n` vertices.
    pub k_of_n: u64,
}

impl Bounds {
    /// The lower bound is only claimed for `n >= 2r^2`.
    pub fn below_size_threshold(&self) -> bool {
        self.n < 2 * u64::from(self.r) * u64::from(self.r)
    }

    pub fn lower_f64(&self) -> f64 {
        self.lower.to_f64().unwrap_or(f64::INFINITY)
    }

    /// `lower <= t <= upper_exact`.
    pub fn contains(&self, t: u64) -> bool {
        let t = BigInt::from(t);
        self.lower <= BigRational::from_integer(t.clone()) && t <= BigInt::from(self.upper_exact.clone())
    }
}

/// `⌊(n/r + 3)/4⌋` with `n/r` taken exactly.
pub fn k_of_n(r: u32, n: u64) -> u64 {
    let quarter = (BigRational::new(BigInt::from(n), BigInt::from(r)) + BigRational::from_integer(3.into()))
        / BigRational::from_integer(4.into());
    quarter.floor().to_integer().to_u64().expect("nonnegative")
}

pub fn theorem_bounds(r: u32, n: u64) -> Result<Bounds, ConstructionError> {
    if r < 3 {
        return Err(ConstructionError::RTooSmall(r));
    }
    let nr = BigInt::from(n).pow(r);
    let denom = (BigInt::one() << (r + 3)) * BigInt::from(r).pow(r);
    let lower = BigRational::new(nr, denom);
    let upper_exact = binomial_big(n, u64::from(r));
    let upper_analytic = (n as f64 * std::f64::consts::E / f64::from(r)).powi(r as i32);
    Ok(Bounds { r, n, lower, upper_exact, upper_analytic, k_of_n: k_of_n(r, n) })
}

fn binomial_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

/// The full construction for `k = k_of_n(r, n)`, padded with isolated
/// vertices to exactly `n` vertices.
pub fn witness_for_n(r: u32, n: u64) -> Result<Hypergraph, ConstructionError> {
    if r < 3 {
        return Err(ConstructionError::RTooSmall(r));
    }
    let min = 2 * u64::from(r) * u64::from(r);
    if n < min {
        return Err(ConstructionError::TooFewVertices { n, min });
    }
    let k = k_of_n(r, n);
    let needed = u64::from(r) * (4 * k - 3);
    if n < needed {
        return Err(ConstructionError::TooFewVertices { n, min: needed });
    }
    let n32 = u32::try_from(n).map_err(|_| ConstructionError::TooManyVertices(n))?;
    let k32 = u32::try_from(k).map_err(|_| ConstructionError::TooManyVertices(n))?;
    let cert = build_full(r as usize, k32)?;
    Ok(cert.graph().with_vertex_count(n32)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_r3_n18() {
        let b = theorem_bounds(3, 18).unwrap();
        assert_eq!(b.lower, BigRational::new(27.into(), 8.into()));
        assert_eq!(b.lower, BigRational::new(5832.into(), 1728.into()));
        assert_eq!(b.upper_exact, BigUint::from(816u32));
        assert_eq!(b.k_of_n, 2);
        assert!(!b.below_size_threshold());
        assert!((b.lower_f64() - 3.375).abs() < 1e-12);
        assert!((b.upper_analytic - (18.0 * std::f64::consts::E / 3.0).powi(3)).abs() < 1e-6);
    }

    #[test]
    fn small_n_warns_but_succeeds() {
        assert!(theorem_bounds(3, 12).unwrap().below_size_threshold());
    }

    #[test]
    fn k_of_n_examples() {
        assert_eq!(k_of_n(4, 32), 2);
        assert_eq!(k_of_n(3, 18), 2);
        assert_eq!(k_of_n(3, 33), 3);
        assert_eq!(k_of_n(3, 32), 3);
        assert_eq!(k_of_n(3, 26), 2);
    }

    #[test]
    fn rejects_small_r() {
        assert!(matches!(theorem_bounds(2, 10), Err(ConstructionError::RTooSmall(2))));
    }

    #[test]
    fn witness_padding() {
        let w = witness_for_n(3, 18).unwrap();
        assert_eq!(w.n(), 18);
        assert_eq!(w.len(), build_full(3, 2).unwrap().graph().len());
        assert!(matches!(witness_for_n(3, 15), Err(ConstructionError::TooFewVertices { n: 15, min: 18 })));
    }
}
