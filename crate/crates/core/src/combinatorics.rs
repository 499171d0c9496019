//! Binomial coefficients, colexicographic ranking of vertex sets and
//! streaming k-subset enumeration.
//!
//! Ranks are dense `u64` keys used by the engines for membership tests and
//! counters. They are never used to order output: everything user-visible is
//! in lexicographic order.

/// `C(n, k)`, or `None` on `u64` overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// Pascal table of `C(a, b)` for `a <= max_n`, `b <= max_k`.
#[derive(Clone, Debug)]
pub struct Binomials {
    max_k: usize,
    table: Vec<u64>,
}

impl Binomials {
    /// Returns `None` if any entry overflows `u64`.
    pub fn new(max_n: usize, max_k: usize) -> Option<Self> {
        let width = max_k + 1;
        let mut table = vec![0u64; (max_n + 1) * width];
        for a in 0..=max_n {
            table[a * width] = 1;
            for b in 1..=max_k.min(a) {
                let above = table[(a - 1) * width + b];
                let diag = table[(a - 1) * width + b - 1];
                table[a * width + b] = above.checked_add(diag)?;
            }
        }
        Some(Self { max_k, table })
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> u64 {
        if b > self.max_k {
            return 0;
        }
        self.table[a * (self.max_k + 1) + b]
    }

    /// Colex rank of a strictly increasing vertex list.
    #[inline]
    pub fn rank(&self, sorted: &[u32]) -> u64 {
        sorted.iter().enumerate().map(|(i, &c)| self.get(c as usize, i + 1)).sum()
    }

    /// Inverse of [`Binomials::rank`] for sets of `size` elements.
    pub fn unrank(&self, mut rank: u64, size: usize, out: &mut Vec<u32>) {
        out.clear();
        out.resize(size, 0);
        // Largest element first: the biggest c with C(c, i) <= rank.
        let mut hi = self.table.len() / (self.max_k + 1);
        for i in (1..=size).rev() {
            let mut c = hi - 1;
            while self.get(c, i) > rank {
                c -= 1;
            }
            out[i - 1] = c as u32;
            rank -= self.get(c, i);
            hi = c;
        }
    }

    /// Ranks of the facets of `tuple` obtained by dropping position `p`, for
    /// `p = 0..tuple.len()`, written into `out` in that order.
    pub fn facet_ranks(&self, tuple: &[u32], out: &mut Vec<u64>) {
        let m = tuple.len();
        out.clear();
        // prefix[p] = sum_{i<p} C(t_i, i+1); suffix part uses C(t_i, i).
        let mut suffix: u64 = (1..m).map(|i| self.get(tuple[i] as usize, i)).sum();
        let mut prefix = 0u64;
        for p in 0..m {
            out.push(prefix + suffix);
            if p + 1 < m {
                suffix -= self.get(tuple[p + 1] as usize, p + 1);
                prefix += self.get(tuple[p] as usize, p + 1);
            }
        }
    }
}

/// Streaming lexicographic enumeration of `k`-subsets of `0..n`, as index
/// lists.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    started: bool,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Self { n, idx: (0..k).collect(), started: false, done: k > n }
    }

    /// Advances to the next subset; `None` once exhausted.
    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.idx);
        }
        let k = self.idx.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(&self.idx);
            }
        }
        self.done = true;
        None
    }
}

/// Merges two disjoint sorted lists into `out`.
pub(crate) fn merge_sorted(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

/// Vertices of `0..n` not in the sorted list `set`.
pub(crate) fn complement(set: &[u32], n: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(n as usize - set.len());
    let mut it = set.iter().peekable();
    for v in 0..n {
        if it.peek() == Some(&&v) {
            it.next();
        } else {
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn all_subsets(n: usize, k: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut c = Combinations::new(n, k);
        while let Some(s) = c.next() {
            out.push(s.iter().map(|&x| x as u32).collect());
        }
        out
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(15, 4), Some(1365));
        assert_eq!(binomial(18, 3), Some(816));
        assert_eq!(binomial(3, 4), Some(0));
        assert_eq!(binomial(0, 0), Some(1));
        assert_eq!(binomial(200, 100), None);
    }

    #[test]
    fn combinations_are_lexicographic_and_complete() {
        let subsets = all_subsets(6, 3);
        assert_eq!(subsets.len(), 20);
        assert!(subsets.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all_subsets(3, 4).len(), 0);
        assert_eq!(all_subsets(4, 0), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn ranks_are_a_bijection_onto_prefix() {
        let b = Binomials::new(9, 5).unwrap();
        for k in 1..=5 {
            let mut seen: Vec<u64> = all_subsets(9, k).iter().map(|s| b.rank(s)).collect();
            seen.sort_unstable();
            let expected: Vec<u64> = (0..binomial(9, k as u64).unwrap()).collect();
            assert_eq!(seen, expected);
        }
    }

    #[test]
    fn overflowing_table_is_rejected() {
        assert!(Binomials::new(100, 60).is_none());
        assert!(Binomials::new(100, 5).is_some());
    }

    proptest! {
        #[test]
        fn unrank_inverts_rank(set in proptest::collection::btree_set(0u32..40, 1..7)) {
            let b = Binomials::new(40, 7).unwrap();
            let v: Vec<u32> = set.into_iter().collect();
            let mut out = Vec::new();
            b.unrank(b.rank(&v), v.len(), &mut out);
            prop_assert_eq!(out, v);
        }

        #[test]
        fn facet_ranks_match_direct(set in proptest::collection::btree_set(0u32..30, 2..8)) {
            let b = Binomials::new(30, 8).unwrap();
            let t: Vec<u32> = set.into_iter().collect();
            let mut fast = Vec::new();
            b.facet_ranks(&t, &mut fast);
            let direct: Vec<u64> = (0..t.len())
                .map(|p| {
                    let f: Vec<u32> = t.iter().enumerate().filter(|&(i, _)| i != p).map(|(_, &x)| x).collect();
                    b.rank(&f)
                })
                .collect();
            prop_assert_eq!(fast, direct);
        }
    }
}
