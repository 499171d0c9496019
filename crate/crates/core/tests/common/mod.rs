#![allow(dead_code)]

use bootperc::constructions::{build_base, glue, lift};
use bootperc::{Edge, SequentialCertificate};

/// The certificate that the last gluing step of `build_full(r, k)` consumes.
pub fn glue_input(r: usize, k: u32) -> SequentialCertificate {
    let mut cert = build_base(k).unwrap();
    for _ in 3..r {
        cert = lift(&glue(&cert, k).unwrap()).unwrap();
    }
    cert
}

/// Expected glued sequence written out from the input sequence with plain
/// id arithmetic: copy `j` on top vertex `v_{2j-1}^r`, odd copies forward,
/// even copies backward, bridges `v_{2j}^r` plus the last or first tail.
pub fn expected_glued_sequence(input: &SequentialCertificate, k: u32) -> Vec<Vec<u32>> {
    let r = input.r() as u32;
    let w = 4 * k - 3;
    let apex = (r - 1) * w;
    let top = |j: u32| (r - 1) * w + j - 1;
    let tails: Vec<Vec<u32>> =
        input.sequence().iter().map(|e| e.vertices().iter().copied().filter(|&v| v != apex).collect()).collect();
    let with = |tail: &[u32], v: u32| {
        let mut e = tail.to_vec();
        e.push(v);
        e.sort_unstable();
        e
    };
    let mut out = Vec::new();
    for j in 1..=2 * k - 1 {
        let order: Vec<&Vec<u32>> = if j % 2 == 1 { tails.iter().collect() } else { tails.iter().rev().collect() };
        out.extend(order.into_iter().map(|t| with(t, top(2 * j - 1))));
        if j < 2 * k - 1 {
            let tail = if j % 2 == 1 { tails.last().unwrap() } else { &tails[0] };
            out.push(with(tail, top(2 * j)));
        }
    }
    out
}

pub fn ids(seq: &[Edge]) -> Vec<Vec<u32>> {
    seq.iter().map(|e| e.vertices().to_vec()).collect()
}

/// `(2k - 1)^{r-2} (8k^2 - 12k + 6) - 2`, evaluated independently.
pub fn closed_form_t(r: u32, k: u64) -> u64 {
    (2 * k - 1).pow(r - 2) * (8 * k * k - 12 * k + 6) - 2
}
