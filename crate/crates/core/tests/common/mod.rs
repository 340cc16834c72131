#![allow(dead_code)]

use oddcycle::{Graph, Rational};
use proptest::prelude::*;

/// Simple graphs on `lo..=hi` vertices, each pair present with probability 1/2.
pub fn arb_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

/// Rationals `a/b` with `0 < a < b ≤ 8`.
pub fn arb_eps() -> impl Strategy<Value = Rational> {
    (2i64..=8).prop_flat_map(|b| (1..b).prop_map(move |a| Rational::new(a, b)))
}

/// Rationals `a/b` with `0 ≤ a ≤ b ≤ 8`.
pub fn arb_unit() -> impl Strategy<Value = Rational> {
    (1i64..=8).prop_flat_map(|b| (0..=b).prop_map(move |a| Rational::new(a, b)))
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Naive density check: every subset of size at least `⌈εn⌉` spans at least
/// `(d/2)|X|²` edges, counted pair by pair.
pub fn naive_is_dense(g: &Graph, eps: &Rational, d: &Rational) -> bool {
    let n = g.n();
    let k = (eps * &Rational::from(n as i64)).ceil();
    for mask in 0u64..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if Rational::from(members.len() as i64) < Rational::from(k.clone()) {
            continue;
        }
        let mut e = 0i64;
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if g.has_edge(u, v) {
                    e += 1;
                }
            }
        }
        let s = members.len() as i64;
        if Rational::from(2 * e) < d * &Rational::from(s * s) {
            return false;
        }
    }
    true
}
