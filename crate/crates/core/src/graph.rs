//! Simple undirected graphs stored as one adjacency bit-row per vertex.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// A subset of `{0, …, n-1}`.
///
/// Ordered by size first, then lexicographically on the sorted member list,
/// which is the tie-break order used for every reported witness.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    bits: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            bits: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_members(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(n);
        for v in members {
            if v >= n {
                return Err(Error::InvalidParameter(format!(
                    "vertex {v} outside universe of size {n}"
                )));
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Builds a set from the low `n` bits of `mask` (requires `n <= 64`).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= WORD);
        let mut s = Self::empty(n);
        if n > 0 {
            let keep = if n == WORD { u64::MAX } else { (1u64 << n) - 1 };
            s.bits[0] = mask & keep;
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.n);
        self.bits[v / WORD] |= 1 << (v % WORD);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.bits[v / WORD] &= !(1 << (v % WORD));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.bits[v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD + b)
            })
        })
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.bits
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| {
                // Equal sizes: the set holding the lowest differing vertex
                // has the lexicographically smaller member list.
                for (a, b) in self.bits.iter().zip(&other.bits) {
                    let diff = a ^ b;
                    if diff != 0 {
                        let low = diff & diff.wrapping_neg();
                        return if a & low != 0 {
                            Ordering::Less
                        } else {
                            Ordering::Greater
                        };
                    }
                }
                Ordering::Equal
            })
            .then_with(|| self.n.cmp(&other.n))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// A simple undirected graph on vertices `0..n`.
///
/// Invariants, checked on every construction path: the adjacency relation is
/// symmetric, has no loops, and `m` is the number of unordered adjacent pairs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    m: usize,
    stride: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let stride = words_for(n);
        Graph {
            n,
            m: 0,
            stride,
            adj: vec![0; n * stride],
        }
    }

    /// Builds a graph from unordered pairs; rejects loops, out-of-range
    /// endpoints and duplicates (in either orientation).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (i, &(u, v)) in edges.iter().enumerate() {
            g.try_add_edge(u, v, i + 1)?;
        }
        g.check_invariants();
        Ok(g)
    }

    pub(crate) fn try_add_edge(&mut self, u: usize, v: usize, line: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange {
                    line,
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::Loop { line, vertex: u });
        }
        if self.has_edge(u, v) {
            return Err(Error::DuplicateEdge { line, u, v });
        }
        self.set(u, v);
        self.set(v, u);
        self.m += 1;
        Ok(())
    }

    /// Adds `uv` if absent; used by generators whose pairs are known valid.
    pub(crate) fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        if !self.has_edge(u, v) {
            self.set(u, v);
            self.set(v, u);
            self.m += 1;
        }
    }

    /// Returns a copy with `uv` added (no-op if already present).
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        let mut g = self.clone();
        if u >= self.n || v >= self.n || u == v {
            return Err(Error::InvalidParameter(format!("cannot add edge {u} {v}")));
        }
        g.add_edge_unchecked(u, v);
        Ok(g)
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.adj[u * self.stride + v / WORD] |= 1 << (v % WORD);
    }

    pub(crate) fn check_invariants(&self) {
        let mut twice_m = 0usize;
        for u in 0..self.n {
            assert!(!self.has_edge(u, u), "loop at {u}");
            for v in self.neighbors(u) {
                assert!(self.has_edge(v, u), "asymmetric pair {u} {v}");
                twice_m += 1;
            }
        }
        assert_eq!(twice_m, 2 * self.m, "edge count out of sync");
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.stride + v / WORD] >> (v % WORD) & 1 == 1
    }

    #[inline]
    pub(crate) fn row(&self, u: usize) -> &[u64] {
        &self.adj[u * self.stride..(u + 1) * self.stride]
    }

    /// First adjacency word of `u`; the full row when `n <= 64`.
    #[inline]
    pub(crate) fn row_mask(&self, u: usize) -> u64 {
        if self.stride == 0 {
            0
        } else {
            self.adj[u * self.stride]
        }
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD + b)
            })
        })
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Number of neighbours of `u` inside `x`.
    #[inline]
    pub fn degree_into(&self, u: usize, x: &VertexSet) -> usize {
        self.row(u)
            .iter()
            .zip(x.words())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `e(X)`: the number of edges with both endpoints in `x`.
    pub fn induced_edge_count(&self, x: &VertexSet) -> u64 {
        debug_assert_eq!(x.universe(), self.n);
        let twice: usize = x.iter().map(|u| self.degree_into(u, x)).sum();
        (twice / 2) as u64
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        stack.push(v);
                    } else if side[v] == side[u] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.m)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}
