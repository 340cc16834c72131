//! Exact homomorphism counts of paths and cycles.
//!
//! Everything is computed from walk tables: `q_k(x, y)` is the number of
//! vertex sequences `(a_0, …, a_k)` with `a_0 = x`, `a_k = y` and every
//! consecutive pair adjacent. Tables are built by repeatedly multiplying by
//! the adjacency relation, so every intermediate table is available.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{serialize_biguint, Rational};

/// Default budget for [`brute_force_cycle_homs`]: `8^9`.
pub const DEFAULT_BRUTE_FORCE_BUDGET: u128 = 1 << 27;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkTable {
    n: usize,
    edges: usize,
    q: Vec<BigUint>,
}

impl WalkTable {
    pub fn identity(n: usize) -> Self {
        let mut q = vec![BigUint::zero(); n * n];
        for x in 0..n {
            q[x * n + x] = BigUint::one();
        }
        WalkTable { n, edges: 0, q }
    }

    /// Number of edges in each counted walk.
    pub fn walk_length(&self) -> usize {
        self.edges
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> &BigUint {
        &self.q[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[BigUint] {
        &self.q[x * self.n..(x + 1) * self.n]
    }

    pub fn row_sum(&self, x: usize) -> BigUint {
        self.row(x).iter().sum()
    }

    pub fn total(&self) -> BigUint {
        self.q.iter().sum()
    }

    pub fn trace(&self) -> BigUint {
        (0..self.n).map(|x| self.get(x, x)).sum()
    }

    pub fn max_entry(&self) -> BigUint {
        self.q.iter().max().cloned().unwrap_or_default()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|x| (x + 1..self.n).all(|y| self.get(x, y) == self.get(y, x)))
    }

    /// Extends every walk by one edge: `q'(x, y) = Σ_{z ~ y} q(x, z)`.
    pub fn extend(&self, g: &Graph) -> WalkTable {
        let n = self.n;
        assert_eq!(n, g.n());
        let mut next = vec![BigUint::zero(); n * n];
        if n > 0 {
            next.par_chunks_mut(n).enumerate().for_each(|(x, out)| {
                let cur = self.row(x);
                for (y, cell) in out.iter_mut().enumerate() {
                    for z in g.neighbors(y) {
                        *cell += &cur[z];
                    }
                }
            });
        }
        WalkTable {
            n,
            edges: self.edges + 1,
            q: next,
        }
    }

    /// Matrix product; the result counts walks of the summed length.
    pub fn compose(&self, other: &WalkTable) -> WalkTable {
        let n = self.n;
        assert_eq!(n, other.n);
        let mut out = vec![BigUint::zero(); n * n];
        if n > 0 {
            out.par_chunks_mut(n).enumerate().for_each(|(x, row)| {
                for z in 0..n {
                    let a = self.get(x, z);
                    if a.is_zero() {
                        continue;
                    }
                    for (y, cell) in row.iter_mut().enumerate() {
                        let b = other.get(z, y);
                        if !b.is_zero() {
                            *cell += a * b;
                        }
                    }
                }
            });
        }
        WalkTable {
            n,
            edges: self.edges + other.edges,
            q: out,
        }
    }
}

/// Tables for walk lengths `0..=k`, each built from its predecessor.
pub fn walk_tables_upto(g: &Graph, k: usize) -> Vec<WalkTable> {
    let mut tables = Vec::with_capacity(k + 1);
    tables.push(WalkTable::identity(g.n()));
    for i in 0..k {
        let next = tables[i].extend(g);
        tables.push(next);
    }
    tables
}

pub fn walk_table(g: &Graph, k: usize) -> WalkTable {
    let mut t = WalkTable::identity(g.n());
    for _ in 0..k {
        t = t.extend(g);
    }
    t
}

/// `C_r(G)`: closed walks of length `r`, i.e. the trace of the `r`-edge table.
pub fn count_cycle_homs(g: &Graph, r: usize) -> BigUint {
    walk_table(g, r).trace()
}

/// `C_r(G)` for odd `r = 2m + 1` via
/// `Σ_x Σ_{(y, z) adjacent} q_m(x, y) · q_m(x, z)`.
pub fn cycle_homs_via_decomposition(g: &Graph, r: usize) -> Result<BigUint> {
    let m = half_length(r)?;
    let q = walk_table(g, m);
    Ok(decomposition_sum(g, &q, 0..g.n()))
}

/// The decomposition sum restricted to the walk origins in `xs`.
pub(crate) fn decomposition_sum(
    g: &Graph,
    q: &WalkTable,
    xs: impl Iterator<Item = usize>,
) -> BigUint {
    let xs: Vec<usize> = xs.collect();
    xs.par_iter()
        .map(|&x| {
            let row = q.row(x);
            let mut acc = BigUint::zero();
            for y in 0..g.n() {
                if row[y].is_zero() {
                    continue;
                }
                for z in g.neighbors(y) {
                    acc += &row[y] * &row[z];
                }
            }
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum()
}

/// `m` with `r = 2m + 1`, rejecting even or short cycle lengths.
pub fn half_length(r: usize) -> Result<usize> {
    if r < 3 {
        return Err(Error::InvalidCycleLength {
            r,
            reason: "must be at least 3",
        });
    }
    if r.is_multiple_of(2) {
        return Err(Error::InvalidCycleLength {
            r,
            reason: "must be odd",
        });
    }
    Ok((r - 1) / 2)
}

/// Homomorphisms of the `k`-edge path: the sum of all entries of `q_k`.
pub fn count_path_homs(g: &Graph, k: usize) -> BigUint {
    walk_table(g, k).total()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomCountReport {
    #[serde(serialize_with = "serialize_biguint")]
    pub count: BigUint,
    pub bound: Rational,
    pub holds: bool,
}

/// Compares the `k`-edge path count against `d^k n^{k+1}` with `d = 2m/n²`.
pub fn blakley_roy_check(g: &Graph, k: usize) -> Result<HomCountReport> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "path length k must be at least 1".into(),
        ));
    }
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidParameter(
            "graph must have at least one vertex".into(),
        ));
    }
    let d = Rational::new(2 * g.m() as u64, (n * n) as u64);
    let bound = d.pow(k as u32)
        * Rational::from_integer(num_traits::pow(num_bigint::BigInt::from(n), k + 1));
    let count = count_path_homs(g, k);
    let holds = Rational::from_biguint(&count) >= bound;
    Ok(HomCountReport {
        count,
        bound,
        holds,
    })
}

/// Independent oracle: exhaustive backtracking over `V^r`.
///
/// Refuses when `n^r` exceeds `budget`.
pub fn brute_force_cycle_homs(g: &Graph, r: usize, budget: u128) -> Result<BigUint> {
    if r < 2 {
        return Err(Error::InvalidCycleLength {
            r,
            reason: "must be at least 2",
        });
    }
    let n = g.n();
    let cost = (n as u128).checked_pow(r as u32);
    if cost.is_none_or(|c| c > budget) {
        return Err(Error::ResourceGuard(format!(
            "brute force over {n}^{r} sequences exceeds budget {budget}"
        )));
    }

    fn extend(g: &Graph, seq: &mut Vec<usize>, r: usize) -> u64 {
        let last = *seq.last().unwrap();
        if seq.len() == r {
            return g.has_edge(last, seq[0]) as u64;
        }
        let mut total = 0;
        for next in 0..g.n() {
            if g.has_edge(last, next) {
                seq.push(next);
                total += extend(g, seq, r);
                seq.pop();
            }
        }
        total
    }

    let mut total = 0u64;
    let mut seq = Vec::with_capacity(r);
    for start in 0..n {
        seq.push(start);
        total += extend(g, &mut seq, r);
        seq.pop();
    }
    Ok(BigUint::from(total))
}
