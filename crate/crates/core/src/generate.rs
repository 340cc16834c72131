//! Deterministic graph generators.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{small_parts, Rational};

/// Erdős–Rényi `G(n, p)` with an exact rational `p`.
///
/// Pairs `(u, v)`, `u < v`, are visited in lexicographic order and each is an
/// edge iff a uniform draw from `0..denom(p)` falls below `numer(p)`.
pub fn gen_random(n: usize, p: &Rational, seed: u64) -> Result<Graph> {
    if !p.in_unit_interval() {
        return Err(Error::InvalidProbability(p.to_string()));
    }
    let (num, den) = small_parts(p, "p").map_err(|_| Error::InvalidProbability(p.to_string()))?;
    let (num, den) = (num as u64, den as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_range(0..den) < num {
                g.add_edge_unchecked(u, v);
            }
        }
    }
    g.check_invariants();
    Ok(g)
}

/// Named graph families. Vertices are labelled in blocks: part `i` (or clique
/// `i`, or the copies of base vertex `i`) occupies a contiguous index range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Complete { n: usize },
    CompleteMultipartite { parts: Vec<usize> },
    CliqueUnion { k: usize, s: usize },
    BlowUp { base: Graph, t: usize },
    Random { n: usize, p: Rational, seed: u64 },
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::CompleteMultipartite { .. } => "multipartite",
            FamilySpec::CliqueUnion { .. } => "clique-union",
            FamilySpec::BlowUp { .. } => "blow-up",
            FamilySpec::Random { .. } => "random",
        }
    }

    /// Parameters as a comma-free `key=value;…` string.
    pub fn params(&self) -> String {
        match self {
            FamilySpec::Complete { n } => format!("n={n}"),
            FamilySpec::CompleteMultipartite { parts } => {
                let parts: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                format!("parts={}", parts.join("+"))
            }
            FamilySpec::CliqueUnion { k, s } => format!("k={k};s={s}"),
            FamilySpec::BlowUp { base, t } => {
                format!("base_n={};base_m={};t={t}", base.n(), base.m())
            }
            FamilySpec::Random { n, p, seed } => format!("n={n};p={p};seed={seed}"),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.params())
    }
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge_unchecked(u, v);
        }
    }
    g
}

pub fn gen_family(spec: &FamilySpec) -> Result<Graph> {
    let invalid = |msg: String| Err(Error::InvalidParameter(msg));
    let g = match spec {
        FamilySpec::Complete { n } => complete(*n),
        FamilySpec::CompleteMultipartite { parts } => {
            if parts.is_empty() || parts.contains(&0) {
                return invalid(format!(
                    "multipartite parts must be positive, got {parts:?}"
                ));
            }
            let n: usize = parts.iter().sum();
            let mut part_of = Vec::with_capacity(n);
            for (i, &size) in parts.iter().enumerate() {
                part_of.extend(std::iter::repeat_n(i, size));
            }
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if part_of[u] != part_of[v] {
                        g.add_edge_unchecked(u, v);
                    }
                }
            }
            g
        }
        FamilySpec::CliqueUnion { k, s } => {
            if *k == 0 || *s == 0 {
                return invalid(format!("clique-union needs k, s >= 1, got k={k} s={s}"));
            }
            let mut g = Graph::empty(k * s);
            for c in 0..*k {
                let base = c * s;
                for u in 0..*s {
                    for v in u + 1..*s {
                        g.add_edge_unchecked(base + u, base + v);
                    }
                }
            }
            g
        }
        FamilySpec::BlowUp { base, t } => {
            if *t == 0 {
                return invalid("blow-up needs t >= 1".into());
            }
            let mut g = Graph::empty(base.n() * t);
            for (u, v) in base.edges() {
                for i in 0..*t {
                    for j in 0..*t {
                        g.add_edge_unchecked(u * t + i, v * t + j);
                    }
                }
            }
            g
        }
        FamilySpec::Random { n, p, seed } => return gen_random(*n, p, *seed),
    };
    g.check_invariants();
    Ok(g)
}
