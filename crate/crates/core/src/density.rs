//! `(ε, d)`-density: certification, refutation and the weighted relaxation.
//!
//! A graph on `n` vertices is `(ε, d)`-dense when every `X` with
//! `|X| ≥ ⌈εn⌉` spans at least `(d/2)|X|²` edges. All comparisons are done in
//! integers after clearing denominators.
//!
//! The weighted relaxation minimizes
//! `Ω(f) = Σ_{xy∈E} f(x)f(y) − (d/2)(Σ_x f(x))²` over `f: V → [0, 1]` with
//! `Σf ≥ εn`. Some minimizer is `{0, 1}`-valued outside a single vertex `z`
//! (an exchange argument shifting weight between two fractional vertices
//! never increases `Ω`), and with the 1-set `S` and `z` fixed, `Ω` is concave
//! in `f(z)`, so only interval endpoints matter. [`weighted_min_exact`]
//! enumerates exactly those candidates.

use std::cmp::Ordering;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rational::{ceil_div, small_parts, Rational};

pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 24;
pub const DEFAULT_MINIMIZER_LIMIT: usize = 20;
/// Subsets are enumerated as `u64` masks.
const MASK_BITS: usize = 63;
/// Denominator of the grid random weight functions are drawn from.
pub const WEIGHT_GRID: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub exhaustive: usize,
    pub minimizer: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            exhaustive: DEFAULT_EXHAUSTIVE_LIMIT,
            minimizer: DEFAULT_MINIMIZER_LIMIT,
        }
    }
}

fn check_size(n: usize, limit: usize, what: &'static str) -> Result<()> {
    let limit = limit.min(MASK_BITS);
    if n > limit {
        return Err(Error::SizeLimit { n, limit, what });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityParams {
    eps: Rational,
    d: Rational,
}

impl DensityParams {
    pub fn new(eps: Rational, d: Rational) -> Result<Self> {
        if eps <= Rational::zero() || eps >= Rational::one() {
            return Err(Error::InvalidParameter(format!(
                "eps = {eps} must lie in (0, 1)"
            )));
        }
        if !d.in_unit_interval() {
            return Err(Error::InvalidParameter(format!(
                "d = {d} must lie in [0, 1]"
            )));
        }
        small_parts(&eps, "eps")?;
        small_parts(&d, "d")?;
        Ok(DensityParams { eps, d })
    }

    pub fn eps(&self) -> &Rational {
        &self.eps
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn with_d(&self, d: Rational) -> Result<Self> {
        DensityParams::new(self.eps.clone(), d)
    }

    /// `εn` as an exact rational.
    pub fn eps_n(&self, n: usize) -> Rational {
        &self.eps * Rational::from(n as i64)
    }

    /// `⌈εn⌉`, the smallest admissible subset size.
    pub fn min_size(&self, n: usize) -> usize {
        let (p, q) = self.eps_parts();
        ceil_div(p * n as u128, q) as usize
    }

    fn eps_parts(&self) -> (u128, u128) {
        small_parts(&self.eps, "eps").expect("validated on construction")
    }

    fn d_parts(&self) -> (u128, u128) {
        small_parts(&self.d, "d").expect("validated on construction")
    }

    /// `⌈d s² / 2⌉` for `s = 0..=n`: the fewest edges an admissible set of
    /// size `s` may span.
    fn edge_thresholds(&self, n: usize) -> Vec<u128> {
        let (p, q) = self.d_parts();
        (0..=n)
            .map(|s| ceil_div(p * (s * s) as u128, 2 * q))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityStatus {
    CertifiedExhaustive,
    Refuted,
    UnverifiedHeuristic,
}

impl DensityStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            DensityStatus::CertifiedExhaustive => "certified-exhaustive",
            DensityStatus::Refuted => "refuted",
            DensityStatus::UnverifiedHeuristic => "unverified-heuristic",
        }
    }
}

impl fmt::Display for DensityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for DensityStatus {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "certified-exhaustive" => Ok(DensityStatus::CertifiedExhaustive),
            "refuted" => Ok(DensityStatus::Refuted),
            "unverified-heuristic" => Ok(DensityStatus::UnverifiedHeuristic),
            _ => Err(Error::InvalidParameter(format!(
                "unknown density status {s:?}"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityCertificate {
    pub n: usize,
    pub params: DensityParams,
    pub status: DensityStatus,
    pub witness: Option<VertexSet>,
    pub witness_edges: Option<u64>,
    pub checked_subsets: u64,
}

impl DensityCertificate {
    fn refuted(g: &Graph, p: &DensityParams, witness: VertexSet, checked: u64) -> Self {
        let edges = g.induced_edge_count(&witness);
        let cert = DensityCertificate {
            n: g.n(),
            params: p.clone(),
            status: DensityStatus::Refuted,
            witness: Some(witness),
            witness_edges: Some(edges),
            checked_subsets: checked,
        };
        assert!(cert.witness_is_valid(g), "invalid refutation witness");
        cert
    }

    /// Re-checks the witness exactly: `|X| ≥ ⌈εn⌉` and `e(X) < (d/2)|X|²`.
    pub fn witness_is_valid(&self, g: &Graph) -> bool {
        let Some(x) = &self.witness else {
            return false;
        };
        let s = x.len();
        let lhs = Rational::from(2 * g.induced_edge_count(x) as i64);
        let rhs = self.params.d() * Rational::from((s * s) as i64);
        s >= self.params.min_size(g.n()) && lhs < rhs
    }
}

/// `a` precedes `b` lexicographically (both of the same size).
#[inline]
fn mask_lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a & diff & diff.wrapping_neg() != 0
}

/// Depth-first enumeration of all subsets of size `≥ min_size`, tracking
/// `e(X)` incrementally. Work is split on the decisions for the first few
/// vertices; each chunk's accumulator is returned in chunk order.
struct SubsetScan {
    n: usize,
    adj: Vec<u64>,
    min_size: usize,
}

impl SubsetScan {
    fn new(g: &Graph, min_size: usize) -> Self {
        assert!(g.n() <= MASK_BITS);
        SubsetScan {
            n: g.n(),
            adj: (0..g.n()).map(|v| g.row_mask(v)).collect(),
            min_size,
        }
    }

    fn run<T, I, V>(&self, init: I, visit: V) -> Vec<T>
    where
        T: Send,
        I: Fn() -> T + Sync,
        V: Fn(&mut T, u64, usize, u32) + Sync,
    {
        let split = self.n.min(8);
        (0u64..1 << split)
            .into_par_iter()
            .map(|prefix| {
                let mut acc = init();
                let (mut mask, mut size, mut edges) = (0u64, 0usize, 0u32);
                for v in 0..split {
                    if prefix >> v & 1 == 1 {
                        edges += (self.adj[v] & mask).count_ones();
                        mask |= 1 << v;
                        size += 1;
                    }
                }
                self.dfs(split, mask, size, edges, &mut acc, &visit);
                acc
            })
            .collect()
    }

    fn dfs<T, V>(&self, v: usize, mask: u64, size: usize, edges: u32, acc: &mut T, visit: &V)
    where
        V: Fn(&mut T, u64, usize, u32),
    {
        if size + (self.n - v) < self.min_size {
            return;
        }
        if v == self.n {
            visit(acc, mask, size, edges);
            return;
        }
        let added = (self.adj[v] & mask).count_ones();
        self.dfs(v + 1, mask | 1 << v, size + 1, edges + added, acc, visit);
        self.dfs(v + 1, mask, size, edges, acc, visit);
    }
}

/// Exhaustive check over every admissible subset. A refutation reports the
/// violating set that is smallest, then lexicographically first.
pub fn check_density_exact(
    g: &Graph,
    p: &DensityParams,
    limit: usize,
) -> Result<DensityCertificate> {
    check_size(g.n(), limit, "exhaustive density")?;
    let n = g.n();
    let k = p.min_size(n);
    let thresholds = p.edge_thresholds(n);

    #[derive(Default)]
    struct Acc {
        checked: u64,
        worst: Option<(usize, u64)>,
    }
    let better =
        |a: (usize, u64), b: (usize, u64)| a.0 < b.0 || (a.0 == b.0 && mask_lex_less(a.1, b.1));

    let scan = SubsetScan::new(g, k);
    let parts = scan.run(Acc::default, |acc: &mut Acc, mask, size, edges| {
        acc.checked += 1;
        if (edges as u128) < thresholds[size] {
            let cand = (size, mask);
            if acc.worst.is_none_or(|w| better(cand, w)) {
                acc.worst = Some(cand);
            }
        }
    });
    let mut checked = 0;
    let mut worst: Option<(usize, u64)> = None;
    for part in parts {
        checked += part.checked;
        if let Some(c) = part.worst {
            if worst.is_none_or(|w| better(c, w)) {
                worst = Some(c);
            }
        }
    }
    Ok(match worst {
        Some((_, mask)) => {
            DensityCertificate::refuted(g, p, VertexSet::from_mask(n, mask), checked)
        }
        None => DensityCertificate {
            n,
            params: p.clone(),
            status: DensityStatus::CertifiedExhaustive,
            witness: None,
            witness_edges: None,
            checked_subsets: checked,
        },
    })
}

/// For each size `s ≥ min_size`: the fewest edges any `s`-set spans, with the
/// lexicographically first set attaining it.
fn min_edges_by_size(g: &Graph, min_size: usize) -> Vec<Option<(u32, u64)>> {
    type Profile = Vec<Option<(u32, u64)>>;
    let n = g.n();
    let improve = |slot: &mut Option<(u32, u64)>, cand: (u32, u64)| {
        let replace = match slot {
            None => true,
            Some(cur) => cand.0 < cur.0 || (cand.0 == cur.0 && mask_lex_less(cand.1, cur.1)),
        };
        if replace {
            *slot = Some(cand);
        }
    };
    let parts = SubsetScan::new(g, min_size).run(
        || vec![None; n + 1],
        |acc: &mut Profile, mask, size, edges| improve(&mut acc[size], (edges, mask)),
    );
    let mut out: Profile = vec![None; n + 1];
    for part in parts {
        for (slot, cand) in out.iter_mut().zip(part) {
            if let Some(c) = cand {
                improve(slot, c);
            }
        }
    }
    out
}

/// The largest `d ∈ [0, 1]` for which `g` is `(ε, d)`-dense:
/// `min(1, min 2e(X)/|X|²)` over admissible nonempty `X`.
pub fn auto_density(g: &Graph, eps: &Rational, limit: usize) -> Result<Rational> {
    check_size(g.n(), limit, "exhaustive density")?;
    let p = DensityParams::new(eps.clone(), Rational::zero())?;
    let k = p.min_size(g.n()).max(1);
    let profile = min_edges_by_size(g, k);
    let best = profile
        .iter()
        .enumerate()
        .filter_map(|(s, slot)| slot.map(|(e, _)| Rational::new(2 * e as i64, (s * s) as i64)))
        .min()
        .unwrap_or_else(Rational::one);
    Ok(best.min(Rational::one()))
}

/// Randomized local search for a violating set.
///
/// Runs simulated annealing over admissible sets with add, remove and swap
/// moves on the objective `e(X) − (d/2)|X|²`. Only exactly re-verified
/// witnesses are reported, so the outcome is either `refuted` or
/// `unverified-heuristic`.
pub fn check_density_heuristic(
    g: &Graph,
    p: &DensityParams,
    iters: u64,
    seed: u64,
) -> Result<DensityCertificate> {
    check_density_heuristic_from(g, p, iters, seed, None)
}

/// As [`check_density_heuristic`], starting from `start` when given.
pub fn check_density_heuristic_from(
    g: &Graph,
    p: &DensityParams,
    iters: u64,
    seed: u64,
    start: Option<&VertexSet>,
) -> Result<DensityCertificate> {
    if iters == 0 {
        return Err(Error::InvalidParameter("iters must be at least 1".into()));
    }
    let n = g.n();
    let k = p.min_size(n);
    let (dp, dq) = p.d_parts();
    let (dp, dq) = (dp as i128, dq as i128);
    // 2q·e − p·s²; negative exactly on violating sets.
    let score = |e: i128, s: i128| 2 * dq * e - dp * s * s;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = SearchState::new(n);
    if let Some(start) = start {
        for v in start.iter() {
            state.insert(g, v);
        }
    }
    if state.members.len() < k {
        let mut pool = state.outside.clone();
        pool.shuffle(&mut rng);
        for v in pool.into_iter().take(k - state.members.len()) {
            state.insert(g, v);
        }
    }

    let mut current = score(state.edges, state.members.len() as i128);
    let mut best: Option<(i128, VertexSet)> = None;
    let record = |val: i128, st: &SearchState, best: &mut Option<(i128, VertexSet)>| {
        if val < 0 && best.as_ref().is_none_or(|(b, _)| val < *b) {
            *best = Some((val, st.to_set()));
        }
    };
    record(current, &state, &mut best);

    let t_hot = 2.0 * (2 * dq) as f64;
    let t_cold = 0.05 * (2 * dq) as f64;
    let mut checked = 1u64;
    for i in 0..iters {
        let s = state.members.len();
        let can_add = !state.outside.is_empty();
        let can_remove = s > k;
        let can_swap = s > 0 && can_add;
        let mut moves = [0u8; 3];
        let mut count = 0;
        for (m, ok) in [(0u8, can_add), (1, can_remove), (2, can_swap)] {
            if ok {
                moves[count] = m;
                count += 1;
            }
        }
        if count == 0 {
            break;
        }
        let temp = t_hot * (t_cold / t_hot).powf(i as f64 / iters as f64);
        let mv = moves[rng.gen_range(0..count)];
        let (add, remove) = match mv {
            0 => (Some(*state.outside.choose(&mut rng).unwrap()), None),
            1 => (None, Some(*state.members.choose(&mut rng).unwrap())),
            _ => (
                Some(*state.outside.choose(&mut rng).unwrap()),
                Some(*state.members.choose(&mut rng).unwrap()),
            ),
        };
        let mut de = 0i128;
        let mut ns = s as i128;
        if let Some(u) = add {
            de += state.deg_in[u] as i128;
            ns += 1;
        }
        if let Some(v) = remove {
            de -= state.deg_in[v] as i128;
            ns -= 1;
            if let Some(u) = add {
                de -= g.has_edge(u, v) as i128;
            }
        }
        let next = score(state.edges + de, ns);
        let delta = next - current;
        if delta <= 0 || rng.gen::<f64>() < (-(delta as f64) / temp).exp() {
            if let Some(v) = remove {
                state.remove(g, v);
            }
            if let Some(u) = add {
                state.insert(g, u);
            }
            debug_assert_eq!(state.edges, state.edges_recomputed(g));
            current = next;
            checked += 1;
            record(current, &state, &mut best);
        }
    }

    Ok(match best {
        Some((_, witness)) => DensityCertificate::refuted(g, p, witness, checked),
        None => DensityCertificate {
            n,
            params: p.clone(),
            status: DensityStatus::UnverifiedHeuristic,
            witness: None,
            witness_edges: None,
            checked_subsets: checked,
        },
    })
}

struct SearchState {
    in_set: Vec<bool>,
    members: Vec<usize>,
    outside: Vec<usize>,
    /// Index of each vertex inside `members` or `outside`.
    pos: Vec<usize>,
    /// `|N(v) ∩ X|` for every vertex.
    deg_in: Vec<u32>,
    edges: i128,
}

impl SearchState {
    fn new(n: usize) -> Self {
        SearchState {
            in_set: vec![false; n],
            members: Vec::new(),
            outside: (0..n).collect(),
            pos: (0..n).collect(),
            deg_in: vec![0; n],
            edges: 0,
        }
    }

    fn insert(&mut self, g: &Graph, v: usize) {
        if self.in_set[v] {
            return;
        }
        let i = self.pos[v];
        self.outside.swap_remove(i);
        if let Some(&moved) = self.outside.get(i) {
            self.pos[moved] = i;
        }
        self.pos[v] = self.members.len();
        self.members.push(v);
        self.in_set[v] = true;
        self.edges += self.deg_in[v] as i128;
        for u in g.neighbors(v) {
            self.deg_in[u] += 1;
        }
    }

    fn remove(&mut self, g: &Graph, v: usize) {
        if !self.in_set[v] {
            return;
        }
        let i = self.pos[v];
        self.members.swap_remove(i);
        if let Some(&moved) = self.members.get(i) {
            self.pos[moved] = i;
        }
        self.pos[v] = self.outside.len();
        self.outside.push(v);
        self.in_set[v] = false;
        self.edges -= self.deg_in[v] as i128;
        for u in g.neighbors(v) {
            self.deg_in[u] -= 1;
        }
    }

    fn to_set(&self) -> VertexSet {
        let mut s = VertexSet::empty(self.in_set.len());
        for &v in &self.members {
            s.insert(v);
        }
        s
    }

    fn edges_recomputed(&self, g: &Graph) -> i128 {
        g.induced_edge_count(&self.to_set()) as i128
    }
}

/// A weight function `f: V → [0, 1]` with exact rational values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightFunction {
    values: Vec<Rational>,
}

impl WeightFunction {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if let Some((v, bad)) = values
            .iter()
            .enumerate()
            .find(|(_, x)| !x.in_unit_interval())
        {
            return Err(Error::InvalidParameter(format!(
                "f({v}) = {bad} outside [0, 1]"
            )));
        }
        Ok(WeightFunction { values })
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn total(&self) -> Rational {
        self.values.iter().fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn fractional_count(&self) -> usize {
        self.values.iter().filter(|x| !x.is_integer()).count()
    }
}

/// `Σ_{xy∈E} f(x)f(y)`.
pub fn edge_weight_sum(g: &Graph, f: &WeightFunction) -> Rational {
    assert_eq!(g.n(), f.values.len());
    g.edges().fold(Rational::zero(), |acc, (u, v)| {
        acc + &f.values[u] * &f.values[v]
    })
}

/// `Ω(f) = Σ_{xy∈E} f(x)f(y) − (d/2)(Σf)²`.
pub fn weighted_objective(g: &Graph, d: &Rational, f: &WeightFunction) -> Rational {
    let total = f.total();
    edge_weight_sum(g, f) - d * &total * &total / Rational::from(2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimizerResult {
    pub omega: Rational,
    pub minimizer: WeightFunction,
    /// Vertices with weight 1.
    pub ones: VertexSet,
    /// The single vertex with fractional weight, if any.
    pub z: Option<usize>,
    /// `f(z)`; zero when `z` is absent.
    pub delta: Rational,
}

impl MinimizerResult {
    /// `Ω + n`: how far the minimum sits above the `−n` lower bound.
    pub fn gap_to_lower_bound(&self) -> Rational {
        &self.omega + Rational::from(self.minimizer.values.len() as i64)
    }
}

/// Exact minimum of `Ω` over weight functions with `Σf ≥ εn`.
///
/// Candidates are `f = 1_S` with `|S| ≥ ⌈εn⌉`, and, when `εn` is not an
/// integer, `f = 1_S + δ·1_z` with `|S| = ⌊εn⌋` and `δ = εn − ⌊εn⌋` (the
/// other endpoint `δ = 1` is the integral candidate `S ∪ {z}`). Ties are
/// broken by support size, then lexicographically on the support, integral
/// candidates first.
pub fn weighted_min_exact(g: &Graph, p: &DensityParams, limit: usize) -> Result<MinimizerResult> {
    check_size(g.n(), limit, "minimizer")?;
    let n = g.n();
    let eps_n = p.eps_n(n);
    let k = p.min_size(n);
    let low = eps_n.floor();
    let low: usize = low.try_into().expect("0 <= eps*n < n");
    let fractional = !eps_n.is_integer();
    let delta = &eps_n - Rational::from(low as i64);
    let (c, b) = small_parts(&delta, "eps*n")?;
    let adj: Vec<u64> = (0..n).map(|v| g.row_mask(v)).collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };

    #[derive(Clone)]
    struct Acc {
        integral: Vec<Option<(u32, u64)>>,
        /// `(b·e(S) + c·N, support mask, S, z)` for the fractional case.
        frac: Option<(u128, u64, u64, usize)>,
    }
    let frac_better = |a: &(u128, u64, u64, usize), b: &(u128, u64, u64, usize)| {
        a.0 < b.0
            || (a.0 == b.0 && (mask_lex_less(a.1, b.1) || (a.1 == b.1 && mask_lex_less(a.2, b.2))))
    };
    let int_better =
        |a: (u32, u64), b: (u32, u64)| a.0 < b.0 || (a.0 == b.0 && mask_lex_less(a.1, b.1));

    let scan = SubsetScan::new(g, if fractional { low } else { k });
    let parts = scan.run(
        || Acc {
            integral: vec![None; n + 1],
            frac: None,
        },
        |acc: &mut Acc, mask, size, edges| {
            if size >= k {
                let slot = &mut acc.integral[size];
                if slot.is_none_or(|cur| int_better((edges, mask), cur)) {
                    *slot = Some((edges, mask));
                }
            }
            if fractional && size == low {
                let mut outside = all & !mask;
                let mut best_z: Option<(u32, usize)> = None;
                while outside != 0 {
                    let z = outside.trailing_zeros() as usize;
                    outside &= outside - 1;
                    let nz = (adj[z] & mask).count_ones();
                    if best_z.is_none_or(|(bn, _)| nz < bn) {
                        best_z = Some((nz, z));
                    }
                }
                if let Some((nz, z)) = best_z {
                    let cand = (b * edges as u128 + c * nz as u128, mask | 1 << z, mask, z);
                    if acc.frac.as_ref().is_none_or(|cur| frac_better(&cand, cur)) {
                        acc.frac = Some(cand);
                    }
                }
            }
        },
    );

    let mut integral: Vec<Option<(u32, u64)>> = vec![None; n + 1];
    let mut frac: Option<(u128, u64, u64, usize)> = None;
    for part in parts {
        for (slot, cand) in integral.iter_mut().zip(part.integral) {
            if let Some(cnd) = cand {
                if slot.is_none_or(|cur| int_better(cnd, cur)) {
                    *slot = Some(cnd);
                }
            }
        }
        if let Some(cnd) = part.frac {
            if frac.as_ref().is_none_or(|cur| frac_better(&cnd, cur)) {
                frac = Some(cnd);
            }
        }
    }

    // (omega, support size, support mask, ones mask, z)
    type Candidate = (Rational, usize, u64, u64, Option<usize>);
    let half_d = p.d() / Rational::from(2);
    let mut candidates: Vec<Candidate> = Vec::new();
    for (s, slot) in integral.iter().enumerate() {
        if let Some((e, mask)) = *slot {
            let omega = Rational::from(e as i64) - &half_d * Rational::from((s * s) as i64);
            candidates.push((omega, s, mask, mask, None));
        }
    }
    if let Some((_, support, ones, z)) = frac {
        let e = (adj.iter().enumerate())
            .filter(|(v, _)| ones >> v & 1 == 1)
            .map(|(_, row)| (row & ones).count_ones())
            .sum::<u32>()
            / 2;
        let nz = (adj[z] & ones).count_ones();
        let omega = Rational::from(e as i64) + &delta * Rational::from(nz as i64)
            - &half_d * &eps_n * &eps_n;
        candidates.push((omega, low + 1, support, ones, Some(z)));
    }
    let cmp = |a: &Candidate, b: &Candidate| -> Ordering {
        a.0.cmp(&b.0)
            .then(a.1.cmp(&b.1))
            .then_with(|| {
                if a.2 == b.2 {
                    Ordering::Equal
                } else if mask_lex_less(a.2, b.2) {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            })
            .then(a.4.is_some().cmp(&b.4.is_some()))
    };
    let (omega, _, _, ones, z) = candidates
        .into_iter()
        .min_by(cmp)
        .expect("the all-ones function is always feasible");

    let mut values = vec![Rational::zero(); n];
    for (v, val) in values.iter_mut().enumerate() {
        if ones >> v & 1 == 1 {
            *val = Rational::one();
        }
    }
    if let Some(z) = z {
        values[z] = delta.clone();
    }
    let minimizer = WeightFunction::new(values)?;
    let result = MinimizerResult {
        omega,
        ones: VertexSet::from_mask(n, ones),
        z,
        delta: if z.is_some() { delta } else { Rational::zero() },
        minimizer,
    };
    assert!(
        result.minimizer.fractional_count() <= 1,
        "minimizer has several fractional coordinates"
    );
    assert!(
        result.minimizer.total() >= eps_n,
        "minimizer violates the mass constraint"
    );
    assert_eq!(
        weighted_objective(g, p.d(), &result.minimizer),
        result.omega,
        "reported omega disagrees with the objective at the minimizer"
    );
    Ok(result)
}

/// Independent oracle: the minimum of `Ω` over the grid
/// `{0, step, 2·step, …, 1}^V` subject to `Σf ≥ εn`.
pub fn weighted_min_grid_oracle(g: &Graph, p: &DensityParams, step: &Rational) -> Result<Rational> {
    const MAX_N: usize = 8;
    if g.n() > MAX_N {
        return Err(Error::SizeLimit {
            n: g.n(),
            limit: MAX_N,
            what: "grid oracle",
        });
    }
    let levels: u32 = if *step == Rational::new(1, 2) {
        2
    } else if *step == Rational::new(1, 4) {
        4
    } else {
        return Err(Error::InvalidParameter(format!(
            "grid step {step} must be 1/2 or 1/4"
        )));
    };
    let n = g.n();
    let (ep, eq) = p.eps_parts();
    let (dp, dq) = p.d_parts();
    let (dp, dq) = (dp as i128, dq as i128);
    // Σg ≥ εn·levels  ⇔  Σg·eq ≥ ep·n·levels
    let need = ep * n as u128 * levels as u128;

    struct Search<'a> {
        g: &'a Graph,
        levels: i128,
        weights: Vec<i128>,
        best: Option<i128>,
    }
    impl Search<'_> {
        fn go(
            &mut self,
            v: usize,
            mass: i128,
            pairs: i128,
            feasible: &dyn Fn(i128) -> bool,
            value: &dyn Fn(i128, i128) -> i128,
        ) {
            if v == self.g.n() {
                if feasible(mass) {
                    let val = value(pairs, mass);
                    if self.best.is_none_or(|b| val < b) {
                        self.best = Some(val);
                    }
                }
                return;
            }
            let into: i128 = self
                .g
                .neighbors(v)
                .filter(|&u| u < v)
                .map(|u| self.weights[u])
                .sum();
            for w in 0..=self.levels {
                self.weights[v] = w;
                self.go(v + 1, mass + w, pairs + w * into, feasible, value);
            }
            self.weights[v] = 0;
        }
    }
    let feasible = |mass: i128| mass as u128 * eq >= need;
    // 2q·levels²·Ω = 2q·Σ g_x g_y − p·(Σg)²
    let value = |pairs: i128, mass: i128| 2 * dq * pairs - dp * mass * mass;
    let mut search = Search {
        g,
        levels: levels as i128,
        weights: vec![0; n],
        best: None,
    };
    search.go(0, 0, 0, &feasible, &value);
    let best = search
        .best
        .ok_or_else(|| Error::Precondition("no grid point satisfies the mass constraint".into()))?;
    Ok(Rational::new(best, 2 * dq * (levels as i128).pow(2)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaViolation {
    pub f: WeightFunction,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaFReport {
    pub n: usize,
    pub params: DensityParams,
    pub trials: u64,
    pub violations: Vec<LemmaViolation>,
    /// Smallest `lhs − rhs` seen over the random trials.
    pub min_slack: Option<Rational>,
    /// Exact minimum `Ω`, when `n` is within the minimizer limit.
    pub omega: Option<Rational>,
    pub omega_holds: Option<bool>,
}

impl LemmaFReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.omega_holds != Some(false)
    }
}

/// Checks `Σ_{xy∈E} f(x)f(y) ≥ (d/2)(Σf)² − n` on random weight functions
/// drawn from the `1/16` grid, plus `min Ω ≥ −n` when the exact minimizer
/// fits within `minimizer_limit`.
///
/// Infeasible draws are redrawn with the lowest allowed grid level raised by
/// one each time, which terminates because `f ≡ 1` is always feasible.
pub fn lemma_f_verify(
    g: &Graph,
    cert: &DensityCertificate,
    trials: u64,
    seed: u64,
    minimizer_limit: usize,
) -> Result<LemmaFReport> {
    if cert.status != DensityStatus::CertifiedExhaustive {
        return Err(Error::Precondition(format!(
            "density certificate is {}, not certified-exhaustive",
            cert.status
        )));
    }
    if cert.n != g.n() {
        return Err(Error::Precondition(
            "density certificate belongs to another graph".into(),
        ));
    }
    let p = &cert.params;
    let n = g.n();
    let eps_n = p.eps_n(n);
    let n_rat = Rational::from(n as i64);
    let half_d = p.d() / Rational::from(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut violations = Vec::new();
    let mut min_slack: Option<Rational> = None;
    for _ in 0..trials {
        let mut floor = 0;
        let f = loop {
            let values: Vec<Rational> = (0..n)
                .map(|_| {
                    Rational::new(
                        rng.gen_range(floor..=WEIGHT_GRID) as i64,
                        WEIGHT_GRID as i64,
                    )
                })
                .collect();
            let f = WeightFunction::new(values)?;
            if f.total() >= eps_n {
                break f;
            }
            floor += 1;
        };
        let total = f.total();
        let lhs = edge_weight_sum(g, &f);
        let rhs = &half_d * &total * &total - &n_rat;
        let slack = &lhs - &rhs;
        if min_slack.as_ref().is_none_or(|m| slack < *m) {
            min_slack = Some(slack);
        }
        if lhs < rhs {
            violations.push(LemmaViolation { f, lhs, rhs });
        }
    }

    let (omega, omega_holds) = if n <= minimizer_limit.min(MASK_BITS) {
        let res = weighted_min_exact(g, p, minimizer_limit)?;
        let ok = res.omega >= -n_rat.clone();
        (Some(res.omega), Some(ok))
    } else {
        (None, None)
    };

    Ok(LemmaFReport {
        n,
        params: p.clone(),
        trials,
        violations,
        min_slack,
        omega,
        omega_holds,
    })
}
