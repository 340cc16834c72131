//! Exact verification of the odd-cycle lower bound
//! `C_r(G) ≥ (d^r − ε)·n^r` for `(ε, d)`-dense graphs with `n ≥ 2/(ε − ε²)`,
//! and a step-by-step audit of the inequality chain behind it.

use std::fmt::Write as _;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::density::{auto_density, check_density_exact, DensityParams, DensityStatus, Limits};
use crate::error::{Error, Result};
use crate::generate::{gen_family, FamilySpec};
use crate::graph::{Graph, VertexSet};
use crate::hom::{
    count_cycle_homs, cycle_homs_via_decomposition, decomposition_sum, half_length, walk_table,
};
use crate::rational::{int_pow, serialize_biguint, Rational};

/// `n ≥ 2/(ε − ε²)`, compared exactly.
pub fn precondition_n_ok(n: usize, eps: &Rational) -> bool {
    let gap = eps - eps * eps;
    Rational::from(n as i64) * gap >= Rational::from(2)
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub limits: Limits,
    /// Density status to assume when `n` exceeds the exhaustive limit.
    pub supplied_status: Option<DensityStatus>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub eps: Rational,
    pub d: Rational,
    pub precondition_n_ok: bool,
    pub density_status: DensityStatus,
    #[serde(serialize_with = "serialize_biguint")]
    pub c_r: BigUint,
    pub bound: Rational,
    pub holds: bool,
    pub slack: Rational,
    /// True unless both hypotheses (size and certified density) are met.
    pub conditional: bool,
}

fn density_status(g: &Graph, p: &DensityParams, opts: &VerifyOptions) -> Result<DensityStatus> {
    if g.n() <= opts.limits.exhaustive {
        Ok(check_density_exact(g, p, opts.limits.exhaustive)?.status)
    } else {
        Ok(opts
            .supplied_status
            .unwrap_or(DensityStatus::UnverifiedHeuristic))
    }
}

/// `C_r` by trace and by decomposition, which must agree.
fn cross_checked_cycle_count(g: &Graph, r: usize) -> Result<BigUint> {
    let by_trace = count_cycle_homs(g, r);
    let by_decomposition = cycle_homs_via_decomposition(g, r)?;
    if by_trace != by_decomposition {
        return Err(Error::CrossCheck(format!(
            "C_{r}: trace gives {by_trace}, decomposition gives {by_decomposition}"
        )));
    }
    Ok(by_trace)
}

pub fn verify_main_theorem(
    g: &Graph,
    p: &DensityParams,
    r: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    half_length(r)?;
    let n = g.n();
    let precondition = precondition_n_ok(n, p.eps());
    let status = density_status(g, p, opts)?;
    let c_r = cross_checked_cycle_count(g, r)?;
    let bound = (p.d().pow(r as u32) - p.eps()) * int_pow(n, r as u32);
    let slack = Rational::from_biguint(&c_r) - &bound;
    Ok(VerificationReport {
        n,
        m: g.m(),
        r,
        eps: p.eps().clone(),
        d: p.d().clone(),
        precondition_n_ok: precondition,
        density_status: status,
        holds: !slack.is_negative(),
        c_r,
        bound,
        slack,
        conditional: !(precondition && status == DensityStatus::CertifiedExhaustive),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hypothesis {
    /// `G` is certified `(ε, d)`-dense.
    Density,
    /// `n ≥ 2/(ε − ε²)`.
    Size,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub id: &'static str,
    pub statement: &'static str,
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
    pub requires: Vec<Hypothesis>,
    /// Every required hypothesis is met, so `holds` is guaranteed.
    pub applicable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    /// Walk length of the `q` table, `(r − 1)/2`.
    pub half: usize,
    pub eps: Rational,
    pub d: Rational,
    pub precondition_n_ok: bool,
    pub density_status: DensityStatus,
    pub z_set: VertexSet,
    #[serde(serialize_with = "serialize_biguint")]
    pub walk_total: BigUint,
    #[serde(serialize_with = "serialize_biguint")]
    pub c_r: BigUint,
    pub steps: Vec<ChainStep>,
}

impl ChainReport {
    pub fn step(&self, id: &str) -> Option<&ChainStep> {
        self.steps.iter().find(|s| s.id == id)
    }

    pub fn all_hold(&self) -> bool {
        self.steps.iter().all(|s| s.holds)
    }

    /// No step whose hypotheses are met fails.
    pub fn sound(&self) -> bool {
        self.steps.iter().all(|s| s.holds || !s.applicable)
    }
}

/// Evaluates each inequality of the chain exactly.
///
/// With `q = q_h` for `h = (r − 1)/2`, `R_x = Σ_y q(x, y)` and
/// `Z = {x : R_x ≥ εn^h}`:
///
/// - `i`: `C_r ≥ 2n^{2h−2} Σ_{x∈Z} Σ_{yz∈E} (q(x,y)/n^{h−1})(q(x,z)/n^{h−1})`
/// - `ii`: that sum `≥ d Σ_{x∈Z} R_x² − 2|Z|n^{2h−1}` (the weighted density
///   bound applied to each `q(x, ·)/n^{h−1}`)
/// - `ii-complement`: `≥ d Σ_x R_x² − dε²n^{2h+1} − 2n^{2h}`
/// - `iii`: `dε²n + 2 ≤ εn`
/// - `iii-consequence`: `C_r ≥ (d/n)(Σ_{x,y} q)² − εn^{2h+1}`
/// - `iv-paths`: `Σ_{x,y} q ≥ (2|E|/n²)^h n^{h+1}`
/// - `iv`: `(d/n)(Σ q)² ≥ d^{2h+1} n^{2h+1}`
/// - `theorem`: `C_r ≥ (d^r − ε)n^r`
pub fn audit_proof_chain(
    g: &Graph,
    p: &DensityParams,
    r: usize,
    limits: &Limits,
) -> Result<ChainReport> {
    let h = half_length(r)?;
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidParameter(
            "cannot audit a graph without vertices".into(),
        ));
    }
    let status = check_density_exact(g, p, limits.exhaustive)?.status;
    let precondition = precondition_n_ok(n, p.eps());
    let dense = status == DensityStatus::CertifiedExhaustive;

    let (eps, d) = (p.eps(), p.d());
    let nn = Rational::from(n as i64);
    let npow = |k: usize| int_pow(n, k as u32);
    let two = Rational::from(2);

    let q = walk_table(g, h);
    let row_sums: Vec<BigUint> = (0..n).map(|x| q.row_sum(x)).collect();
    let walk_total: BigUint = row_sums.iter().sum();
    let z_threshold = eps * npow(h);
    let z_set = VertexSet::from_members(
        n,
        (0..n).filter(|&x| Rational::from_biguint(&row_sums[x]) >= z_threshold),
    )?;
    let z_size = z_set.len();
    let squares = |xs: &mut dyn Iterator<Item = usize>| -> Rational {
        let s: BigUint = xs.map(|x| &row_sums[x] * &row_sums[x]).sum();
        Rational::from_biguint(&s)
    };
    let sum_sq_z = squares(&mut z_set.iter());
    let sum_sq_all = squares(&mut (0..n));
    let total = Rational::from_biguint(&walk_total);

    let c_r = cross_checked_cycle_count(g, r)?;
    let c_r_rat = Rational::from_biguint(&c_r);

    // Σ over ordered adjacent (y, z) counts each edge twice.
    let ordered = Rational::from_biguint(&decomposition_sum(g, &q, z_set.iter()));
    let norm = npow(h - 1);
    let normalized = ordered / (&two * &norm * &norm);
    let step_i_rhs = &two * npow(2 * h - 2) * normalized;

    let step_ii_rhs = d * &sum_sq_z - &two * Rational::from(z_size as i64) * npow(2 * h - 1);
    let step_iic_rhs = d * &sum_sq_all - d * eps * eps * npow(2 * h + 1) - &two * npow(2 * h);
    let cs_main = d / &nn * &total * &total;
    let edge_density = Rational::new(2 * g.m() as i64, (n * n) as i64);

    let mut steps = Vec::new();
    let mut push =
        |id, statement, lhs: Rational, rhs: Rational, requires: Vec<Hypothesis>, flip: bool| {
            let holds = if flip { lhs <= rhs } else { lhs >= rhs };
            let applicable = requires.iter().all(|h| match h {
                Hypothesis::Density => dense,
                Hypothesis::Size => precondition,
            });
            steps.push(ChainStep {
                id,
                statement,
                lhs,
                rhs,
                holds,
                requires,
                applicable,
            });
        };
    use Hypothesis::{Density, Size};
    push(
        "i",
        "C_r >= 2n^(2h-2) sum_{x in Z} sum_{yz in E} q(x,y)q(x,z)/n^(2h-2)",
        c_r_rat.clone(),
        step_i_rhs.clone(),
        vec![],
        false,
    );
    push(
        "ii",
        "previous >= d sum_{x in Z} R_x^2 - 2|Z| n^(2h-1)",
        step_i_rhs,
        step_ii_rhs.clone(),
        vec![Density],
        false,
    );
    push(
        "ii-complement",
        "previous >= d sum_x R_x^2 - d eps^2 n^(2h+1) - 2n^(2h)",
        step_ii_rhs,
        step_iic_rhs,
        vec![],
        false,
    );
    push(
        "iii",
        "d eps^2 n + 2 <= eps n",
        d * eps * eps * &nn + &two,
        eps * &nn,
        vec![Size],
        true,
    );
    push(
        "iii-consequence",
        "C_r >= (d/n)(sum_{x,y} q)^2 - eps n^(2h+1)",
        c_r_rat.clone(),
        &cs_main - eps * npow(2 * h + 1),
        vec![Density, Size],
        false,
    );
    push(
        "iv-paths",
        "sum_{x,y} q >= (2|E|/n^2)^h n^(h+1)",
        total.clone(),
        edge_density.pow(h as u32) * npow(h + 1),
        vec![],
        false,
    );
    push(
        "iv",
        "(d/n)(sum_{x,y} q)^2 >= d^(2h+1) n^(2h+1)",
        cs_main,
        d.pow((2 * h + 1) as u32) * npow(2 * h + 1),
        vec![Density],
        false,
    );
    push(
        "theorem",
        "C_r >= (d^r - eps) n^r",
        c_r_rat,
        (d.pow(r as u32) - eps) * npow(r),
        vec![Density, Size],
        false,
    );

    Ok(ChainReport {
        n,
        m: g.m(),
        r,
        half: h,
        eps: eps.clone(),
        d: d.clone(),
        precondition_n_ok: precondition,
        density_status: status,
        z_set,
        walk_total,
        c_r,
        steps,
    })
}

/// How `d` is chosen for each scanned instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DChoice {
    /// The largest `d` the instance is certified `(ε, d)`-dense for.
    Auto,
    Fixed(Rational),
}

/// Parameter grid of a family; expands in nested-loop order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyGrid {
    Complete {
        ns: Vec<usize>,
    },
    CliqueUnion {
        ks: Vec<usize>,
        ss: Vec<usize>,
    },
    Multipartite {
        parts: Vec<Vec<usize>>,
    },
    BlowUp {
        base: Graph,
        ts: Vec<usize>,
    },
    Random {
        ns: Vec<usize>,
        p: Rational,
        seeds: Vec<u64>,
    },
}

impl FamilyGrid {
    pub fn expand(&self) -> Vec<FamilySpec> {
        match self {
            FamilyGrid::Complete { ns } => ns.iter().map(|&n| FamilySpec::Complete { n }).collect(),
            FamilyGrid::CliqueUnion { ks, ss } => ks
                .iter()
                .flat_map(|&k| ss.iter().map(move |&s| FamilySpec::CliqueUnion { k, s }))
                .collect(),
            FamilyGrid::Multipartite { parts } => parts
                .iter()
                .map(|p| FamilySpec::CompleteMultipartite { parts: p.clone() })
                .collect(),
            FamilyGrid::BlowUp { base, ts } => ts
                .iter()
                .map(|&t| FamilySpec::BlowUp {
                    base: base.clone(),
                    t,
                })
                .collect(),
            FamilyGrid::Random { ns, p, seeds } => ns
                .iter()
                .flat_map(|&n| {
                    seeds.iter().map(move |&seed| FamilySpec::Random {
                        n,
                        p: p.clone(),
                        seed,
                    })
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScanSpec {
    pub family: FamilyGrid,
    pub eps: Rational,
    pub d: DChoice,
    pub rs: Vec<usize>,
    pub limits: Limits,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub family: String,
    pub params: String,
    pub r: usize,
    /// `(n, m)` when the instance could be generated.
    pub size: Option<(usize, usize)>,
    pub outcome: std::result::Result<VerificationReport, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanTable {
    pub eps: Rational,
    pub rows: Vec<ScanRow>,
}

pub const CSV_HEADER: &str =
    "family,params,n,m,eps,d,r,c_r,bound_num,bound_den,holds,slack_num,slack_den,density_status,precond_ok";

impl ScanTable {
    pub fn holds_count(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| matches!(&r.outcome, Ok(rep) if rep.holds))
            .count()
    }

    pub fn violation_count(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| matches!(&r.outcome, Ok(rep) if !rep.holds))
            .count()
    }

    pub fn error_count(&self) -> usize {
        self.rows.iter().filter(|r| r.outcome.is_err()).count()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            write_csv_row(
                &mut out,
                &row.family,
                &row.params,
                row.size,
                &self.eps,
                row.r,
                &row.outcome,
            );
        }
        out
    }
}

/// One CSV line for a report, or an error marker row.
pub fn write_csv_row(
    out: &mut String,
    family: &str,
    params: &str,
    size: Option<(usize, usize)>,
    eps: &Rational,
    r: usize,
    outcome: &std::result::Result<VerificationReport, String>,
) {
    let (n, m) = size.map_or((String::new(), String::new()), |(n, m)| {
        (n.to_string(), m.to_string())
    });
    match outcome {
        Ok(rep) => {
            let _ = writeln!(
                out,
                "{family},{params},{n},{m},{eps},{d},{r},{c},{bn},{bd},{holds},{sn},{sd},{status},{pre}",
                d = rep.d,
                c = rep.c_r,
                bn = rep.bound.numer(),
                bd = rep.bound.denom(),
                holds = rep.holds,
                sn = rep.slack.numer(),
                sd = rep.slack.denom(),
                status = rep.density_status,
                pre = rep.precondition_n_ok,
            );
        }
        Err(msg) => {
            let msg = msg.replace([',', '\n', '\r'], ";");
            let _ = writeln!(
                out,
                "{family},{params},{n},{m},{eps},,{r},,,,error,,,error: {msg},"
            );
        }
    }
}

fn scan_instance(spec: &ScanSpec, inst: &FamilySpec) -> Vec<ScanRow> {
    let row = |size, r, outcome| ScanRow {
        family: inst.name().to_string(),
        params: inst.params(),
        r,
        size,
        outcome,
    };
    let prepared = gen_family(inst).and_then(|g| {
        let d = match &spec.d {
            DChoice::Auto => auto_density(&g, &spec.eps, spec.limits.exhaustive)?,
            DChoice::Fixed(d) => d.clone(),
        };
        let p = DensityParams::new(spec.eps.clone(), d)?;
        Ok((g, p))
    });
    match prepared {
        Err(e) => spec
            .rs
            .iter()
            .map(|&r| row(None, r, Err(e.to_string())))
            .collect(),
        Ok((g, p)) => {
            let opts = VerifyOptions {
                limits: spec.limits,
                supplied_status: None,
            };
            let size = Some((g.n(), g.m()));
            spec.rs
                .iter()
                .map(|&r| {
                    row(
                        size,
                        r,
                        verify_main_theorem(&g, &p, r, &opts).map_err(|e| e.to_string()),
                    )
                })
                .collect()
        }
    }
}

/// One row per `(instance, r)`, in grid order. With `parallel = false` all
/// work, including the inner subset enumeration, runs on a single thread.
pub fn scan_family(spec: &ScanSpec, parallel: bool) -> Result<ScanTable> {
    let instances = spec.family.expand();
    let run = || -> Vec<ScanRow> {
        instances
            .par_iter()
            .map(|inst| scan_instance(spec, inst))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    };
    let rows = if parallel {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(run)
    };
    Ok(ScanTable {
        eps: spec.eps.clone(),
        rows,
    })
}
