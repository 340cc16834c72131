//! Command-line front end.
//!
//! Exit codes: `0` success or inequality holds, `1` inequality violated or
//! density refuted, `2` usage or input error, `3` size limit or budget hit.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::density::{
    auto_density, check_density_exact, check_density_heuristic, lemma_f_verify, weighted_min_exact,
    DensityParams, DensityStatus, Limits, DEFAULT_EXHAUSTIVE_LIMIT, DEFAULT_MINIMIZER_LIMIT,
};
use crate::error::{Error, Result};
use crate::generate::{gen_family, FamilySpec};
use crate::graph::Graph;
use crate::hom::{count_cycle_homs, count_path_homs, half_length};
use crate::io::{read_graph, to_edge_list};
use crate::rational::Rational;
use crate::report::TextReport;
use crate::verify::{
    audit_proof_chain, scan_family, verify_main_theorem, DChoice, FamilyGrid, ScanSpec,
    VerifyOptions,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "oddcycle",
    version,
    about = "Exact odd-cycle counts and (eps, d)-density certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Largest n for exhaustive subset enumeration (also caps the minimizer).
    #[arg(long, global = true)]
    limit_exhaustive: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Complete,
    Multipartite,
    CliqueUnion,
    BlowUp,
    Random,
}

#[derive(Clone, Debug)]
enum DArg {
    Auto,
    Fixed(Rational),
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

fn parse_d(s: &str) -> std::result::Result<DArg, String> {
    if s == "auto" {
        Ok(DArg::Auto)
    } else {
        parse_rational(s).map(DArg::Fixed)
    }
}

/// Integer list flag value.
#[derive(Clone, Debug)]
struct List(Vec<usize>);

fn parse_list_arg(s: &str) -> std::result::Result<List, String> {
    parse_list(s).map(List)
}

/// `"2,3"`, `"4..6"` (inclusive) or a mix such as `"2,5..7"`.
fn parse_list(s: &str) -> std::result::Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for item in s.split(',') {
        let item = item.trim();
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad integer {t:?} in {s:?}"))
        };
        match item.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (num(lo)?, num(hi)?);
                if lo > hi {
                    return Err(format!("empty range {item:?}"));
                }
                out.extend(lo..=hi);
            }
            None => out.push(num(item)?),
        }
    }
    Ok(out)
}

#[derive(Args, Debug, Clone)]
struct GraphArg {
    /// Edge-list file.
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Args, Debug, Clone)]
struct ParamArgs {
    #[arg(long, value_parser = parse_rational)]
    eps: Rational,

    /// A rational in [0, 1], or `auto` for the largest certified value.
    #[arg(long, value_parser = parse_d)]
    d: DArg,
}

#[derive(Args, Debug, Clone)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Number of cliques (clique-union).
    #[arg(long, value_parser = parse_list_arg)]
    k: Option<List>,
    /// Clique size (clique-union).
    #[arg(long, value_parser = parse_list_arg)]
    s: Option<List>,
    /// Part sizes, e.g. `2,2,3`; separate several instances with `;` in scans.
    #[arg(long)]
    parts: Option<String>,
    /// Blow-up factor; the base graph is read from --graph.
    #[arg(long, value_parser = parse_list_arg)]
    t: Option<List>,
    /// Vertex count (complete, random).
    #[arg(long, value_parser = parse_list_arg)]
    n: Option<List>,
    /// Edge probability (random).
    #[arg(long, value_parser = parse_rational)]
    p: Option<Rational>,
    /// Base graph for blow-up.
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph and print it as an edge list.
    Gen(FamilyArgs),
    /// Count closed walks of length r (homomorphisms of the r-cycle).
    Count {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        r: usize,
    },
    /// Count homomorphisms of the path with k edges.
    CountPaths {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        k_path: usize,
    },
    /// Certify or refute (eps, d)-density.
    CheckDensity {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        params: ParamArgs,
        /// Run the randomized search with this many iterations instead of
        /// the exhaustive check.
        #[arg(long)]
        iters: Option<u64>,
    },
    /// Exact minimum of the weighted density objective.
    MinWeighted {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Check the weighted density inequality on random weight functions.
    LemmaF {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 100)]
        trials: u64,
    },
    /// Verify C_r >= (d^r - eps) n^r.
    Verify {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        r: usize,
        /// Density status to assume when n exceeds the exhaustive limit.
        #[arg(long)]
        assume_density: Option<String>,
    },
    /// Evaluate every step of the inequality chain exactly.
    AuditChain {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        r: usize,
    },
    /// Verify the bound over a grid of family instances.
    Scan {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        params: ParamArgs,
        /// Cycle lengths, e.g. `3,5,7`.
        #[arg(long, value_parser = parse_list_arg)]
        r: List,
        /// Seeds for the random family.
        #[arg(long, value_parser = parse_list_arg)]
        seeds: Option<List>,
        /// Run single-threaded.
        #[arg(long)]
        sequential: bool,
    },
}

struct Outcome {
    text: String,
    code: i32,
}

fn ok(text: String) -> Result<Outcome> {
    Ok(Outcome {
        text,
        code: EXIT_OK,
    })
}

fn graded(text: String, success: bool) -> Result<Outcome> {
    Ok(Outcome {
        text,
        code: if success { EXIT_OK } else { EXIT_VIOLATED },
    })
}

fn error_code(e: &Error) -> i32 {
    match e {
        e if e.is_resource_guard() => EXIT_RESOURCE,
        Error::CrossCheck(_) => EXIT_VIOLATED,
        _ => EXIT_USAGE,
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn single(list: &Option<List>, flag: &str) -> Result<usize> {
    match list.as_ref().map(|l| l.0.as_slice()) {
        Some([v]) => Ok(*v),
        Some(_) => Err(Error::InvalidParameter(format!(
            "--{flag} takes a single value here"
        ))),
        None => Err(Error::InvalidParameter(format!("--{flag} is required"))),
    }
}

fn required<'a, T>(v: &'a Option<T>, flag: &str) -> Result<&'a T> {
    v.as_ref()
        .ok_or_else(|| Error::InvalidParameter(format!("--{flag} is required")))
}

fn parse_parts(s: &str) -> Result<Vec<Vec<usize>>> {
    s.split(';')
        .map(|p| parse_list(p).map_err(Error::InvalidParameter))
        .collect()
}

fn family_spec(args: &FamilyArgs, seed: u64) -> Result<FamilySpec> {
    Ok(match args.family {
        Family::Complete => FamilySpec::Complete {
            n: single(&args.n, "n")?,
        },
        Family::CliqueUnion => FamilySpec::CliqueUnion {
            k: single(&args.k, "k")?,
            s: single(&args.s, "s")?,
        },
        Family::Multipartite => {
            let mut parts = parse_parts(required(&args.parts, "parts")?)?;
            if parts.len() != 1 {
                return Err(Error::InvalidParameter(
                    "--parts takes a single instance here".into(),
                ));
            }
            FamilySpec::CompleteMultipartite {
                parts: parts.remove(0),
            }
        }
        Family::BlowUp => FamilySpec::BlowUp {
            base: read_graph(required(&args.graph, "graph")?)?,
            t: single(&args.t, "t")?,
        },
        Family::Random => FamilySpec::Random {
            n: single(&args.n, "n")?,
            p: required(&args.p, "p")?.clone(),
            seed,
        },
    })
}

fn family_grid(args: &FamilyArgs, seeds: Vec<u64>) -> Result<FamilyGrid> {
    Ok(match args.family {
        Family::Complete => FamilyGrid::Complete {
            ns: required(&args.n, "n")?.0.clone(),
        },
        Family::CliqueUnion => FamilyGrid::CliqueUnion {
            ks: required(&args.k, "k")?.0.clone(),
            ss: required(&args.s, "s")?.0.clone(),
        },
        Family::Multipartite => FamilyGrid::Multipartite {
            parts: parse_parts(required(&args.parts, "parts")?)?,
        },
        Family::BlowUp => FamilyGrid::BlowUp {
            base: read_graph(required(&args.graph, "graph")?)?,
            ts: required(&args.t, "t")?.0.clone(),
        },
        Family::Random => FamilyGrid::Random {
            ns: required(&args.n, "n")?.0.clone(),
            p: required(&args.p, "p")?.clone(),
            seeds,
        },
    })
}

fn resolve_params(g: &Graph, params: &ParamArgs, limits: &Limits) -> Result<DensityParams> {
    let d = match &params.d {
        DArg::Fixed(d) => d.clone(),
        DArg::Auto => auto_density(g, &params.eps, limits.exhaustive)?,
    };
    DensityParams::new(params.eps.clone(), d)
}

fn render<T: TextReport + serde::Serialize>(report: &T, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(with_newline(
            serde_json::to_string_pretty(report)
                .map_err(|e| Error::InvalidParameter(e.to_string()))?,
        )),
        Format::Text => Ok(report.to_text()),
        Format::Csv => Err(Error::InvalidParameter(
            "--format csv is only available for verify and scan".into(),
        )),
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let limits = match cli.limit_exhaustive {
        Some(l) => Limits {
            exhaustive: l,
            minimizer: l,
        },
        None => Limits {
            exhaustive: DEFAULT_EXHAUSTIVE_LIMIT,
            minimizer: DEFAULT_MINIMIZER_LIMIT,
        },
    };
    match &cli.command {
        Command::Gen(args) => {
            if cli.format != Format::Text {
                return Err(Error::InvalidParameter("gen only emits edge lists".into()));
            }
            let g = gen_family(&family_spec(args, cli.seed)?)?;
            ok(to_edge_list(&g))
        }
        Command::Count { graph, r } => {
            let g = read_graph(&graph.graph)?;
            if *r < 2 {
                return Err(Error::InvalidCycleLength {
                    r: *r,
                    reason: "must be at least 2",
                });
            }
            let c = count_cycle_homs(&g, *r);
            match cli.format {
                Format::Json => ok(format!("{}\n", json!({ "r": r, "c_r": c.to_string() }))),
                _ => ok(format!("{c}\n")),
            }
        }
        Command::CountPaths { graph, k_path } => {
            let g = read_graph(&graph.graph)?;
            let c = count_path_homs(&g, *k_path);
            match cli.format {
                Format::Json => ok(format!(
                    "{}\n",
                    json!({ "k": k_path, "count": c.to_string() })
                )),
                _ => ok(format!("{c}\n")),
            }
        }
        Command::CheckDensity {
            graph,
            params,
            iters,
        } => {
            let g = read_graph(&graph.graph)?;
            let p = resolve_params(&g, params, &limits)?;
            let cert = match iters {
                Some(iters) => check_density_heuristic(&g, &p, *iters, cli.seed)?,
                None => check_density_exact(&g, &p, limits.exhaustive)?,
            };
            graded(
                render(&cert, cli.format)?,
                cert.status != DensityStatus::Refuted,
            )
        }
        Command::MinWeighted { graph, params } => {
            let g = read_graph(&graph.graph)?;
            let p = resolve_params(&g, params, &limits)?;
            let res = weighted_min_exact(&g, &p, limits.minimizer)?;
            ok(render(&res, cli.format)?)
        }
        Command::LemmaF {
            graph,
            params,
            trials,
        } => {
            let g = read_graph(&graph.graph)?;
            let p = resolve_params(&g, params, &limits)?;
            let cert = check_density_exact(&g, &p, limits.exhaustive)?;
            let report = lemma_f_verify(&g, &cert, *trials, cli.seed, limits.minimizer)?;
            graded(render(&report, cli.format)?, report.holds())
        }
        Command::Verify {
            graph,
            params,
            r,
            assume_density,
        } => {
            let g = read_graph(&graph.graph)?;
            half_length(*r)?;
            let p = resolve_params(&g, params, &limits)?;
            let opts = VerifyOptions {
                limits,
                supplied_status: assume_density.as_deref().map(str::parse).transpose()?,
            };
            let rep = verify_main_theorem(&g, &p, *r, &opts)?;
            let text = match cli.format {
                Format::Csv => {
                    let mut s = format!("{}\n", crate::verify::CSV_HEADER);
                    crate::verify::write_csv_row(
                        &mut s,
                        "file",
                        &graph.graph.display().to_string().replace(',', ";"),
                        Some((g.n(), g.m())),
                        p.eps(),
                        *r,
                        &Ok(rep.clone()),
                    );
                    s
                }
                f => render(&rep, f)?,
            };
            graded(text, rep.holds)
        }
        Command::AuditChain { graph, params, r } => {
            let g = read_graph(&graph.graph)?;
            let p = resolve_params(&g, params, &limits)?;
            let rep = audit_proof_chain(&g, &p, *r, &limits)?;
            graded(render(&rep, cli.format)?, rep.sound())
        }
        Command::Scan {
            family,
            params,
            r,
            seeds,
            sequential,
        } => {
            let seeds: Vec<u64> = match seeds {
                Some(s) => s.0.iter().map(|&v| v as u64).collect(),
                None => vec![cli.seed],
            };
            let spec = ScanSpec {
                family: family_grid(family, seeds)?,
                eps: params.eps.clone(),
                d: match &params.d {
                    DArg::Auto => DChoice::Auto,
                    DArg::Fixed(d) => DChoice::Fixed(d.clone()),
                },
                rs: r.0.clone(),
                limits,
            };
            // Validates eps up front; d may still be per-instance.
            DensityParams::new(spec.eps.clone(), Rational::zero())?;
            let table = scan_family(&spec, !sequential)?;
            let text = match cli.format {
                Format::Json => {
                    let rows: Vec<_> = table
                        .rows
                        .iter()
                        .map(|row| match &row.outcome {
                            Ok(rep) => json!({ "family": row.family, "params": row.params, "report": rep }),
                            Err(e) => json!({ "family": row.family, "params": row.params, "r": row.r, "error": e }),
                        })
                        .collect();
                    with_newline(
                        serde_json::to_string_pretty(&json!({
                            "rows": rows,
                            "holds": table.holds_count(),
                            "violations": table.violation_count(),
                            "errors": table.error_count(),
                        }))
                        .map_err(|e| Error::InvalidParameter(e.to_string()))?,
                    )
                }
                _ => table.to_csv(),
            };
            graded(text, table.violation_count() == 0)
        }
    }
}

/// Parses `args` (including the program name), runs one subcommand and
/// returns the exit code. Output is written only after all computation.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational =
                matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if informational { stdout } else { stderr };
            let _ = write!(sink, "{}", e.render());
            return if informational { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &outcome.text),
                None => stdout.write_all(outcome.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_USAGE;
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            error_code(&e)
        }
    }
}
