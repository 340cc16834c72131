use std::path::{Path, PathBuf};

use oddcycle::cli::{run, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, EXIT_VIOLATED};
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn oddcycle(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("oddcycle").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn generated(dir: &Path, name: &str, gen_args: &[&str]) -> String {
    let mut args = vec!["gen"];
    args.extend_from_slice(gen_args);
    let r = oddcycle(&args);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    write(dir, name, &r.stdout).to_str().unwrap().to_string()
}

#[test]
fn clique_union_triangle_count() {
    let dir = TempDir::new().unwrap();
    let g = generated(
        dir.path(),
        "cu.txt",
        &["--family", "clique-union", "--k", "2", "--s", "3"],
    );
    let r = oddcycle(&["count", "--graph", &g, "--r", "3"]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(r.stdout, "12\n");
}

#[test]
fn gen_emits_canonical_edge_list() {
    let r = oddcycle(&["gen", "--family", "complete", "--n", "3"]);
    assert_eq!(r.stdout, "3 3\n0 1\n0 2\n1 2\n");
}

#[test]
fn count_paths_matches_degree_squares() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "c5.txt", "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
    let r = oddcycle(&[
        "count-paths",
        "--graph",
        g.to_str().unwrap(),
        "--k-path",
        "2",
    ]);
    assert_eq!(r.stdout, "20\n");
}

#[test]
fn density_zero_is_always_certified() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "e.txt", "6 0\n");
    let r = oddcycle(&[
        "check-density",
        "--graph",
        g.to_str().unwrap(),
        "--eps",
        "1/2",
        "--d",
        "0",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.contains("status: certified-exhaustive\n"));
}

#[test]
fn refuted_density_exits_one() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "e.txt", "4 0\n");
    let r = oddcycle(&[
        "check-density",
        "--graph",
        g.to_str().unwrap(),
        "--eps",
        "1/2",
        "--d",
        "1/100",
    ]);
    assert_eq!(r.code, EXIT_VIOLATED);
    assert!(r.stdout.contains("witness: {0,1}\n"));
}

#[test]
fn verify_holds_on_complete_graph() {
    let dir = TempDir::new().unwrap();
    let g = generated(dir.path(), "k8.txt", &["--family", "complete", "--n", "8"]);
    let r = oddcycle(&[
        "verify", "--graph", &g, "--eps", "1/2", "--d", "1", "--r", "3",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.contains("c_r: 336\n"));
    assert!(r.stdout.contains("holds: true\n"));
}

#[test]
fn verify_reports_violation_when_density_is_assumed_wrongly() {
    // K_2,2 has no triangles, so any positive bound fails.
    let dir = TempDir::new().unwrap();
    let g = generated(
        dir.path(),
        "k22.txt",
        &["--family", "multipartite", "--parts", "2,2"],
    );
    let r = oddcycle(&[
        "verify",
        "--graph",
        &g,
        "--eps",
        "1/100",
        "--d",
        "1",
        "--r",
        "3",
        "--limit-exhaustive",
        "2",
        "--assume-density",
        "certified-exhaustive",
    ]);
    assert_eq!(r.code, EXIT_VIOLATED, "{}{}", r.stdout, r.stderr);
    assert!(r.stdout.contains("holds: false\n"));
}

#[test]
fn verify_csv_has_header() {
    let dir = TempDir::new().unwrap();
    let g = generated(dir.path(), "k5.txt", &["--family", "complete", "--n", "5"]);
    let r = oddcycle(&[
        "verify", "--graph", &g, "--eps", "1/2", "--d", "auto", "--r", "5", "--format", "csv",
    ]);
    assert_eq!(r.code, EXIT_OK);
    let mut lines = r.stdout.lines();
    assert!(lines.next().unwrap().starts_with("family,params,n,m,"));
    assert!(lines.next().unwrap().starts_with("file,"));
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k2.txt", "2 1\n0 1\n");
    let g = g.to_str().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["count", "--graph", g, "--r", "1"],
        vec![
            "verify", "--graph", g, "--eps", "1/2", "--d", "1", "--r", "4",
        ],
        vec!["check-density", "--graph", g, "--eps", "0.5", "--d", "0"],
        vec!["check-density", "--graph", g, "--eps", "1", "--d", "0"],
        vec!["check-density", "--graph", g, "--eps", "1/2", "--d", "3/2"],
        vec!["gen", "--family", "random", "--n", "4", "--p", "2"],
        vec!["count", "--graph", "/nonexistent/graph.txt", "--r", "3"],
        vec!["no-such-command"],
    ];
    for args in cases {
        let r = oddcycle(&args);
        assert_eq!(r.code, EXIT_USAGE, "{args:?}: {}", r.stderr);
        assert!(r.stdout.is_empty());
        assert!(!r.stderr.is_empty());
    }
}

#[test]
fn malformed_graph_error_names_the_line() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "bad.txt", "3 2\n0 1\n1 1\n");
    let r = oddcycle(&["count", "--graph", g.to_str().unwrap(), "--r", "3"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.stderr.contains("line 3"), "{}", r.stderr);
}

#[test]
fn resource_guard_exits_three() {
    let dir = TempDir::new().unwrap();
    let g = generated(
        dir.path(),
        "k30.txt",
        &["--family", "complete", "--n", "30"],
    );
    let r = oddcycle(&["min-weighted", "--graph", &g, "--eps", "1/2", "--d", "1"]);
    assert_eq!(r.code, EXIT_RESOURCE, "{}", r.stderr);
    let r = oddcycle(&["check-density", "--graph", &g, "--eps", "1/2", "--d", "1/2"]);
    assert_eq!(r.code, EXIT_RESOURCE, "{}", r.stderr);
    let r = oddcycle(&[
        "audit-chain",
        "--graph",
        &g,
        "--eps",
        "1/2",
        "--d",
        "1/2",
        "--r",
        "3",
    ]);
    assert_eq!(r.code, EXIT_RESOURCE, "{}", r.stderr);
}

#[test]
fn identical_arguments_give_identical_output() {
    let dir = TempDir::new().unwrap();
    let g = generated(
        dir.path(),
        "r.txt",
        &[
            "--family", "random", "--n", "12", "--p", "1/2", "--seed", "7",
        ],
    );
    let commands: Vec<Vec<&str>> = vec![
        vec![
            "gen", "--family", "random", "--n", "12", "--p", "1/2", "--seed", "7",
        ],
        vec![
            "check-density",
            "--graph",
            &g,
            "--eps",
            "1/2",
            "--d",
            "1/2",
            "--iters",
            "500",
            "--seed",
            "3",
        ],
        vec![
            "lemma-f", "--graph", &g, "--eps", "1/2", "--d", "auto", "--trials", "20", "--seed",
            "5",
        ],
        vec![
            "audit-chain",
            "--graph",
            &g,
            "--eps",
            "1/2",
            "--d",
            "auto",
            "--r",
            "5",
            "--format",
            "json",
        ],
        vec![
            "scan", "--family", "random", "--n", "6..8", "--p", "1/2", "--seeds", "0,1", "--eps",
            "1/2", "--d", "auto", "--r", "3,5",
        ],
    ];
    for args in commands {
        let a = oddcycle(&args);
        let b = oddcycle(&args);
        assert_eq!(a.code, b.code, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty(), "{args:?}: {}", a.stderr);
    }
}

#[test]
fn scan_matches_sequential_run() {
    let args = [
        "scan",
        "--family",
        "clique-union",
        "--k",
        "2,3",
        "--s",
        "3..5",
        "--eps",
        "1/2",
        "--d",
        "auto",
        "--r",
        "3,5,7",
    ];
    let par = oddcycle(&args);
    let mut seq_args = args.to_vec();
    seq_args.push("--sequential");
    let seq = oddcycle(&seq_args);
    assert_eq!(par.code, EXIT_OK, "{}", par.stderr);
    assert_eq!(par.stdout, seq.stdout);
    assert_eq!(par.stdout.lines().count(), 1 + 6 * 3);
}

#[test]
fn out_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("k4.txt");
    let r = oddcycle(&[
        "gen",
        "--family",
        "complete",
        "--n",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.is_empty());
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("4 6\n"));
}

#[test]
fn help_exits_zero() {
    let r = oddcycle(&["--help"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.contains("audit-chain"));
}
