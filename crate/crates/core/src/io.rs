//! Edge-list text format.
//!
//! ```text
//! n m
//! u v      (m lines, 0 <= u, v < n)
//! ```
//!
//! Parsing accepts either endpoint order; serialization emits `u < v` in
//! lexicographic order, one LF-terminated line per edge.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::Parse {
            line: lineno,
            msg: format!("missing {what}"),
        })?;
        tok.parse::<usize>().map_err(|_| Error::Parse {
            line: lineno,
            msg: format!("{what} {tok:?} is not a nonnegative integer"),
        })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if let Some(extra) = it.next() {
        return Err(Error::Parse {
            line: lineno,
            msg: format!("unexpected trailing field {extra:?}"),
        });
    }
    Ok((a, b))
}

pub fn from_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.split('\n').enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty input".into(),
    })?;
    let (n, m) = parse_pair(header, 1)?;
    let mut g = Graph::empty(n);
    let mut seen = 0usize;
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            // Only a trailing blank line is tolerated.
            if text.split('\n').skip(lineno).all(|l| l.trim().is_empty()) {
                break;
            }
            return Err(Error::Parse {
                line: lineno,
                msg: "blank line".into(),
            });
        }
        if seen == m {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("more than the declared {m} edges"),
            });
        }
        let (u, v) = parse_pair(line, lineno)?;
        g.try_add_edge(u, v, lineno)?;
        seen += 1;
    }
    if seen != m {
        return Err(Error::Parse {
            line: seen + 2,
            msg: format!("header declares {m} edges but {seen} were given"),
        });
    }
    g.check_invariants();
    Ok(g)
}

/// Canonical serialization; bit-exact for equal graphs.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(8 * (g.m() + 1));
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    from_edge_list(&text)
}

pub fn write_graph(path: impl AsRef<Path>, g: &Graph) -> Result<()> {
    std::fs::write(path, to_edge_list(g))?;
    Ok(())
}
