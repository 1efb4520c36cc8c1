//! The `HYG v1` text format.
//!
//! ```text
//! # optional comments
//! r n
//! v1 v2 ... vr
//! ...
//! ```
//!
//! Vertex ids on an edge line are strictly ascending. Lines whose first
//! non-blank character is `#` and blank lines are ignored. The writer emits
//! the header and edges in canonical order with no comments, so
//! `write(parse(write(g))) == write(g)` byte for byte.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

pub fn to_string(g: &Hypergraph) -> String {
    let mut out = String::with_capacity(16 + g.edge_count() * g.r() * 4);
    writeln!(out, "{} {}", g.r(), g.n()).unwrap();
    for e in g.edges() {
        let mut first = true;
        for v in e {
            if !first {
                out.push(' ');
            }
            write!(out, "{v}").unwrap();
            first = false;
        }
        out.push('\n');
    }
    out
}

pub fn parse(text: &str) -> Result<Hypergraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut flat: Vec<u32> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("not a non-negative integer: {tok:?}"),
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        match header {
            None => {
                if nums.len() != 2 {
                    return Err(parse_err(line_no, "header must be `r n`"));
                }
                if nums[0] == 0 {
                    return Err(parse_err(line_no, "uniformity must be at least 1"));
                }
                header = Some((nums[0], nums[1]));
            }
            Some((r, n)) => {
                if nums.len() != r {
                    return Err(parse_err(
                        line_no,
                        &format!("edge has {} vertices, expected {r}", nums.len()),
                    ));
                }
                if nums.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(parse_err(
                        line_no,
                        "edge vertices must be strictly ascending",
                    ));
                }
                if nums[r - 1] >= n {
                    return Err(parse_err(
                        line_no,
                        &format!("vertex {} out of range (n = {n})", nums[r - 1]),
                    ));
                }
                flat.extend(nums.iter().map(|&v| v as u32));
            }
        }
    }
    let (r, n) = header.ok_or_else(|| parse_err(0, "missing `r n` header"))?;
    Hypergraph::from_flat(r, n, flat).map_err(|e| match e {
        Error::InvalidInput(msg) => Error::Parse { line: 0, msg },
        other => other,
    })
}

pub fn read_file(path: impl AsRef<Path>) -> Result<Hypergraph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

pub fn write_file(path: impl AsRef<Path>, g: &Hypergraph) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, to_string(g))
        .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))
}

fn parse_err(line: usize, msg: &str) -> Error {
    Error::Parse {
        line,
        msg: msg.to_string(),
    }
}
