//! The `.og` text format.
//!
//! ```text
//! # comment lines start with '#'
//! 3          <- vertex count
//! 0 1        <- arc 0 -> 1
//! 1 2
//! ```
//!
//! Undirected hosts carry an extra `undirected` header line before the vertex
//! count, and each pair is an edge. `encode` emits pairs sorted ascending, one
//! per line, with a trailing newline.

use std::collections::HashSet;
use std::fmt::Write as _;

use super::{LargeOrientedGraph, OrientedGraph, UndirectedGraph};
use crate::error::{Error, Result};

pub fn encode(g: &OrientedGraph) -> String {
    write_pairs(g.n(), None, g.arcs(), true)
}

pub fn encode_large(g: &LargeOrientedGraph) -> String {
    use super::Digraph;
    write_pairs(g.vertex_count(), None, g.arcs(), true)
}

pub fn encode_undirected(g: &UndirectedGraph) -> String {
    write_pairs(g.n(), Some("undirected"), g.edges().to_vec(), false)
}

/// Edge lists keep their order, since orientation masks index edges by position.
fn write_pairs(n: usize, header: Option<&str>, mut pairs: Vec<(usize, usize)>, sort: bool) -> String {
    if sort {
        pairs.sort_unstable();
    }
    let mut s = String::with_capacity(8 + pairs.len() * 6);
    if let Some(h) = header {
        s.push_str(h);
        s.push('\n');
    }
    let _ = writeln!(s, "{n}");
    for (u, v) in pairs {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn decode(text: &str) -> Result<OrientedGraph> {
    let parsed = parse(text, false)?;
    let mut g = OrientedGraph::empty(parsed.n)?;
    for p in parsed.pairs {
        if g.has_arc(p.u, p.v) {
            return Err(Error::InvariantViolation(format!(
                "line {}: duplicate arc {} {}",
                p.line, p.u, p.v
            )));
        }
        g.insert_arc(p.u, p.v).map_err(|e| at_line(p.line, e))?;
    }
    Ok(g)
}

pub fn decode_large(text: &str) -> Result<LargeOrientedGraph> {
    let parsed = parse(text, false)?;
    let arcs: Vec<(usize, usize)> = parsed.pairs.iter().map(|p| (p.u, p.v)).collect();
    LargeOrientedGraph::from_arcs(parsed.n, arcs)
}

pub fn decode_undirected(text: &str) -> Result<UndirectedGraph> {
    let parsed = parse(text, true)?;
    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(parsed.pairs.len());
    for p in parsed.pairs {
        if p.u == p.v {
            return Err(at_line(p.line, Error::LoopArc(p.u)));
        }
        if !seen.insert((p.u.min(p.v), p.u.max(p.v))) {
            return Err(Error::InvariantViolation(format!(
                "line {}: duplicate edge {} {}",
                p.line, p.u, p.v
            )));
        }
        edges.push((p.u, p.v));
    }
    UndirectedGraph::new(parsed.n, edges)
}

fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::LoopArc(v) => Error::InvariantViolation(format!("line {line}: loop at vertex {v}")),
        Error::AntiparallelViolation { u, v } => {
            Error::InvariantViolation(format!("line {line}: arc {u} {v} is antiparallel to an earlier arc"))
        }
        other => other,
    }
}

struct Pair {
    u: usize,
    v: usize,
    line: usize,
}

struct Parsed {
    n: usize,
    pairs: Vec<Pair>,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn number(tok: (usize, &str), line: usize) -> Result<usize> {
    tok.1.parse::<usize>().map_err(|_| {
        parse_error(
            line,
            tok.0,
            format!("expected a non-negative integer, found {:?}", tok.1),
        )
    })
}

fn parse(text: &str, undirected: bool) -> Result<Parsed> {
    let mut n = None;
    let mut saw_header = !undirected;
    let mut pairs = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks = tokens(raw);
        if toks.is_empty() || toks[0].1.starts_with('#') {
            continue;
        }
        if !saw_header {
            if toks.len() != 1 || toks[0].1 != "undirected" {
                return Err(parse_error(line, toks[0].0, "expected header line \"undirected\""));
            }
            saw_header = true;
            continue;
        }
        match n {
            None => {
                if toks.len() != 1 {
                    return Err(parse_error(
                        line,
                        toks[1].0,
                        "vertex-count line must hold a single integer",
                    ));
                }
                n = Some(number(toks[0], line)?);
            }
            Some(n) => {
                if toks.len() != 2 {
                    let col = toks.get(2).map_or(toks[0].0, |t| t.0);
                    return Err(parse_error(
                        line,
                        col,
                        format!("expected \"u v\", found {} token(s)", toks.len()),
                    ));
                }
                let u = number(toks[0], line)?;
                let v = number(toks[1], line)?;
                for (tok, x) in [(toks[0], u), (toks[1], v)] {
                    if x >= n {
                        return Err(parse_error(line, tok.0, format!("vertex {x} out of range for n = {n}")));
                    }
                }
                pairs.push(Pair { u, v, line });
            }
        }
    }
    match n {
        Some(n) => Ok(Parsed { n, pairs }),
        None if !saw_header => Err(parse_error(last_line.max(1), 1, "missing \"undirected\" header")),
        None => Err(parse_error(last_line.max(1), 1, "missing vertex count")),
    }
}
