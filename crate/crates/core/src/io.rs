//! Text formats.
//!
//! Edge list: optional `#` comment lines, a header `n m`, then `m` lines
//! `u v` with 0-based vertex ids. Edge ids follow line order.
//!
//! Colouring: whitespace-separated positive colour ids in edge-id order,
//! `#` comment lines allowed.
//!
//! DOT output is export only; each edge carries `color="<hex>"` from the
//! fixed [`PALETTE`] (cycled) and `label="<id>"`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::coloring::EdgeColoring;
use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing header line `n m`")]
    MissingHeader,
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("expected {expected} entries, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("{0}")]
    Graph(GraphError),
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn two_numbers(line: usize, s: &str) -> Result<(usize, usize), ParseError> {
    let malformed = || ParseError {
        line,
        kind: ParseErrorKind::Malformed(s.to_string()),
    };
    let mut it = s.split_whitespace();
    let a = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(malformed)?;
    let b = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(malformed)?;
    if it.next().is_some() {
        return Err(malformed());
    }
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = data_lines(text);
    let (header_line, header) = lines.next().ok_or(ParseError {
        line: 1,
        kind: ParseErrorKind::MissingHeader,
    })?;
    let (n, m) = two_numbers(header_line, header)?;
    let mut pairs = Vec::with_capacity(m);
    let mut line_of = Vec::with_capacity(m);
    for (line, s) in lines {
        if pairs.len() == m {
            return Err(ParseError {
                line,
                kind: ParseErrorKind::CountMismatch {
                    expected: m,
                    found: m + 1,
                },
            });
        }
        pairs.push(two_numbers(line, s)?);
        line_of.push(line);
    }
    if pairs.len() != m {
        return Err(ParseError {
            line: header_line,
            kind: ParseErrorKind::CountMismatch {
                expected: m,
                found: pairs.len(),
            },
        });
    }
    Graph::new(n, pairs).map_err(|e| {
        let index = match e {
            GraphError::Loop { index, .. }
            | GraphError::Duplicate { index, .. }
            | GraphError::OutOfRange { index, .. } => index,
            _ => 0,
        };
        ParseError {
            line: line_of.get(index).copied().unwrap_or(header_line),
            kind: ParseErrorKind::Graph(e),
        }
    })
}

pub fn render_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

pub fn parse_coloring(text: &str, edges: usize) -> Result<EdgeColoring, ParseError> {
    let mut colors = Vec::with_capacity(edges);
    let mut last = 1;
    for (line, s) in data_lines(text) {
        last = line;
        for tok in s.split_whitespace() {
            let c: usize = tok.parse().map_err(|_| ParseError {
                line,
                kind: ParseErrorKind::Malformed(tok.to_string()),
            })?;
            if c == 0 {
                return Err(ParseError {
                    line,
                    kind: ParseErrorKind::Malformed("colour ids start at 1".into()),
                });
            }
            colors.push(c);
        }
    }
    if colors.len() != edges {
        return Err(ParseError {
            line: last,
            kind: ParseErrorKind::CountMismatch {
                expected: edges,
                found: colors.len(),
            },
        });
    }
    Ok(EdgeColoring::new(colors).expect("colours are positive"))
}

pub fn render_coloring(c: &EdgeColoring) -> String {
    let mut s = String::new();
    for &x in c.colors() {
        writeln!(s, "{x}").unwrap();
    }
    s
}

/// Fixed palette for DOT export; colour id `i` maps to `PALETTE[(i − 1) % 20]`.
pub const PALETTE: [&str; 20] = [
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#bfef45",
    "#fabed4", "#469990", "#dcbeff", "#9a6324", "#fffac8", "#800000", "#aaffc3", "#808000",
    "#ffd8b1", "#000075", "#a9a9a9", "#000000",
];

pub fn to_dot(g: &Graph, coloring: Option<&EdgeColoring>, name: &str) -> String {
    let mut s = String::new();
    if let Some(c) = coloring {
        s.push_str("// palette:");
        for id in 1..=c.k() {
            write!(s, " {id}={}", PALETTE[(id - 1) % PALETTE.len()]).unwrap();
        }
        s.push('\n');
    }
    writeln!(s, "graph {name} {{").unwrap();
    for v in 0..g.vertex_count() {
        writeln!(s, "  {v};").unwrap();
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        match coloring {
            Some(c) => {
                let id = c.color(e);
                writeln!(
                    s,
                    "  {u} -- {v} [color=\"{}\", label=\"{id}\"];",
                    PALETTE[(id - 1) % PALETTE.len()]
                )
                .unwrap();
            }
            None => writeln!(s, "  {u} -- {v};").unwrap(),
        }
    }
    s.push_str("}\n");
    s
}
