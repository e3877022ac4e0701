//! Text formats: graph6 (short form), plain edge lists and DOT output.

use std::fmt::Write as _;

use thiserror::Error;

use crate::cover::Cover;
use crate::graph::{Graph, GraphError, VertexSet};

/// Largest order encodable in the one-byte graph6 header.
pub const GRAPH6_MAX_N: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("malformed graph6 header byte {0:#04x}")]
    BadHeader(u8),
    #[error("graph6 byte {0:#04x} outside the printable range 63..=126")]
    BadByte(u8),
    #[error("graph6 payload has {found} bytes, expected {expected} for n = {n}")]
    PayloadLength { n: usize, expected: usize, found: usize },
    #[error("graph6 padding bits are not zero")]
    Padding,
    #[error("graph has {0} vertices; only the short graph6 form (n <= 62) is supported")]
    TooLarge(usize),
    #[error("edge list line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn payload_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Decodes one graph6 line (an optional `>>graph6<<` prefix is accepted).
pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    let (&head, payload) = bytes.split_first().ok_or(ParseError::Empty)?;
    if !(63..=63 + GRAPH6_MAX_N as u8).contains(&head) {
        return Err(ParseError::BadHeader(head));
    }
    let n = (head - 63) as usize;
    let expected = payload_len(n);
    if payload.len() != expected {
        return Err(ParseError::PayloadLength { n, expected, found: payload.len() });
    }
    let mut bits = Vec::with_capacity(expected * 6);
    for &b in payload {
        if !(63..=126).contains(&b) {
            return Err(ParseError::BadByte(b));
        }
        let x = b - 63;
        bits.extend((0..6).rev().map(|k| x >> k & 1 == 1));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if bits[k..].iter().any(|&b| b) {
        return Err(ParseError::Padding);
    }
    Ok(Graph::from_edge_list(n, &edges)?)
}

/// Encodes a graph in short-form graph6.
pub fn to_graph6(g: &Graph) -> Result<String, ParseError> {
    let n = g.n();
    if n > GRAPH6_MAX_N {
        return Err(ParseError::TooLarge(n));
    }
    let mut out = String::with_capacity(1 + payload_len(n));
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

/// Parses the edge-list text format: the vertex count on the first line,
/// then one `u v` pair per line. Blank lines and `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, first) = lines.next().ok_or(ParseError::Empty)?;
    let n: usize = first
        .parse()
        .map_err(|_| ParseError::EdgeList { line, msg: format!("expected vertex count, got {first:?}") })?;
    let mut edges = Vec::new();
    for (line, l) in lines {
        let nums: Vec<&str> = l.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| ParseError::EdgeList { line, msg: format!("bad vertex {s:?}") })
        };
        match nums.as_slice() {
            [u, v] => edges.push((parse(u)?, parse(v)?)),
            _ => return Err(ParseError::EdgeList { line, msg: "expected two vertices".into() }),
        }
    }
    Ok(Graph::from_edge_list(n, &edges)?)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// Parses a whole input: either one edge list (first token is a bare
/// integer) or any number of graph6 lines.
pub fn parse_graphs(text: &str) -> Result<Vec<Graph>, ParseError> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .ok_or(ParseError::Empty)?;
    if first.chars().all(|c| c.is_ascii_digit()) {
        return Ok(vec![parse_edge_list(text)?]);
    }
    text.lines().map(str::trim).filter(|l| !l.is_empty()).map(parse_graph6).collect()
}

/// Optional decorations for [`to_dot`].
#[derive(Debug, Clone, Copy, Default)]
pub struct DotAnnotations<'a> {
    /// Drawn filled (black).
    pub black: Option<VertexSet>,
    /// Each part gets its own colour class.
    pub cover: Option<&'a Cover>,
}

const PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#393b79", "#637939",
];

/// Deterministic DOT rendering.
pub fn to_dot(g: &Graph, ann: DotAnnotations<'_>) -> String {
    let mut s = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..g.n() {
        let mut attrs = Vec::new();
        if let Some(cover) = ann.cover {
            if let Some(i) = cover.parts.iter().position(|p| p.contains(v)) {
                attrs.push(format!("color=\"{}\"", PALETTE[i % PALETTE.len()]));
                attrs.push("penwidth=2".to_string());
                attrs.push(format!("class=\"part{i}\""));
            }
        }
        if ann.black.is_some_and(|b| b.contains(v)) {
            attrs.push("style=filled".into());
            attrs.push("fillcolor=black".into());
            attrs.push("fontcolor=white".into());
        }
        if attrs.is_empty() {
            let _ = writeln!(s, "  {v};");
        } else {
            let _ = writeln!(s, "  {v} [{}];", attrs.join(", "));
        }
    }
    for (u, v) in g.edges() {
        let same_part = ann
            .cover
            .and_then(|c| c.parts.iter().position(|p| p.contains(u) && p.contains(v)));
        match same_part {
            Some(i) => {
                let _ = writeln!(s, "  {u} -- {v} [color=\"{}\", penwidth=2];", PALETTE[i % PALETTE.len()]);
            }
            None => {
                let _ = writeln!(s, "  {u} -- {v};");
            }
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::CoverKind;

    #[test]
    fn small_graph6_strings() {
        let k3 = parse_graph6("Bw").unwrap();
        assert_eq!(k3.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        let p3 = parse_graph6("Bg").unwrap();
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);
        let k1 = parse_graph6("@").unwrap();
        assert_eq!((k1.n(), k1.edge_count()), (1, 0));
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
        for s in ["Bw", "Bg", "@", "?"] {
            assert_eq!(to_graph6(&parse_graph6(s).unwrap()).unwrap(), s);
        }
    }

    #[test]
    fn graph6_errors() {
        assert_eq!(parse_graph6(""), Err(ParseError::Empty));
        assert_eq!(parse_graph6("~"), Err(ParseError::BadHeader(b'~')));
        assert!(matches!(parse_graph6("B"), Err(ParseError::PayloadLength { .. })));
        assert!(matches!(parse_graph6("Bww"), Err(ParseError::PayloadLength { .. })));
        // n = 3 uses three payload bits; the low three must be zero
        assert_eq!(parse_graph6("Bx"), Err(ParseError::Padding));
        assert_eq!(parse_graph6("B!"), Err(ParseError::BadByte(b'!')));
        assert!(to_graph6(&Graph::empty(63).unwrap()).is_err());
    }

    #[test]
    fn edge_list_text() {
        let g = parse_edge_list("3\n0 1\n# comment\n1 2\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
        assert!(matches!(parse_edge_list("3\n0 1 2\n"), Err(ParseError::EdgeList { line: 2, .. })));
        assert!(matches!(parse_edge_list("2\n0 5\n"), Err(ParseError::Graph(_))));
        assert_eq!(parse_graphs("Bw\nBg\n").unwrap().len(), 2);
        assert_eq!(parse_graphs("2\n0 1\n").unwrap()[0].edge_count(), 1);
    }

    #[test]
    fn dot_rendering() {
        let k1 = Graph::empty(1).unwrap();
        assert_eq!(to_dot(&k1, DotAnnotations::default()), "graph G {\n  node [shape=circle];\n  0;\n}\n");

        let p2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        let dot = to_dot(&p2, DotAnnotations { black: Some(VertexSet(1)), cover: None });
        assert!(dot.contains("0 [style=filled"));
        assert!(dot.contains("  1;\n"));

        let c3 = Graph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let cover = Cover { kind: CoverKind::Path, parts: vec![VertexSet(0b011), VertexSet(0b100)] };
        let dot = to_dot(&c3, DotAnnotations { black: None, cover: Some(&cover) });
        assert!(dot.contains("class=\"part0\"") && dot.contains("class=\"part1\""));
    }
}
