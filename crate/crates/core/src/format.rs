// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Text formats for graphs and colorings.
//!
//! Graph files:
//!
//! ```text
//! # a triangle with one doubled edge
//! n 3
//! e 0 1 2
//! e 1 2 1
//! e 0 2 1
//! ```
//!
//! Coloring files start with `k <count>` followed by `c <v> <w> <copy>
//! <color>` and `u <v> <w> <copy>` lines. Simple graphs can also be read
//! from graph6 strings.

use std::fmt::Write as _;

use thiserror::Error;

use crate::coloring::{Color, PartialColoring};
use crate::graph::{EdgeInstance, GraphError, Multigraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("invalid graph6 string: {0}")]
    Graph6(&'static str),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Meaningful lines with their 1-based line numbers, comments stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn number<T: std::str::FromStr>(line: usize, field: Option<&&str>, what: &str) -> Result<T, ParseError> {
    let s = field.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    s.parse()
        .map_err(|_| syntax(line, format!("{what} is not a nonnegative integer: {s:?}")))
}

/// Parses the repo's multigraph text format.
pub fn parse_graph(text: &str) -> Result<Multigraph, ParseError> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize, u32)> = Vec::new();
    let mut last_line = 0;
    for (line, f) in content_lines(text) {
        last_line = line;
        match f[0] {
            "n" => {
                if n.is_some() {
                    return Err(syntax(line, "duplicate `n` line"));
                }
                n = Some(number(line, f.get(1), "vertex count")?);
                if f.len() > 2 {
                    return Err(syntax(line, "trailing fields"));
                }
            }
            "e" => {
                let count = n.ok_or_else(|| syntax(line, "`e` line before `n` line"))?;
                if f.len() != 4 {
                    return Err(syntax(line, "expected `e <v> <w> <mult>`"));
                }
                let v: usize = number(line, f.get(1), "vertex")?;
                let w: usize = number(line, f.get(2), "vertex")?;
                let m: u32 = number(line, f.get(3), "multiplicity")?;
                let err = if v == w {
                    Some(GraphError::Loop(v))
                } else if v >= count || w >= count {
                    Some(GraphError::VertexOutOfRange { v: v.max(w), n: count })
                } else if m == 0 {
                    Some(GraphError::ZeroMultiplicity)
                } else {
                    None
                };
                if let Some(source) = err {
                    return Err(ParseError::Graph { line, source });
                }
                edges.push((v, w, m));
            }
            other => return Err(syntax(line, format!("unknown record {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| syntax(last_line.max(1), "missing `n` line"))?;
    Multigraph::build(n, edges).map_err(|source| ParseError::Graph { line: 1, source })
}

pub fn write_graph(g: &Multigraph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (v, w, m) in g.pairs() {
        writeln!(out, "e {v} {w} {m}").unwrap();
    }
    out
}

/// Decodes a graph6 string (graphs with at most 62 vertices).
pub fn parse_graph6(s: &str) -> Result<Multigraph, ParseError> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(ParseError::Graph6("empty string"));
    }
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(ParseError::Graph6("byte outside 63..=126"));
    }
    if bytes[0] == 126 {
        return Err(ParseError::Graph6("graphs above 62 vertices are not supported"));
    }
    let n = (bytes[0] - 63) as usize;
    let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
    let data = &bytes[1..];
    if data.len() != needed {
        return Err(ParseError::Graph6("wrong length for vertex count"));
    }
    let mut edges = Vec::new();
    let mut bit = 0;
    for w in 1..n {
        for v in 0..w {
            let byte = data[bit / 6] - 63;
            if byte & (1 << (5 - bit % 6)) != 0 {
                edges.push((v, w, 1));
            }
            bit += 1;
        }
    }
    Multigraph::build(n, edges).map_err(|_| ParseError::Graph6("vertex count too large"))
}

/// Encodes a simple graph as graph6. Multiplicities above 1 are not
/// representable and yield `None`.
pub fn to_graph6(g: &Multigraph) -> Option<String> {
    let n = g.n();
    if !g.is_simple() || n > 62 {
        return None;
    }
    let mut out = vec![n as u8 + 63];
    let mut acc = 0u8;
    let mut bit = 0;
    for w in 1..n {
        for v in 0..w {
            acc = (acc << 1) | (g.mult(v, w) > 0) as u8;
            bit += 1;
            if bit % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if bit % 6 != 0 {
        out.push((acc << (6 - bit % 6)) + 63);
    }
    Some(String::from_utf8(out).expect("graph6 is ASCII"))
}

/// Reads either the text format or, for a single-token input, graph6.
pub fn parse_graph_auto(text: &str) -> Result<Multigraph, ParseError> {
    let mut lines = content_lines(text);
    match (lines.next(), lines.next()) {
        (Some((_, f)), None) if f.len() == 1 => parse_graph6(f[0]),
        _ => parse_graph(text),
    }
}

pub fn write_coloring(c: &PartialColoring) -> String {
    let mut out = format!("k {}\n", c.k());
    for e in c.host().edges() {
        match c.color_of(e) {
            Some(col) => writeln!(out, "c {} {} {} {col}", e.v, e.w, e.copy).unwrap(),
            None => writeln!(out, "u {} {} {}", e.v, e.w, e.copy).unwrap(),
        }
    }
    out
}

/// Parses a coloring of `host`. Edges not mentioned are uncolored.
pub fn parse_coloring(text: &str, host: &Multigraph) -> Result<PartialColoring, ParseError> {
    let mut k: Option<u32> = None;
    let mut colors: Vec<(EdgeInstance, Color)> = Vec::new();
    for (line, f) in content_lines(text) {
        match f[0] {
            "k" => k = Some(number(line, f.get(1), "color count")?),
            "c" | "u" => {
                let expected = if f[0] == "c" { 5 } else { 4 };
                if f.len() != expected {
                    return Err(syntax(line, "wrong number of fields"));
                }
                let v: usize = number(line, f.get(1), "vertex")?;
                let w: usize = number(line, f.get(2), "vertex")?;
                let copy: u32 = number(line, f.get(3), "copy index")?;
                let e = EdgeInstance::new(v, w, copy);
                if v == w || !host.contains_edge(e) {
                    return Err(syntax(line, format!("edge {e} is not in the graph")));
                }
                if f[0] == "c" {
                    colors.push((e, number(line, f.get(4), "color")?));
                }
            }
            other => return Err(syntax(line, format!("unknown record {other:?}"))),
        }
    }
    let k = k.ok_or_else(|| syntax(1, "missing `k` line"))?;
    PartialColoring::from_assignments(host.clone(), k, colors).map_err(|e| syntax(1, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn text_round_trip() {
        let g = Multigraph::build(3, [(0, 1, 2), (1, 2, 1), (0, 2, 1)]).unwrap();
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn comments_and_accumulation() {
        let g = parse_graph("# doubled\nn 2\ne 0 1 1  # first\n\ne 1 0 1\n").unwrap();
        assert_eq!(g.mult(0, 1), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_graph("n 3\ne 0 0 1\n").unwrap_err();
        assert_eq!(err, ParseError::Graph { line: 2, source: GraphError::Loop(0) });
        let err = parse_graph("n 3\ne 0 1\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }));
        let err = parse_graph("n 2\n\ne 0 5 1\n").unwrap_err();
        assert!(matches!(err, ParseError::Graph { line: 3, .. }));
        assert!(matches!(parse_graph("e 0 1 1"), Err(ParseError::Syntax { line: 1, .. })));
        assert!(matches!(parse_graph("n x"), Err(ParseError::Syntax { line: 1, .. })));
    }

    #[test]
    fn graph6_known_strings() {
        // Standard encodings: K3 = "Bw", C5 = "Dhc", K4 = "C~".
        assert_eq!(parse_graph6("Bw").unwrap(), named::complete(3));
        assert_eq!(parse_graph6("C~").unwrap(), named::complete(4));
        assert_eq!(to_graph6(&named::complete(3)).unwrap(), "Bw");
        let c5 = parse_graph6("Dhc").unwrap();
        assert_eq!(c5.edge_count(), 5);
        assert!((0..5).all(|v| c5.degree(v) == 2));
        assert!(parse_graph6("B").is_err());
    }

    #[test]
    fn graph6_round_trip() {
        for seed in 0..50 {
            let g = crate::graph::random_multigraph(seed, 1 + seed as usize % 12, 1, 0.5).unwrap();
            assert_eq!(parse_graph6(&to_graph6(&g).unwrap()).unwrap(), g);
        }
        let doubled = Multigraph::build(2, [(0, 1, 2)]).unwrap();
        assert!(to_graph6(&doubled).is_none());
    }

    #[test]
    fn auto_detection() {
        assert_eq!(parse_graph_auto("Bw\n").unwrap(), named::complete(3));
        assert_eq!(parse_graph_auto("n 1\n").unwrap(), Multigraph::new(1).unwrap());
    }

    #[test]
    fn coloring_round_trip() {
        let g = named::path(3);
        let c = PartialColoring::from_assignments(g.clone(), 2, [(EdgeInstance::new(0, 1, 0), 2)])
            .unwrap();
        let text = write_coloring(&c);
        assert_eq!(text, "k 2\nc 0 1 0 2\nu 1 2 0\n");
        assert_eq!(parse_coloring(&text, &g).unwrap(), c);
    }
}
