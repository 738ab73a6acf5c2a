//! Text formats for graphs and colorings.
//!
//! Graph file:
//!
//! ```text
//! p <n> <m>
//! e <u> <v>      (exactly m lines, 1-based ids)
//! ```
//!
//! Coloring file:
//!
//! ```text
//! n <N>
//! r <u> <v>      (zero or more red pairs, 1-based; unlisted pairs are blue)
//! ```
//!
//! Blank lines are ignored. Serializers emit pairs in lexicographic order.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, TwoColoring};

/// Non-blank lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, toks)| !toks.is_empty())
}

fn number(line: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| {
        Error::parse(
            line,
            format!("{what} is not a non-negative integer: {tok:?}"),
        )
    })
}

/// Reads a `<tag> <u> <v>` pair line and checks it against `n`, returning 0-based ids.
fn pair(line: usize, toks: &[&str], tag: &str, n: usize) -> Result<(usize, usize)> {
    if toks.len() != 3 || toks[0] != tag {
        return Err(Error::parse(
            line,
            format!("expected `{tag} <u> <v>`, got {:?}", toks.join(" ")),
        ));
    }
    let u = number(line, toks[1], "vertex id")?;
    let v = number(line, toks[2], "vertex id")?;
    for id in [u, v] {
        if id == 0 || id > n {
            return Err(Error::parse(
                line,
                format!("vertex id {id} out of range 1..={n}"),
            ));
        }
    }
    if u == v {
        return Err(Error::parse(line, format!("self-loop at vertex {u}")));
    }
    Ok((u.min(v) - 1, u.max(v) - 1))
}

/// Collects pair lines, rejecting any unordered pair seen twice.
fn pairs<'a, I>(body: I, tag: &str, n: usize) -> Result<Vec<(usize, usize)>>
where
    I: Iterator<Item = (usize, Vec<&'a str>)>,
{
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (line, toks) in body {
        let p = pair(line, &toks, tag, n)?;
        if !seen.insert(p) {
            return Err(Error::parse(
                line,
                format!("duplicate edge {} {}", p.0 + 1, p.1 + 1),
            ));
        }
        out.push(p);
    }
    Ok(out)
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut it = lines(text);
    let (hline, header) = it
        .next()
        .ok_or_else(|| Error::parse(1, "missing header `p <n> <m>`"))?;
    if header.len() != 3 || header[0] != "p" {
        return Err(Error::parse(
            hline,
            format!(
                "malformed header, expected `p <n> <m>`, got {:?}",
                header.join(" ")
            ),
        ));
    }
    let n = number(hline, header[1], "vertex count")?;
    let m = number(hline, header[2], "edge count")?;

    let body: Vec<_> = it.collect();
    let last_line = body.last().map_or(hline, |(l, _)| *l);
    let edges = pairs(body.into_iter(), "e", n)?;
    if edges.len() != m {
        return Err(Error::parse(
            last_line,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Ok(Graph::new(n, edges).expect("pairs validated above"))
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p {} {}", g.n(), g.edge_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn parse_coloring(text: &str) -> Result<TwoColoring> {
    let mut it = lines(text);
    let (hline, header) = it
        .next()
        .ok_or_else(|| Error::parse(1, "missing header `n <N>`"))?;
    if header.len() != 2 || header[0] != "n" {
        return Err(Error::parse(
            hline,
            format!(
                "malformed header, expected `n <N>`, got {:?}",
                header.join(" ")
            ),
        ));
    }
    let n = number(hline, header[1], "order")?;
    if n < 1 {
        return Err(Error::parse(hline, "coloring order must be at least 1"));
    }
    let red = pairs(it, "r", n)?;
    Ok(TwoColoring::from_red_edges(n, red).expect("pairs validated above"))
}

pub fn serialize_coloring(c: &TwoColoring) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", c.n()).unwrap();
    for (u, v) in c.red_edges() {
        writeln!(out, "r {} {}", u + 1, v + 1).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Color;

    fn line_of(e: Error) -> usize {
        match e {
            Error::Parse { line, .. } => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parses_path() {
        let g = parse_graph("p 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g, Graph::path(3));
        let e = parse_graph("p 2 0").unwrap();
        assert_eq!((e.n(), e.edge_count()), (2, 0));
    }

    #[test]
    fn graph_round_trip() {
        let k3 = Graph::complete(3);
        let text = serialize_graph(&k3);
        assert_eq!(text, "p 3 3\ne 1 2\ne 1 3\ne 2 3\n");
        assert_eq!(parse_graph(&text).unwrap(), k3);
    }

    #[test]
    fn graph_errors_carry_line_numbers() {
        assert_eq!(line_of(parse_graph("").unwrap_err()), 1);
        assert_eq!(line_of(parse_graph("q 3 1\ne 1 2").unwrap_err()), 1);
        assert_eq!(line_of(parse_graph("p x 1\ne 1 2").unwrap_err()), 1);
        assert_eq!(line_of(parse_graph("p 3 2\ne 1 2\ne 1 4").unwrap_err()), 3);
        assert_eq!(line_of(parse_graph("p 3 2\ne 0 2\ne 1 3").unwrap_err()), 2);
        assert_eq!(line_of(parse_graph("p 3 2\ne 1 2\ne 2 1").unwrap_err()), 3);
        assert_eq!(line_of(parse_graph("p 3 1\ne 2 2").unwrap_err()), 2);
        assert_eq!(line_of(parse_graph("p 3 1\ne 1 2 3").unwrap_err()), 2);
        assert!(parse_graph("p 3 2\ne 1 2").is_err());
        assert!(parse_graph("p 3 1\ne 1 2\ne 2 3").is_err());
    }

    #[test]
    fn coloring_examples() {
        let c = parse_coloring("n 5").unwrap();
        assert_eq!(c.edge_count(Color::Red), 0);
        assert_eq!(c.edge_count(Color::Blue), 10);
        let c = parse_coloring("n 3\nr 1 2\n").unwrap();
        assert_eq!(c.edge_count(Color::Red), 1);
        assert_eq!(c.edge_count(Color::Blue), 2);
        assert_eq!(c.color(0, 1), Color::Red);
    }

    #[test]
    fn coloring_errors() {
        assert_eq!(line_of(parse_coloring("n 0").unwrap_err()), 1);
        assert_eq!(line_of(parse_coloring("p 3 0").unwrap_err()), 1);
        assert_eq!(line_of(parse_coloring("n 3\nr 1 2\nr 2 1").unwrap_err()), 3);
        assert_eq!(line_of(parse_coloring("n 3\n\nr 3 3").unwrap_err()), 3);
        assert_eq!(line_of(parse_coloring("n 3\nr 1 4").unwrap_err()), 2);
        assert_eq!(line_of(parse_coloring("n 3\ne 1 2").unwrap_err()), 2);
    }
}
