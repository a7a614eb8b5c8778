//! Text formats: a plain edge list and graph6.
//!
//! Edge list: the first non-comment line is `n m`, followed by `m` lines
//! `u v` with 0-based endpoints. Lines starting with `#` are ignored.
//!
//! graph6: `N(n)` followed by the upper triangle of the adjacency matrix in
//! column order (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), six bits per byte, each
//! byte offset by 63.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("graph6: {0}")]
    Graph6(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GraphFormat {
    #[default]
    EdgeList,
    Graph6,
}

pub fn parse(text: &str, format: GraphFormat) -> Result<Graph, FormatError> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Graph6 => parse_graph6(text),
    }
}

pub fn write(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::EdgeList => write_edge_list(g),
        GraphFormat::Graph6 => {
            let mut s = write_graph6(g);
            s.push('\n');
            s
        }
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(FormatError::EdgeList {
        line: 0,
        message: "missing `n m` header".into(),
    })?;
    let [n, m] = parse_pair(hline, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        edges.push(parse_pair(line, text).map(|[u, v]| (u, v))?);
    }
    if edges.len() != m {
        return Err(FormatError::EdgeList {
            line: hline,
            message: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Ok(Graph::from_edge_list(n, &edges)?)
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2], FormatError> {
    let err = |message: String| FormatError::EdgeList { line, message };
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(err(format!("expected two integers, got `{text}`")));
    }
    let parse = |s: &str| s.parse::<usize>().map_err(|e| err(format!("`{s}`: {e}")));
    Ok([parse(fields[0])?, parse(fields[1])?])
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

const GRAPH6_HEADER: &str = ">>graph6<<";

pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let err = |m: &str| FormatError::Graph6(m.to_string());
    let body = text.trim_end_matches(['\n', '\r']);
    let body = body.strip_prefix(GRAPH6_HEADER).unwrap_or(body);
    let bytes = body.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(FormatError::Graph6(format!("byte {b} outside 63..=126")));
    }

    let (n, rest) = match bytes {
        [] => return Err(err("empty input")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(err("truncated 8-byte size prefix"));
            }
            (decode_size(&rest[..6]), &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(err("truncated 4-byte size prefix"));
            }
            (decode_size(&rest[..3]), &rest[3..])
        }
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };

    let bit_count = n * n.saturating_sub(1) / 2;
    if rest.len() != bit_count.div_ceil(6) {
        return Err(FormatError::Graph6(format!(
            "expected {} data bytes for n = {n}, found {}",
            bit_count.div_ceil(6),
            rest.len()
        )));
    }
    let bit_at = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (bit_count..rest.len() * 6).any(bit_at) {
        return Err(err("non-zero padding bits"));
    }

    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit_at(k) {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edge_list(n, &edges)?)
}

fn decode_size(bytes: &[u8]) -> usize {
    bytes
        .iter()
        .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize)
}

/// graph6 encoding without header or trailing newline.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn edge_list_with_comments() {
        let g = parse_edge_list("# triangle\n3 3\n0 1\n# mid\n1 2\n0 2\n").unwrap();
        assert_eq!(g, Graph::complete(3));
        assert_eq!(write_edge_list(&g), "3 3\n0 1\n0 2\n1 2\n");
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(
            parse_edge_list("3 2\n0 1\n"),
            Err(FormatError::EdgeList { .. })
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 x\n"),
            Err(FormatError::EdgeList { line: 2, .. })
        ));
        assert_eq!(
            parse_edge_list("2 1\n1 1\n"),
            Err(FormatError::Graph(GraphError::SelfLoop { u: 1, v: 1 }))
        );
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn graph6_known_strings() {
        // Well-known encodings: K4 = "C~", C5 = "Dhc", the empty graph on 0 is "?"
        assert_eq!(write_graph6(&Graph::complete(4)), "C~");
        let c5 = Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert_eq!(write_graph6(&c5), "Dhc");
        assert_eq!(write_graph6(&Graph::empty(0)), "?");
        assert_eq!(parse_graph6("C~\n").unwrap(), Graph::complete(4));
        assert_eq!(parse_graph6(">>graph6<<Dhc").unwrap(), c5);
    }

    #[test]
    fn graph6_large_prefix() {
        let g = Graph::from_edge_list(100, &[(0, 99), (3, 4)]).unwrap();
        let s = write_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_rejects_malformed() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("C").is_err());
        // "C~" with padding: K4 has 6 bits, no padding; n=3 has 3 bits + 3 padding
        assert!(parse_graph6("Bw").is_ok());
        assert!(parse_graph6("B~").is_err());
        assert!(parse_graph6("C\u{7f}").is_err());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..80).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut k = 0;
                let mut edges = Vec::new();
                for v in 1..n {
                    for u in 0..v {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::from_edge_list(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn graph6_round_trip_is_byte_exact(g in arb_graph()) {
            let s = write_graph6(&g);
            let back = parse_graph6(&s).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(write_graph6(&back), s);
        }

        #[test]
        fn edge_list_round_trip(g in arb_graph()) {
            prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
        }
    }
}
