use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::One;

use super::model::{DecoratedGraph, GraphError, PlumbingGraph};

fn is_valid_id(tok: &str) -> bool {
    !tok.is_empty() && tok.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parse the line-oriented graph format:
///
/// ```text
/// # comment
/// vertex <id> <euler>
/// edge <id> <id>
/// weight <id> <n>      # orbifold weight, n >= 1
/// ```
pub fn parse_graph(text: &str) -> Result<DecoratedGraph, GraphError> {
    let mut graph = PlumbingGraph::new();
    let mut weights: Vec<(String, BigInt)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        // (token, 1-based column) pairs
        let toks: Vec<(usize, &str)> = content
            .split_whitespace()
            .map(|t| {
                let col = t.as_ptr() as usize - content.as_ptr() as usize + 1;
                (col, t)
            })
            .collect();
        if toks.is_empty() {
            continue;
        }
        let err = |col: usize, reason: String| GraphError::ParseError { line, col, reason };
        let (kw_col, kw) = toks[0];
        match kw {
            "vertex" => {
                if toks.len() != 3 {
                    return Err(err(kw_col, "expected: vertex <id> <euler>".into()));
                }
                let (id_col, id) = toks[1];
                if !is_valid_id(id) {
                    return Err(err(id_col, format!("invalid vertex id `{id}`")));
                }
                let (e_col, e) = toks[2];
                let euler: BigInt = e
                    .parse()
                    .map_err(|_| err(e_col, format!("invalid integer `{e}`")))?;
                graph.add_vertex(id, euler)?;
            }
            "edge" => {
                if toks.len() != 3 {
                    return Err(err(kw_col, "expected: edge <id> <id>".into()));
                }
                graph.add_edge(toks[1].1, toks[2].1)?;
            }
            "weight" => {
                if toks.len() != 3 {
                    return Err(err(kw_col, "expected: weight <id> <n>".into()));
                }
                let (n_col, n) = toks[2];
                let w: BigInt = n
                    .parse()
                    .map_err(|_| err(n_col, format!("invalid integer `{n}`")))?;
                weights.push((toks[1].1.to_string(), w));
            }
            other => {
                return Err(err(kw_col, format!("unknown directive `{other}`")));
            }
        }
    }

    DecoratedGraph::with_weights(graph, weights)
}

/// Canonical serialization: vertices sorted by id, then edges sorted
/// lexicographically, then the weights greater than one.
pub fn serialize(d: &DecoratedGraph) -> String {
    let g = d.graph();
    let mut out = String::new();
    for id in g.vertex_ids() {
        writeln!(out, "vertex {} {}", id, g.euler(&id).unwrap()).unwrap();
    }
    for (a, b) in g.edges() {
        writeln!(out, "edge {a} {b}").unwrap();
    }
    for id in g.vertex_ids() {
        let w = d.weight(&id);
        if !w.is_one() {
            writeln!(out, "weight {id} {w}").unwrap();
        }
    }
    out
}
