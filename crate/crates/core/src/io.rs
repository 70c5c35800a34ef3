//! Plain-text edge-list format: a header line `n m`, followed by `m` lines
//! `u v` with `u < v`, ascending, one edge per line.

use crate::error::GraphError;
use crate::graph::Graph;

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize), GraphError> {
    let err = |msg: &str| GraphError::Parse {
        line: lineno,
        msg: msg.to_string(),
    };
    let mut it = line.split_ascii_whitespace();
    let a = it.next().ok_or_else(|| err("expected two integers"))?;
    let b = it.next().ok_or_else(|| err("expected two integers"))?;
    if it.next().is_some() {
        return Err(err("trailing tokens"));
    }
    let a = a
        .parse()
        .map_err(|_| err(&format!("not a non-negative integer: {a:?}")))?;
    let b = b
        .parse()
        .map_err(|_| err(&format!("not a non-negative integer: {b:?}")))?;
    Ok((a, b))
}

pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or(GraphError::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let (n, m) = parse_pair(header, 1)?;
    let mut g = Graph::new(n).map_err(|_| GraphError::Parse {
        line: 1,
        msg: "vertex count must be at least 1".into(),
    })?;
    let mut seen = 0;
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        if seen == m {
            return Err(GraphError::Parse {
                line: lineno,
                msg: format!("more than the declared {m} edges"),
            });
        }
        let (u, v) = parse_pair(line, lineno)?;
        g.add_edge(u, v).map_err(|e| GraphError::Parse {
            line: lineno,
            msg: e.to_string(),
        })?;
        seen += 1;
    }
    if seen != m {
        return Err(GraphError::Parse {
            line: text.lines().count().max(1),
            msg: format!("declared {m} edges, found {seen}"),
        });
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
