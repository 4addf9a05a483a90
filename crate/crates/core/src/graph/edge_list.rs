use std::io::{BufRead, Write};
use std::path::Path;

use super::{Graph, GraphError};
use crate::Vertex;

/// Parses the edge-list text format.
///
/// One edge `u v` per line, 0-based labels separated by whitespace. Lines
/// starting with `#` are comments. An optional header `% n m` may appear
/// before the first edge; when present, labels must be below `n` and the
/// number of distinct edges must equal `m`. Without a header, `n` is one
/// more than the largest label.
pub fn load_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut header: Option<(u64, u64)> = None;
    let mut edges: Vec<(u64, u64, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let malformed = || GraphError::MalformedLine {
            line,
            content: raw.to_string(),
        };
        if let Some(rest) = trimmed.strip_prefix('%') {
            if header.is_some() || !edges.is_empty() {
                return Err(malformed());
            }
            header = Some(parse_pair(rest).ok_or_else(malformed)?);
            continue;
        }
        let (u, v) = parse_pair(trimmed).ok_or_else(malformed)?;
        if u == v {
            let vertex = Vertex::try_from(u).map_err(|_| malformed())?;
            return Err(GraphError::SelfLoop { line, vertex });
        }
        edges.push((u, v, line));
    }

    let n = match header {
        Some((n, _)) => n,
        None => edges.iter().map(|&(u, v, _)| u.max(v) + 1).max().unwrap_or(0),
    };
    if n > u64::from(Vertex::MAX) {
        return Err(GraphError::InfeasibleSpec(format!("n = {n} exceeds label range")));
    }
    for &(u, v, line) in &edges {
        for label in [u, v] {
            if label >= n {
                return Err(GraphError::LabelOutOfRange { line, label, n });
            }
        }
    }
    let graph = Graph::from_edges(
        n as usize,
        edges.iter().map(|&(u, v, _)| (u as Vertex, v as Vertex)),
    )?;
    if let Some((_, m)) = header {
        if graph.edge_count() as u64 != m {
            return Err(GraphError::HeaderMismatch {
                declared: m,
                found: graph.edge_count() as u64,
            });
        }
    }
    Ok(graph)
}

fn parse_pair(s: &str) -> Option<(u64, u64)> {
    let mut it = s.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

pub fn read_edge_list_file(path: &Path) -> Result<Graph, GraphError> {
    let file = std::fs::File::open(path).map_err(|e| GraphError::Io(e.to_string()))?;
    let mut text = String::new();
    for line in std::io::BufReader::new(file).lines() {
        text.push_str(&line.map_err(|e| GraphError::Io(e.to_string()))?);
        text.push('\n');
    }
    load_edge_list(&text)
}

/// Writes `% n m` followed by each undirected edge once as `u v` with `u < v`.
pub fn write_edge_list<W: Write>(graph: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "% {} {}", graph.vertex_count(), graph.edge_count())?;
    for (u, v) in graph.undirected_edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_edge_path() {
        let g = load_edge_list("0 1\n1 2").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 2));
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn duplicates_collapse() {
        let g = load_edge_list("0 1\n0 1").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
    }

    #[test]
    fn self_loop_is_an_error() {
        assert_eq!(
            load_edge_list("0 0"),
            Err(GraphError::SelfLoop { line: 1, vertex: 0 })
        );
    }

    #[test]
    fn comments_blank_lines_and_header() {
        let g = load_edge_list("# a triangle\n% 5 3\n\n0 1\n1 2\n  2 0\n").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 3));
        assert_eq!(g.degree(4), 0);
    }

    #[test]
    fn header_is_validated() {
        assert!(matches!(
            load_edge_list("% 3 2\n0 1"),
            Err(GraphError::HeaderMismatch { declared: 2, found: 1 })
        ));
        assert!(matches!(
            load_edge_list("% 2 1\n0 2"),
            Err(GraphError::LabelOutOfRange { line: 2, label: 2, n: 2 })
        ));
        assert!(matches!(
            load_edge_list("0 1\n% 2 1"),
            Err(GraphError::MalformedLine { line: 2, .. })
        ));
    }

    #[test]
    fn malformed_lines() {
        for bad in ["0", "0 x", "0 1 2", "-1 2", "a b"] {
            assert!(
                matches!(load_edge_list(bad), Err(GraphError::MalformedLine { line: 1, .. })),
                "{bad}"
            );
        }
    }

    #[test]
    fn write_then_load_preserves_graph() {
        let g = load_edge_list("% 6 4\n0 1\n4 1\n2 3\n3 0").unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let back = load_edge_list(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back, g);
    }
}
