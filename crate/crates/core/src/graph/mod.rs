//! Graph storage, the counted query oracle, generators and edge-list I/O.

mod edge_list;
mod generate;
mod oracle;

pub use edge_list::{load_edge_list, read_edge_list_file, write_edge_list};
pub use generate::{generate, GeneratorSpec};
pub use oracle::{AccessCounters, GraphOracle, QueryError};

use crate::{DirectedEdge, Vertex};

/// Errors raised while building, loading or generating a graph.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("line {line}: malformed edge line {content:?}")]
    MalformedLine { line: usize, content: String },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: Vertex },
    #[error("line {line}: label {label} out of range for n = {n}")]
    LabelOutOfRange { line: usize, label: u64, n: u64 },
    #[error("header declares {declared} edges but {found} distinct edges were read")]
    HeaderMismatch { declared: u64, found: u64 },
    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(String),
    #[error("i/o error: {0}")]
    Io(String),
}

/// An immutable simple undirected graph in compressed adjacency form.
///
/// Vertices are `0..n`. The neighbors of `v` occupy
/// `neighbors[offsets[v]..offsets[v + 1]]`, sorted ascending. Samplers must
/// not rely on that order; it only makes enumeration deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<Vertex>,
}

impl Graph {
    /// Builds a graph on `n` vertices from undirected edges. Duplicates (in
    /// either orientation) collapse; self-loops and out-of-range labels are
    /// rejected with `line` set to the 1-based position in `edges`.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut directed: Vec<DirectedEdge> = Vec::new();
        for (idx, (u, v)) in edges.into_iter().enumerate() {
            let line = idx + 1;
            for label in [u, v] {
                if label as usize >= n {
                    return Err(GraphError::LabelOutOfRange {
                        line,
                        label: label.into(),
                        n: n as u64,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { line, vertex: u });
            }
            directed.push((u, v));
            directed.push((v, u));
        }
        directed.sort_unstable();
        directed.dedup();

        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in &directed {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let neighbors = directed.into_iter().map(|(_, v)| v).collect();
        let graph = Graph { offsets, neighbors };
        debug_assert_eq!(graph.offsets[n], graph.neighbors.len());
        debug_assert_eq!(graph.neighbors.len() % 2, 0);
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges `m`.
    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Direct degree lookup. Samplers go through [`GraphOracle`] instead so
    /// that every access is counted; this is for generators, validators and
    /// the enumeration oracle.
    pub fn degree(&self, v: Vertex) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        let v = v as usize;
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        (u as usize) < self.vertex_count()
            && (v as usize) < self.vertex_count()
            && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// All `2m` directed edges in lexicographic order.
    pub fn directed_edges(&self) -> impl Iterator<Item = DirectedEdge> + '_ {
        (0..self.vertex_count() as Vertex)
            .flat_map(move |u| self.neighbors(u).iter().map(move |&v| (u, v)))
    }

    /// The `m` undirected edges as `(u, v)` with `u < v`.
    pub fn undirected_edges(&self) -> impl Iterator<Item = DirectedEdge> + '_ {
        self.directed_edges().filter(|&(u, v)| u < v)
    }

    /// Number of neighbors of `v` with degree at most `theta`.
    pub fn light_degree(&self, v: Vertex, theta: u64) -> usize {
        self.neighbors(v)
            .iter()
            .filter(|&&w| self.degree(w) as u64 <= theta)
            .count()
    }

    /// Full scan of the structural invariants: offsets monotone and ending
    /// at `2m`, sorted duplicate-free lists without self-loops, and symmetric
    /// adjacency.
    pub fn validate(&self) -> Result<(), String> {
        if self.offsets.first() != Some(&0) {
            return Err("offsets[0] != 0".into());
        }
        if self.offsets.windows(2).any(|w| w[0] > w[1]) {
            return Err("offsets not nondecreasing".into());
        }
        if *self.offsets.last().unwrap() != self.neighbors.len() {
            return Err("offsets[n] != 2m".into());
        }
        let degree_sum: usize = (0..self.vertex_count() as Vertex)
            .map(|v| self.degree(v))
            .sum();
        if degree_sum != 2 * self.edge_count() || !self.neighbors.len().is_multiple_of(2) {
            return Err("degree sum != 2m".into());
        }
        for u in 0..self.vertex_count() as Vertex {
            let list = self.neighbors(u);
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("neighbor list of {u} not strictly sorted"));
            }
            for &v in list {
                if v == u {
                    return Err(format!("self-loop at {u}"));
                }
                if v as usize >= self.vertex_count() || !self.has_edge(v, u) {
                    return Err(format!("edge ({u},{v}) has no reverse"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_symmetric_sorted_lists() {
        let g = Graph::from_edges(4, [(2, 0), (0, 1), (3, 0)]).unwrap();
        assert_eq!(g.neighbors(0), &[1, 2, 3]);
        assert_eq!(g.neighbors(3), &[0]);
        assert_eq!(g.edge_count(), 3);
        g.validate().unwrap();
    }

    #[test]
    fn duplicate_in_either_orientation_collapses() {
        let g = Graph::from_edges(2, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.offsets(), &[0, 1, 2]);
    }

    #[test]
    fn rejects_self_loop_and_range() {
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (2, 2)]),
            Err(GraphError::SelfLoop { line: 2, vertex: 2 })
        );
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::LabelOutOfRange { label: 3, .. })
        ));
    }

    #[test]
    fn edgeless_graph_is_legal() {
        let g = Graph::from_edges(5, []).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.degree(4), 0);
        g.validate().unwrap();
    }
}
