use serde::{Deserialize, Serialize};

use super::Graph;
use crate::Vertex;

/// Query counts for one run. Counters only ever go up.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccessCounters {
    pub vertex_queries: u64,
    pub degree_queries: u64,
    pub neighbor_queries: u64,
}

impl AccessCounters {
    pub fn total(&self) -> u64 {
        self.vertex_queries + self.degree_queries + self.neighbor_queries
    }

    /// Component-wise difference `self - earlier`.
    pub fn since(&self, earlier: &AccessCounters) -> AccessCounters {
        AccessCounters {
            vertex_queries: self.vertex_queries - earlier.vertex_queries,
            degree_queries: self.degree_queries - earlier.degree_queries,
            neighbor_queries: self.neighbor_queries - earlier.neighbor_queries,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum QueryError {
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: u64, bound: u64 },
}

/// The adjacency-list query model over a shared graph, with exact query
/// accounting. This is the only path through which samplers see the graph.
///
/// Each concurrent run owns its own oracle; the graph itself is borrowed
/// immutably and can back any number of them.
#[derive(Debug)]
pub struct GraphOracle<'g> {
    graph: &'g Graph,
    counters: AccessCounters,
}

impl<'g> GraphOracle<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        GraphOracle {
            graph,
            counters: AccessCounters::default(),
        }
    }

    /// `n` is known to the algorithm up front and costs nothing.
    pub fn vertex_count(&self) -> u64 {
        self.graph.vertex_count() as u64
    }

    pub fn counters(&self) -> AccessCounters {
        self.counters
    }

    /// Returns the `i`-th vertex. Labels are the identity.
    pub fn vertex(&mut self, i: u64) -> Result<Vertex, QueryError> {
        let n = self.vertex_count();
        if i >= n {
            return Err(QueryError::IndexOutOfRange { index: i, bound: n });
        }
        self.counters.vertex_queries += 1;
        Ok(i as Vertex)
    }

    pub fn degree(&mut self, v: Vertex) -> Result<u64, QueryError> {
        self.check_vertex(v)?;
        self.counters.degree_queries += 1;
        Ok(self.graph.degree(v) as u64)
    }

    /// Returns the `j`-th neighbor of `v`, 0-based.
    pub fn neighbor(&mut self, v: Vertex, j: u64) -> Result<Vertex, QueryError> {
        self.check_vertex(v)?;
        let list = self.graph.neighbors(v);
        if j >= list.len() as u64 {
            return Err(QueryError::IndexOutOfRange {
                index: j,
                bound: list.len() as u64,
            });
        }
        self.counters.neighbor_queries += 1;
        Ok(list[j as usize])
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), QueryError> {
        let n = self.vertex_count();
        if u64::from(v) >= n {
            return Err(QueryError::IndexOutOfRange {
                index: v.into(),
                bound: n,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, load_edge_list, GeneratorSpec};

    #[test]
    fn vertex_query_is_identity_and_counted() {
        let g = load_edge_list("0 1\n1 2").unwrap();
        let mut o = GraphOracle::new(&g);
        assert_eq!(o.vertex(2), Ok(2));
        assert_eq!(o.counters().vertex_queries, 1);
        o.vertex(0).unwrap();
        assert_eq!(o.counters().vertex_queries, 2);
        assert!(matches!(o.vertex(3), Err(QueryError::IndexOutOfRange { .. })));
        assert_eq!(o.counters().vertex_queries, 2);
    }

    #[test]
    fn degree_queries() {
        let star = generate(&GeneratorSpec::Star { leaves: 8 }).unwrap();
        let mut o = GraphOracle::new(&star);
        assert_eq!(o.degree(0), Ok(8));
        assert_eq!(o.degree(5), Ok(1));
        let cpi = generate(&GeneratorSpec::CliquePlusIsolated { k: 5, n: 25 }).unwrap();
        let mut o = GraphOracle::new(&cpi);
        assert_eq!(o.degree(24), Ok(0));
        assert_eq!(o.counters().degree_queries, 1);
    }

    #[test]
    fn neighbor_queries_follow_sorted_lists() {
        let g = load_edge_list("0 1\n1 2").unwrap();
        let mut o = GraphOracle::new(&g);
        assert_eq!(o.neighbor(1, 0), Ok(0));
        assert_eq!(o.neighbor(1, 1), Ok(2));
        assert!(o.neighbor(1, 2).is_err());
        let c = o.counters();
        assert_eq!(c.neighbor_queries, 2);
        assert_eq!(c.total(), 2);
    }
}
