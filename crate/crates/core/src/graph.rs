//! Immutable simple graphs on dense vertex indices `0..n`.
//!
//! Adjacency is held twice: as sorted neighbour lists (compressed rows) for
//! sparse traversal, and as fixed-width bit rows for constant-time adjacency
//! tests and word-parallel set operations. Bit rows are only materialised up
//! to [`DENSE_ROW_LIMIT`] vertices; beyond that adjacency tests fall back to
//! binary search in the neighbour lists.

use std::fmt;

use thiserror::Error;

use crate::bits;
use crate::vertex_set::VertexSet;

/// Largest vertex count for which bit rows are materialised (32 MiB of rows).
pub const DENSE_ROW_LIMIT: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("edge ({u}, {v}) is a self-loop")]
    SelfLoop { u: usize, v: usize },
    #[error("vertex {vertex} is outside 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("the graph has no vertices")]
    NoVertices,
}

#[derive(Clone, PartialEq, Eq)]
struct BitRows {
    words: usize,
    data: Vec<u64>,
}

impl BitRows {
    fn row(&self, v: usize) -> &[u64] {
        &self.data[v * self.words..(v + 1) * self.words]
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    rows: Option<BitRows>,
}

impl Graph {
    /// Builds a graph from 0-based vertex pairs. Duplicate pairs (in either
    /// orientation) collapse to a single edge.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut lists = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { u, v });
            }
            lists[u].push(v as u32);
            lists[v].push(u as u32);
        }
        Ok(Self::from_lists(lists))
    }

    pub fn empty(n: usize) -> Self {
        Self::from_lists(vec![Vec::new(); n])
    }

    pub fn complete(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    /// Builds the graph on `n` vertices whose edges are the pairs `u < v`
    /// with `adjacent(u, v)`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut lists = vec![Vec::new(); n];
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    lists[u].push(v as u32);
                    lists[v].push(u as u32);
                }
            }
        }
        Self::from_lists(lists)
    }

    fn from_lists(mut lists: Vec<Vec<u32>>) -> Self {
        let n = lists.len();
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        for list in &mut lists {
            list.sort_unstable();
            list.dedup();
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        let rows = (n <= DENSE_ROW_LIMIT).then(|| {
            let words = n.div_ceil(64).max(1);
            let mut data = vec![0u64; n * words];
            for (u, list) in lists.iter().enumerate() {
                for &v in list {
                    data[u * words + v as usize / 64] |= 1 << (v % 64);
                }
            }
            BitRows { words, data }
        });
        Self {
            n,
            offsets,
            targets,
            rows,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n {
            return false;
        }
        match &self.rows {
            Some(rows) => rows.row(u)[v / 64] >> (v % 64) & 1 == 1,
            None => self.neighbors(u).binary_search(&(v as u32)).is_ok(),
        }
    }

    /// Bit row of `v` when rows are materialised.
    pub fn row(&self, v: usize) -> Option<&[u64]> {
        self.rows.as_ref().map(|r| r.row(v))
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        VertexSet::from_members(self.n, self.neighbors(v).iter().map(|&w| w as usize))
    }

    /// Number of non-neighbours of `v` other than `v` itself.
    pub fn missing_degree(&self, v: usize) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(self.n - 1 - self.degree(v))
    }

    /// Maximum missing degree Δ over all vertices.
    pub fn max_missing_degree(&self) -> Result<usize, GraphError> {
        (0..self.n)
            .map(|v| self.n - 1 - self.degree(v))
            .max()
            .ok_or(GraphError::NoVertices)
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.n, |u, v| !self.has_edge(u, v))
    }

    /// The subgraph induced by `s`, relabelled to `0..|s|` in increasing
    /// order of the original indices. The second component maps new indices
    /// back to original vertices.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        self.check_set(s)?;
        let map = s.to_vec();
        let mut index = vec![u32::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i as u32;
        }
        let lists = map
            .iter()
            .map(|&v| {
                self.neighbors(v)
                    .iter()
                    .map(|&w| index[w as usize])
                    .filter(|&i| i != u32::MAX)
                    .collect()
            })
            .collect();
        Ok((Graph::from_lists(lists), map))
    }

    /// Number of non-adjacent unordered pairs inside `s`.
    pub fn missing_edges_within(&self, s: &VertexSet) -> Result<usize, GraphError> {
        self.check_set(s)?;
        let k = s.len();
        let inside: usize = s
            .iter()
            .map(|v| {
                self.neighbors(v)
                    .iter()
                    .filter(|&&w| s.contains(w as usize))
                    .count()
            })
            .sum();
        Ok(k * k.saturating_sub(1) / 2 - inside / 2)
    }

    /// Adjacency as one word per vertex, for graphs with at most 64 vertices.
    pub fn masks(&self) -> Option<Vec<u64>> {
        (self.n <= 64).then(|| {
            (0..self.n)
                .map(|v| {
                    self.neighbors(v)
                        .iter()
                        .fold(0u64, |m, &w| m | bits::bit(w as usize))
                })
                .collect()
        })
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<(), GraphError> {
        match s.max() {
            Some(v) if v >= self.n => Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            }),
            _ => Ok(()),
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    #[test]
    fn triangle_from_edges() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g, Graph::complete(3));
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn edgeless() {
        let g = Graph::from_edge_list(4, &[]).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g, Graph::empty(4));
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Graph::from_edge_list(2, &[(0, 0)]),
            Err(GraphError::SelfLoop { u: 0, v: 0 })
        );
        assert_eq!(
            Graph::from_edge_list(2, &[(0, 2)]),
            Err(GraphError::EndpointOutOfRange { u: 0, v: 2, n: 2 })
        );
    }

    #[test]
    fn duplicates_collapse() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn complements() {
        assert_eq!(Graph::complete(4).complement(), Graph::empty(4));
        assert_eq!(Graph::empty(6).complement(), Graph::complete(6));
        // C5 is self-complementary under the relabelling i -> 2i mod 5
        let c5 = cycle(5);
        let comp = c5.complement();
        for u in 0..5 {
            for v in 0..5 {
                if u != v {
                    assert_eq!(c5.has_edge(u, v), comp.has_edge(2 * u % 5, 2 * v % 5));
                }
            }
        }
        assert_eq!(comp.edge_count(), 5);
    }

    #[test]
    fn missing_degrees() {
        let k5 = Graph::complete(5);
        assert!((0..5).all(|v| k5.missing_degree(v) == Ok(0)));
        let c5 = cycle(5);
        assert!((0..5).all(|v| c5.missing_degree(v) == Ok(2)));
        assert_eq!(
            c5.missing_degree(5),
            Err(GraphError::VertexOutOfRange { vertex: 5, n: 5 })
        );
        assert_eq!(Graph::complete(7).max_missing_degree(), Ok(0));
        assert_eq!(
            Graph::empty(0).max_missing_degree(),
            Err(GraphError::NoVertices)
        );
    }

    #[test]
    fn induced_subgraphs() {
        let k5 = Graph::complete(5);
        let (sub, map) = k5
            .induced_subgraph(&VertexSet::from_members(5, [0, 1, 2]))
            .unwrap();
        assert_eq!(sub, Graph::complete(3));
        assert_eq!(map, vec![0, 1, 2]);

        let (path, _) = cycle(5)
            .induced_subgraph(&VertexSet::from_members(5, [0, 1, 2]))
            .unwrap();
        assert_eq!(path.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);

        let (nothing, map) = k5.induced_subgraph(&VertexSet::new(5)).unwrap();
        assert_eq!(nothing.n(), 0);
        assert!(map.is_empty());

        assert!(k5
            .induced_subgraph(&VertexSet::from_members(9, [8]))
            .is_err());
    }

    #[test]
    fn missing_within() {
        let k6 = Graph::complete(6);
        assert_eq!(k6.missing_edges_within(&VertexSet::full(6)), Ok(0));
        // K8 minus the matching {01, 23, 45, 67}
        let g = Graph::from_fn(8, |u, v| u / 2 != v / 2);
        assert_eq!(
            g.missing_edges_within(&VertexSet::from_members(8, [0, 1, 2, 3])),
            Ok(2)
        );
        assert_eq!(
            Graph::empty(4).missing_edges_within(&VertexSet::full(4)),
            Ok(6)
        );
    }

    #[test]
    fn sparse_fallback_has_edge() {
        let n = DENSE_ROW_LIMIT + 3;
        let g = Graph::from_edge_list(n, &[(0, n - 1), (5, 6)]).unwrap();
        assert!(g.row(0).is_none());
        assert!(g.has_edge(n - 1, 0));
        assert!(g.has_edge(6, 5));
        assert!(!g.has_edge(0, 5));
    }
}
