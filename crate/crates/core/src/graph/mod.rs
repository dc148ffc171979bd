//! Simple undirected graphs, the degree-window predicate and I/O.

mod generate;
mod io;

pub use generate::{generate, GenerateError, GeneratorSpec};
pub use io::{
    parse_dimacs, parse_dimacs_with, parse_graph6, read_graph6_lines, to_dimacs, to_graph6,
    DimacsOptions, EdgeListJson, ParseError, ParsedDimacs,
};

use crate::bitset::VertexSet;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// A finite, loopless, simple undirected graph on vertices `0..order`.
///
/// Adjacency is kept as one bit set per vertex, so adjacency tests are a
/// single word lookup and neighbourhood intersections are word-parallel.
/// Values are immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
    edge_count: usize,
}

impl Graph {
    /// Edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Self {
        Self {
            adj: (0..order).map(|_| VertexSet::with_capacity(order)).collect(),
            edge_count: 0,
        }
    }

    /// Builds a graph from 0-indexed edges. Repeated edges are idempotent.
    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(order);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let order = self.order();
        for w in [u, v] {
            if w >= order {
                return Err(GraphError::VertexOutOfRange { vertex: w, order });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !self.adj[u].contains(v) {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
            self.edge_count += 1;
        }
        Ok(())
    }

    /// `|G|`.
    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Open neighbourhood `N(v)`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    /// Closed neighbourhood `N[v]`.
    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v].clone();
        s.insert(v);
        s
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// `Δ(G)`; zero for the empty graph.
    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| {
            self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    /// True when no two members of `set` are adjacent.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.adjacent(u, v)))
    }

    /// `‖X,Y‖`: edges with one endpoint in `x` and the other in `y`.
    ///
    /// When `x` and `y` overlap, each edge is counted once if either
    /// orientation meets the condition, so the count stays symmetric.
    pub fn edges_between(&self, x: &[usize], y: &[usize]) -> Result<usize, GraphError> {
        let order = self.order();
        if let Some(&vertex) = x.iter().chain(y).find(|&&v| v >= order) {
            return Err(GraphError::VertexOutOfRange { vertex, order });
        }
        let xs = VertexSet::from_iter_with_capacity(order, x.iter().copied());
        let ys = VertexSet::from_iter_with_capacity(order, y.iter().copied());
        let mut both = xs.clone();
        both.union_with(&ys);
        let mut count = 0;
        for u in both.iter() {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                if (xs.contains(u) && ys.contains(v)) || (xs.contains(v) && ys.contains(u)) {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// Number of edges of `G[set]`.
    pub fn induced_edge_count(&self, set: &[usize]) -> usize {
        let s = VertexSet::from_iter_with_capacity(self.order(), set.iter().copied());
        set.iter().map(|&v| self.adj[v].intersection_len(&s)).sum::<usize>() / 2
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut blocks = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut block = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in self.adj[u].iter() {
                    if !seen[v] {
                        seen[v] = true;
                        block.push(v);
                        queue.push_back(v);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        blocks
    }

    /// The graph obtained by renaming vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order(), "permutation length");
        let mut g = Graph::empty(self.order());
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]).expect("permutation stays in range");
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let mut g = Graph::empty(shift + other.order());
        for (u, v) in self.edges() {
            g.add_edge(u, v).expect("in range");
        }
        for (u, v) in other.edges() {
            g.add_edge(u + shift, v + shift).expect("in range");
        }
        g
    }

    /// Degree window and forbidden-component status.
    pub fn window_check(&self) -> WindowStatus {
        let order = self.order();
        let max_degree = self.max_degree();
        let in_window = order >= 6 && 3 * max_degree > order && 2 * max_degree < order;
        let forbidden_component = self
            .components()
            .into_iter()
            .find(|b| b.len() == max_degree + 1 && b.iter().all(|&v| self.degree(v) == max_degree));
        WindowStatus {
            order,
            max_degree,
            in_window,
            forbidden_component,
        }
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Result of [`Graph::window_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowStatus {
    pub order: usize,
    pub max_degree: usize,
    /// `|G| ≥ 6`, `3Δ ≥ |G|+1` and `2Δ < |G|`.
    pub in_window: bool,
    /// A connected component inducing `K_{Δ+1}`, if any.
    pub forbidden_component: Option<Vec<usize>>,
}

impl WindowStatus {
    /// Window holds and no component is a `K_{Δ+1}`.
    pub fn admissible(&self) -> bool {
        self.in_window && self.forbidden_component.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// C_7 on v1..v7 plus the chord v1v4, 0-indexed.
    pub(crate) fn chorded_c7() -> Graph {
        let mut edges: Vec<_> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
        edges.push((0, 3));
        Graph::from_edges(7, edges).unwrap()
    }

    fn k33() -> Graph {
        Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).unwrap()
    }

    #[test]
    fn edges_between_examples() {
        let g = k33();
        assert_eq!(g.edges_between(&[0, 1, 2], &[3, 4, 5]).unwrap(), 9);
        assert_eq!(g.edges_between(&[], &[3, 4, 5]).unwrap(), 0);
        // v4 against {v2, v5, v7}: only v4v5.
        let c7 = chorded_c7();
        assert_eq!(c7.edges_between(&[3], &[1, 4, 6]).unwrap(), 1);
        assert_eq!(c7.edges_between(&[1, 4, 6], &[3]).unwrap(), 1);
        assert!(matches!(
            c7.edges_between(&[9], &[0]),
            Err(GraphError::VertexOutOfRange { vertex: 9, .. })
        ));
    }

    #[test]
    fn edges_between_overlap_counts_once() {
        let g = complete(3);
        assert_eq!(g.edges_between(&[0, 1], &[0, 1]).unwrap(), 1);
        assert_eq!(g.edges_between(&[0, 1], &[1, 2]).unwrap(), 3);
        assert_eq!(g.edges_between(&[1, 2], &[0, 1]).unwrap(), 3);
    }

    #[test]
    fn components_examples() {
        let g = complete(4).disjoint_union(&complete(3));
        let sizes: Vec<_> = g.components().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![4, 3]);
        assert_eq!(chorded_c7().components().len(), 1);
        assert_eq!(Graph::empty(6).components().len(), 6);
    }

    #[test]
    fn window_examples() {
        let s = k33().window_check();
        assert_eq!((s.order, s.max_degree, s.in_window), (6, 3, false));

        let s = chorded_c7().window_check();
        assert!(s.in_window && s.forbidden_component.is_none());

        let s = complete(4).disjoint_union(&complete(3)).window_check();
        assert!(s.in_window);
        assert_eq!(s.forbidden_component, Some(vec![0, 1, 2, 3]));
        assert!(!s.admissible());
    }

    #[test]
    fn rejects_loops_and_range() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn relabel_preserves_degrees() {
        let g = chorded_c7();
        let perm = [6, 5, 4, 3, 2, 1, 0];
        let h = g.relabel(&perm);
        assert_eq!(h.edge_count(), g.edge_count());
        for (v, &pv) in perm.iter().enumerate() {
            assert_eq!(g.degree(v), h.degree(pv));
        }
    }
}
