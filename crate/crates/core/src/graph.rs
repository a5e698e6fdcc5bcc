//! Undirected simple graphs on at most 64 vertices.
//!
//! Each vertex's neighborhood is a single `u64` bitset, so edge queries are
//! one shift and common-neighbor computations are one `AND`. Graphs are
//! immutable values: every mutating operation returns a new graph.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Result};
use crate::format::{decode_graph6, encode_graph6};
use crate::vertex_set::VertexSet;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return invalid(format!("vertex count {n} outside 1..={MAX_VERTICES}"));
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        Ok(Self::empty(n)?.complement())
    }

    /// Cycle `0-1-...-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return invalid("a cycle needs at least 3 vertices");
        }
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Path `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Builds a graph from 0-indexed edges. Repeated edges are harmless.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            g.check_pair(u, v)?;
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Builds a graph from per-vertex neighbor masks, checking symmetry.
    pub fn from_adjacency(adj: Vec<VertexSet>) -> Result<Self> {
        let n = adj.len();
        let g = Graph { n, adj };
        Self::empty(n)?;
        let full = VertexSet::full(n);
        for u in 0..n {
            if !g.adj[u].is_subset(full) {
                return invalid(format!("vertex {u} has neighbors outside 0..{n}"));
            }
            if g.adj[u].contains(u) {
                return invalid(format!("self-loop at vertex {u}"));
            }
            for v in g.adj[u] {
                if !g.adj[v].contains(u) {
                    return invalid(format!("asymmetric adjacency between {u} and {v}"));
                }
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    /// Neighborhoods of all vertices, indexed by vertex.
    #[inline]
    pub fn adjacency(&self) -> &[VertexSet] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|s| s.len()).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .intersection(VertexSet::above(u))
                .iter()
                .map(move |v| (u, v))
        })
    }

    /// `Some(d)` if every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        self.adj.iter().all(|s| s.len() == d).then_some(d)
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return invalid(format!(
                "vertex pair ({u}, {v}) out of range for n = {}",
                self.n
            ));
        }
        if u == v {
            return invalid(format!("self-loop at vertex {u}"));
        }
        Ok(())
    }

    #[inline]
    fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        if present {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        } else {
            self.adj[u].remove(v);
            self.adj[v].remove(u);
        }
    }

    /// Returns a copy with the edge `{u, v}` flipped.
    pub fn toggle_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_pair(u, v)?;
        let mut g = self.clone();
        let present = g.has_edge(u, v);
        g.set_edge(u, v, !present);
        Ok(g)
    }

    /// Subgraph induced by `s`, relabeled in ascending order of `s`.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<Graph> {
        if s.is_empty() {
            return invalid("induced subgraph of the empty vertex set");
        }
        if !s.is_subset(self.vertices()) {
            return invalid(format!("vertex set {s:?} not contained in 0..{}", self.n));
        }
        let members: Vec<usize> = s.iter().collect();
        let adj = members
            .iter()
            .map(|&u| {
                let nb = self.adj[u].intersection(s);
                members
                    .iter()
                    .enumerate()
                    .filter(|(_, &w)| nb.contains(w))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Ok(Graph {
            n: members.len(),
            adj,
        })
    }

    /// Removes `v`. Returns the smaller graph and, for each of its vertices,
    /// the original label it came from.
    pub fn delete_vertex(&self, v: usize) -> Result<(Graph, Vec<usize>)> {
        if v >= self.n {
            return invalid(format!("vertex {v} out of range for n = {}", self.n));
        }
        if self.n < 2 {
            return invalid("cannot delete the only vertex");
        }
        let keep = self.vertices().without(v);
        Ok((self.induced_subgraph(keep)?, keep.iter().collect()))
    }

    pub fn complement(&self) -> Graph {
        let full = self.vertices();
        let adj = (0..self.n)
            .map(|u| full.difference(self.adj[u]).without(u))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return invalid("permutation length differs from vertex count");
        }
        let image: VertexSet = perm.iter().copied().collect();
        if image != self.vertices() {
            return invalid("not a permutation of the vertex set");
        }
        Graph::from_edges(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Number of vertex pairs whose adjacency differs between `self` and `other`.
    pub fn edge_distance(&self, other: &Graph) -> Result<usize> {
        if self.n != other.n {
            return invalid("graphs have different vertex counts");
        }
        Ok(self
            .adj
            .iter()
            .zip(&other.adj)
            .map(|(a, b)| (a.bits() ^ b.bits()).count_ones() as usize)
            .sum::<usize>()
            / 2)
    }

    /// Graph on `self.order() + extra` vertices with the new vertices isolated.
    pub fn with_isolated(&self, extra: usize) -> Result<Graph> {
        let mut g = Graph::empty(self.n + extra)?;
        g.adj[..self.n].copy_from_slice(&self.adj);
        Ok(g)
    }

    pub(crate) fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        self.set_edge(u, v, true);
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph({}, {})", self.n, encode_graph6(self))
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&encode_graph6(self))
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        decode_graph6(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The 5-vertex example graph from the objective-function worked example.
    fn g1() -> Graph {
        Graph::from_edges(5, [(0, 1), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap()
    }

    #[test]
    fn toggle_reproduces_adjacent_example() {
        let g3 = g1().toggle_edge(1, 3).unwrap();
        let expected = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(g3, expected);
        assert_eq!(g1().edge_distance(&g3).unwrap(), 1);
    }

    #[test]
    fn toggle_twice_is_identity() {
        let g = Graph::empty(3).unwrap();
        let twice = g.toggle_edge(0, 1).unwrap().toggle_edge(0, 1).unwrap();
        assert_eq!(twice, g);
    }

    #[test]
    fn toggle_on_k4() {
        let g = Graph::complete(4).unwrap().toggle_edge(0, 1).unwrap();
        assert_eq!(g.edge_count(), 5);
        let mut d = g.degrees();
        d.sort();
        assert_eq!(d, vec![2, 2, 3, 3]);
    }

    #[test]
    fn toggle_rejects_bad_pairs() {
        let g = Graph::empty(3).unwrap();
        assert!(g.toggle_edge(1, 1).is_err());
        assert!(g.toggle_edge(0, 3).is_err());
    }

    #[test]
    fn induced_triangle_in_example() {
        let s: VertexSet = [1, 2, 3].into_iter().collect();
        assert_eq!(
            g1().induced_subgraph(s).unwrap(),
            Graph::complete(3).unwrap()
        );
    }

    #[test]
    fn induced_edge_cases() {
        let g = g1();
        assert!(g.induced_subgraph(VertexSet::EMPTY).is_err());
        assert!(g.induced_subgraph(VertexSet::singleton(7)).is_err());
        let one = g.induced_subgraph(VertexSet::singleton(3)).unwrap();
        assert_eq!((one.order(), one.edge_count()), (1, 0));
    }

    #[test]
    fn c5_minus_a_vertex_is_p4() {
        let c5 = Graph::cycle(5).unwrap();
        for start in 0..5 {
            let s: VertexSet = (0..4).map(|i| (start + i) % 5).collect();
            let h = c5.induced_subgraph(s).unwrap();
            assert_eq!(h.edge_count(), 3);
            let mut d = h.degrees();
            d.sort();
            assert_eq!(d, vec![1, 1, 2, 2]);
        }
    }

    #[test]
    fn deletions() {
        let (k2, labels) = Graph::complete(3).unwrap().delete_vertex(1).unwrap();
        assert_eq!(k2, Graph::complete(2).unwrap());
        assert_eq!(labels, vec![0, 2]);

        let star = Graph::from_edges(5, (1..5).map(|v| (0, v))).unwrap();
        let (rest, _) = star.delete_vertex(0).unwrap();
        assert_eq!(rest, Graph::empty(4).unwrap());

        assert!(star.delete_vertex(5).is_err());
        assert!(Graph::empty(1).unwrap().delete_vertex(0).is_err());
    }

    #[test]
    fn complements() {
        let c5 = Graph::cycle(5).unwrap();
        let comp = c5.complement();
        assert_eq!(comp.regular_degree(), Some(2));
        // Pentagram 0-2-4-1-3-0 is again a 5-cycle.
        assert_eq!(
            comp,
            Graph::from_edges(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).unwrap()
        );
        assert_eq!(
            Graph::complete(4).unwrap().complement(),
            Graph::empty(4).unwrap()
        );
        assert_eq!(Graph::empty(9).unwrap().complement().edge_count(), 36);
    }

    #[test]
    fn vertex_count_limits() {
        assert!(Graph::empty(0).is_err());
        assert!(Graph::empty(65).is_err());
        assert_eq!(Graph::complete(64).unwrap().edge_count(), 64 * 63 / 2);
    }
}
