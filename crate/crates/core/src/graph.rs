//! Simple undirected graphs on at most 64 dense vertices, stored as one
//! adjacency bitset per vertex.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graphs are limited to {MAX_VERTICES} vertices, got {0}")]
    TooManyVertices(usize),
}

/// A set of vertices, one bit per vertex.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Smallest member.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Members in increasing order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Members;
    fn into_iter(self) -> Members {
        self.iter()
    }
}

pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Members {}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let members = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = members.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {bad} out of range")));
        }
        Ok(members.into_iter().collect())
    }
}

/// Simple undirected graph on vertices `0..n`.
///
/// Immutable after construction; every operation returns a new value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds the simple graph with the given edges. Duplicates and both
    /// orientations of a pair collapse to one edge; self-loops are rejected.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in pairs {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    /// Builds a graph from adjacency bitsets. The rows must be symmetric and
    /// loop-free; this is only checked in debug builds.
    pub(crate) fn from_adjacency(adj: Vec<u64>) -> Self {
        debug_assert!(adj.len() <= MAX_VERTICES);
        debug_assert!((0..adj.len()).all(|u| adj[u] >> u & 1 == 0));
        debug_assert!((0..adj.len())
            .all(|u| VertexSet(adj[u]).iter().all(|v| v < adj.len() && adj[v] >> u & 1 == 1)));
        Graph { n: adj.len(), adj }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub(crate) fn adj_bits(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in VertexSet(self.adj[u] & !((2u64 << u).wrapping_sub(1))).iter() {
                out.push((u, v));
            }
        }
        out
    }

    pub fn check_set(&self, s: VertexSet) -> Result<(), GraphError> {
        match s.difference(self.vertices()).first() {
            Some(v) => Err(GraphError::VertexOutOfRange { vertex: v, n: self.n }),
            None => Ok(()),
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Number of edges with both endpoints in `s`.
    pub fn edges_within(&self, s: VertexSet) -> usize {
        s.iter().map(|v| (self.adj[v] & s.0).count_ones() as usize).sum::<usize>() / 2
    }

    /// The subgraph induced by `s`, relabelled so that the i-th smallest
    /// member of `s` becomes vertex i. Returns the graph and the map from new
    /// labels to old ones.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        self.check_set(s)?;
        let map = s.to_vec();
        let mut back = [usize::MAX; MAX_VERTICES];
        for (i, &v) in map.iter().enumerate() {
            back[v] = i;
        }
        let adj = map
            .iter()
            .map(|&v| VertexSet(self.adj[v] & s.0).iter().fold(0u64, |acc, w| acc | 1 << back[w]))
            .collect();
        Ok((Graph::from_adjacency(adj), map))
    }

    /// Identifies vertex `vg` of `self` with vertex `vh` of `h`.
    ///
    /// Vertices of `self` keep their labels; the remaining vertices of `h`
    /// follow in increasing order. Returns the sum with the embeddings of
    /// `self` and `h` into it.
    pub fn vertex_sum(&self, h: &Graph, vg: usize, vh: usize) -> Result<VertexSum, GraphError> {
        self.check_vertex(vg)?;
        h.check_vertex(vh)?;
        let n = self.n + h.n - 1;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let g_map: Vec<usize> = (0..self.n).collect();
        let mut h_map = vec![0; h.n];
        let mut next = self.n;
        for (w, slot) in h_map.iter_mut().enumerate() {
            if w == vh {
                *slot = vg;
            } else {
                *slot = next;
                next += 1;
            }
        }
        let mut adj = self.adj.clone();
        adj.resize(n, 0);
        for (a, b) in h.edges() {
            let (x, y) = (h_map[a], h_map[b]);
            adj[x] |= 1 << y;
            adj[y] |= 1 << x;
        }
        Ok(VertexSum { graph: Graph::from_adjacency(adj), g_map, h_map, identified: vg })
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for v in VertexSet(frontier) {
                next |= self.adj[v];
            }
            next &= within.0 & !seen;
            seen |= next;
            frontier = next;
        }
        VertexSet(seen)
    }

    /// Connected components of the subgraph induced by `within`, ordered by
    /// smallest member.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let c = self.reach(v, rest);
            rest = rest.difference(c);
            out.push(c);
        }
        out
    }

    /// Connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.reach(0, self.vertices()) == self.vertices()
    }

    pub fn is_connected_within(&self, s: VertexSet) -> bool {
        match s.first() {
            None => true,
            Some(v) => self.reach(v, s) == s,
        }
    }

    /// Does `s` induce a tree (connected, |s|-1 edges)? The empty set does not.
    pub fn induces_tree(&self, s: VertexSet) -> bool {
        !s.is_empty() && self.edges_within(s) + 1 == s.len() && self.is_connected_within(s)
    }

    /// Does `s` induce a path?
    pub fn induces_path(&self, s: VertexSet) -> bool {
        self.induces_tree(s) && s.iter().all(|v| (self.adj[v] & s.0).count_ones() <= 2)
    }

    /// Does `s` induce a complete graph?
    pub fn induces_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.difference(VertexSet::singleton(v)).is_subset(self.neighbors(v)))
    }

    /// Orders the vertices of an induced path from one end to the other,
    /// starting at the smaller endpoint. `None` if `s` is not an induced path.
    pub fn path_order(&self, s: VertexSet) -> Option<Vec<usize>> {
        if !self.induces_path(s) {
            return None;
        }
        let start = s.iter().find(|&v| (self.adj[v] & s.0).count_ones() <= 1)?;
        let mut order = vec![start];
        let mut seen = VertexSet::singleton(start);
        let mut cur = start;
        while let Some(next) = VertexSet(self.adj[cur] & s.0).difference(seen).first() {
            order.push(next);
            seen.insert(next);
            cur = next;
        }
        Some(order)
    }

    pub fn is_path(&self) -> bool {
        self.induces_path(self.vertices())
    }

    pub fn is_tree(&self) -> bool {
        self.induces_tree(self.vertices())
    }

    /// Applies a vertex relabelling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for (u, v) in self.edges() {
            adj[perm[u]] |= 1 << perm[v];
            adj[perm[v]] |= 1 << perm[u];
        }
        Graph::from_adjacency(adj)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphRepr { n: self.n, edges: self.edges() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = GraphRepr::deserialize(d)?;
        Graph::from_edge_list(r.n, &r.edges).map_err(serde::de::Error::custom)
    }
}

/// Result of [`Graph::vertex_sum`].
#[derive(Debug, Clone)]
pub struct VertexSum {
    pub graph: Graph,
    /// Image of each vertex of the first summand.
    pub g_map: Vec<usize>,
    /// Image of each vertex of the second summand.
    pub h_map: Vec<usize>,
    /// Label of the identified vertex in the sum.
    pub identified: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &e).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &e).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = vec![];
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::from_edge_list(n, &e).unwrap()
    }

    #[test]
    fn edge_list_construction() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.is_path());
        let k1 = Graph::from_edge_list(1, &[]).unwrap();
        assert_eq!((k1.n(), k1.edge_count()), (1, 0));
        let g2 = Graph::from_edge_list(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g2, g);
    }

    #[test]
    fn edge_list_errors() {
        assert_eq!(
            Graph::from_edge_list(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(Graph::from_edge_list(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::empty(65), Err(GraphError::TooManyVertices(65)));
    }

    #[test]
    fn induced_subgraphs() {
        let (k3, map) = complete(4).induced_subgraph(VertexSet(0b0111)).unwrap();
        assert_eq!(k3, complete(3));
        assert_eq!(map, vec![0, 1, 2]);
        let (p3, _) = cycle(4).induced_subgraph(VertexSet(0b0111)).unwrap();
        assert_eq!(p3, path(3));
        let c5 = cycle(5);
        assert_eq!(c5.induced_subgraph(c5.vertices()).unwrap().0, c5);
        assert!(c5.induced_subgraph(VertexSet(1 << 7)).is_err());
    }

    #[test]
    fn vertex_sums() {
        let p2 = path(2);
        let s = p2.vertex_sum(&p2, 1, 0).unwrap();
        assert!(s.graph.is_path());
        assert_eq!(s.graph.n(), 3);

        let bowtie = cycle(3).vertex_sum(&cycle(3), 0, 2).unwrap();
        assert_eq!((bowtie.graph.n(), bowtie.graph.edge_count()), (5, 6));
        assert_eq!(bowtie.h_map[2], 0);

        let g = cycle(5);
        let k1 = Graph::empty(1).unwrap();
        let s = k1.vertex_sum(&g, 0, 0).unwrap();
        assert_eq!(s.graph, g);
        assert!(g.vertex_sum(&g, 5, 0).is_err());
    }

    #[test]
    fn component_listing() {
        assert_eq!(path(3).components(), vec![VertexSet(0b111)]);
        let e3 = Graph::empty(3).unwrap();
        assert_eq!(e3.components().len(), 3);
        let (two, _) = cycle(4).induced_subgraph(VertexSet(0b0101)).unwrap();
        assert_eq!(two.components(), vec![VertexSet(1), VertexSet(2)]);
    }

    #[test]
    fn path_and_tree_predicates() {
        let c4 = cycle(4);
        assert!(!c4.is_tree());
        assert!(c4.induces_path(VertexSet(0b0111)));
        assert_eq!(c4.path_order(VertexSet(0b1011)), Some(vec![1, 0, 3]));
        let star = Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(star.is_tree() && !star.is_path());
        assert!(complete(4).induces_clique(VertexSet(0b1111)));
    }
}
