//! k-tree recognition by simplicial elimination, and the k-cluster test.

use serde::{Deserialize, Serialize};

use super::FamilyCertificate;
use crate::graph::{Graph, VertexSet};
use crate::solvers::maximal_cliques;

/// A vertex added during construction, with the k-clique it attaches to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attachment {
    pub vertex: usize,
    pub clique: VertexSet,
}

/// A k-cluster: every vertex outside `h` sees exactly k vertices, all in `h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterEvidence {
    pub h: VertexSet,
    /// The distinct neighbourhoods of outside vertices, sorted.
    pub s: Vec<VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTreeEvidence {
    pub k: usize,
    /// The starting K_{k+1}.
    pub base: VertexSet,
    /// Construction order after the base.
    pub steps: Vec<Attachment>,
    pub cluster: Option<ClusterEvidence>,
}

/// Recognises `g` as a k-tree, flagging k-clusters.
pub fn k_tree_certificate(g: &Graph, k: usize) -> Option<FamilyCertificate> {
    let n = g.n();
    if k == 0 || n < k + 1 || g.edge_count() != k * (k + 1) / 2 + (n - k - 1) * k || !g.is_connected() {
        return None;
    }
    let mut remaining = g.vertices();
    let mut removed = Vec::new();
    while remaining.len() > k + 1 {
        let v = remaining.iter().find(|&v| {
            let nb = g.neighbors(v).intersection(remaining);
            nb.len() == k && g.induces_clique(nb)
        })?;
        removed.push(Attachment { vertex: v, clique: g.neighbors(v).intersection(remaining) });
        remaining.remove(v);
    }
    if !g.induces_clique(remaining) {
        return None;
    }
    removed.reverse();
    let cluster = find_cluster(g, k);
    let ev = KTreeEvidence { k, base: remaining, steps: removed, cluster };
    Some(if ev.cluster.is_some() { FamilyCertificate::KCluster(ev) } else { FamilyCertificate::KTree(ev) })
}

fn find_cluster(g: &Graph, k: usize) -> Option<ClusterEvidence> {
    maximal_cliques(g, g.vertices()).into_iter().filter(|h| h.len() == k + 1).find_map(|h| cluster_at(g, k, h))
}

fn cluster_at(g: &Graph, k: usize, h: VertexSet) -> Option<ClusterEvidence> {
    let mut s = Vec::new();
    for v in g.vertices().difference(h) {
        let nb = g.neighbors(v);
        if !nb.is_subset(h) || nb.len() != k {
            return None;
        }
        s.push(nb);
    }
    s.sort();
    s.dedup();
    Some(ClusterEvidence { h, s })
}

impl KTreeEvidence {
    pub(crate) fn verify(&self, g: &Graph) -> Result<(), String> {
        let k = self.k;
        if self.base.len() != k + 1 || !g.check_set(self.base).is_ok() {
            return Err("base is not a (k+1)-set of vertices".into());
        }
        let mut adj = vec![0u64; g.n()];
        for v in self.base {
            adj[v] = self.base.difference(VertexSet::singleton(v)).bits();
        }
        let mut built = self.base;
        for (i, a) in self.steps.iter().enumerate() {
            if a.vertex >= g.n() || built.contains(a.vertex) {
                return Err(format!("step {i}: vertex {} already present or out of range", a.vertex));
            }
            if a.clique.len() != k || !a.clique.is_subset(built) {
                return Err(format!("step {i}: attachment is not a k-subset of the graph so far"));
            }
            if !a.clique.iter().all(|u| a.clique.difference(VertexSet::singleton(u)).bits() & !adj[u] == 0) {
                return Err(format!("step {i}: attachment is not a clique"));
            }
            for u in a.clique {
                adj[u] |= 1 << a.vertex;
            }
            adj[a.vertex] = a.clique.bits();
            built.insert(a.vertex);
        }
        if built != g.vertices() {
            return Err("construction does not reach every vertex".into());
        }
        if (0..g.n()).any(|v| adj[v] != g.neighbors(v).bits()) {
            return Err("construction does not reproduce the edges".into());
        }
        if let Some(c) = &self.cluster {
            if c.h.len() != k + 1 || !g.induces_clique(c.h) {
                return Err("cluster base is not a (k+1)-clique".into());
            }
            if cluster_at(g, k, c.h).as_ref() != Some(c) {
                return Err("cluster evidence does not match the graph".into());
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edge_list(n, e).unwrap()
    }

    fn k4_edges() -> Vec<(usize, usize)> {
        vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    }

    #[test]
    fn triangle_with_ear() {
        let h = g(4, &[(0, 1), (1, 2), (0, 2), (2, 3), (1, 3)]);
        let cert = k_tree_certificate(&h, 2).unwrap();
        cert.verify(&h).unwrap();
        let FamilyCertificate::KCluster(ev) = cert else { panic!("expected a cluster") };
        assert_eq!(ev.cluster.unwrap().s.len(), 1);
    }

    #[test]
    fn non_k_trees() {
        let p4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        assert!(k_tree_certificate(&p4, 2).is_none());
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(k_tree_certificate(&c4, 1).is_none());
        // right edge count, wrong shape: C_5 plus a chord is not a 2-tree
        let c5c = g(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (1, 3)]);
        assert!(k_tree_certificate(&c5c, 2).is_none());
    }

    #[test]
    fn three_cluster_with_two_attachments() {
        let mut e = k4_edges();
        e.extend([(4, 0), (4, 1), (4, 2), (5, 1), (5, 2), (5, 3)]);
        let h = g(6, &e);
        let cert = k_tree_certificate(&h, 3).unwrap();
        cert.verify(&h).unwrap();
        let FamilyCertificate::KCluster(ev) = cert else { panic!() };
        assert_eq!(ev.cluster.unwrap().s, vec![VertexSet(0b0111), VertexSet(0b1110)]);
    }

    #[test]
    fn general_k_tree_is_not_a_cluster() {
        // a strip of four triangles: no triangle sees every other vertex
        let h = g(6, &[(0, 1), (0, 2), (1, 2), (3, 1), (3, 2), (4, 2), (4, 3), (5, 3), (5, 4)]);
        let cert = k_tree_certificate(&h, 2).unwrap();
        assert!(matches!(cert, FamilyCertificate::KTree(_)));
        cert.verify(&h).unwrap();
        // trees are 1-trees
        let tree = g(4, &[(0, 1), (1, 2), (1, 3)]);
        assert!(k_tree_certificate(&tree, 1).is_some());
    }

    #[test]
    fn tampering_is_detected() {
        let h = g(4, &[(0, 1), (1, 2), (0, 2), (2, 3), (1, 3)]);
        let Some(FamilyCertificate::KCluster(mut ev)) = k_tree_certificate(&h, 2) else { panic!() };
        ev.steps[0].clique = VertexSet(0b011);
        assert!(ev.verify(&h).is_err());
    }
}
