//! Outerplanarity via one-page book embeddings.
//!
//! A connected graph is outerplanar iff its vertices admit a cyclic order
//! in which no two edges interleave. Each block with three or more
//! vertices needs a Hamiltonian cycle for this; it is found by a depth-first
//! search that rejects crossings as soon as both edges are placed. Block
//! orders are then spliced together at cut vertices.

use serde::{Deserialize, Serialize};

use super::blocks::block_decomposition;
use super::StructureError;
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeClass {
    Outer,
    Inner,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedEdge {
    pub u: usize,
    pub v: usize,
    pub class: EdgeClass,
}

/// Vertices on a circle in `outer_order`, edges drawn as non-crossing chords.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OuterEmbedding {
    pub outer_order: Vec<usize>,
    /// Every edge of the graph with `u < v`, in lexicographic order.
    pub edges: Vec<ClassifiedEdge>,
}

/// Gap `p` sits between positions `p` and `p + 1` (cyclically).
fn arc(from: usize, to: usize, n: usize) -> u64 {
    let mut mask = 0u64;
    let mut p = from;
    while p != to {
        mask |= 1 << p;
        p = (p + 1) % n;
    }
    mask
}

fn interleave(pos: &[usize], (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    let (a, b) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
    let (c, d) = (pos[c].min(pos[d]), pos[c].max(pos[d]));
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

impl OuterEmbedding {
    /// Classifies the edges of `g` for a given cyclic order. Fails if the
    /// order is not a permutation of the vertices or two edges cross.
    ///
    /// An edge is outer when the face on one of its two sides reaches the
    /// circle, i.e. some gap between consecutive vertices on that side is not
    /// shut off by an edge nested on the same side.
    pub fn from_order(g: &Graph, order: &[usize]) -> Result<Self, String> {
        let n = g.n();
        if order.len() != n || order.iter().copied().collect::<VertexSet>() != g.vertices() {
            return Err("order is not a permutation of the vertices".into());
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let edges = g.edges();
        for (i, &e) in edges.iter().enumerate() {
            if let Some(&f) = edges[i + 1..].iter().find(|&&f| interleave(&pos, e, f)) {
                return Err(format!("edges {e:?} and {f:?} cross"));
            }
        }
        let arcs: Vec<[u64; 2]> = edges
            .iter()
            .map(|&(u, v)| [arc(pos[u], pos[v], n), arc(pos[v], pos[u], n)])
            .collect();
        let classified = edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| {
                let outer = arcs[i].iter().any(|&side| {
                    let covered = arcs
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .flat_map(|(_, a)| a.iter().copied())
                        .filter(|&a| a & !side == 0)
                        .fold(0u64, |acc, a| acc | a);
                    side & !covered != 0
                });
                ClassifiedEdge { u, v, class: if outer { EdgeClass::Outer } else { EdgeClass::Inner } }
            })
            .collect();
        Ok(OuterEmbedding { outer_order: order.to_vec(), edges: classified })
    }

    pub fn class(&self, u: usize, v: usize) -> Option<EdgeClass> {
        let (u, v) = (u.min(v), u.max(v));
        self.edges.iter().find(|e| e.u == u && e.v == v).map(|e| e.class)
    }

    pub fn is_outer(&self, u: usize, v: usize) -> bool {
        self.class(u, v) == Some(EdgeClass::Outer)
    }

    pub fn outer_edges(&self) -> Vec<(usize, usize)> {
        self.edges.iter().filter(|e| e.class == EdgeClass::Outer).map(|e| (e.u, e.v)).collect()
    }

    pub fn inner_edges(&self) -> Vec<(usize, usize)> {
        self.edges.iter().filter(|e| e.class == EdgeClass::Inner).map(|e| (e.u, e.v)).collect()
    }

    /// Checks the order, the absence of crossings, and that the labels are
    /// the ones the order determines. In particular adjacent consecutive
    /// vertices are joined by outer edges.
    pub fn verify(&self, g: &Graph) -> Result<(), String> {
        let expected = OuterEmbedding::from_order(g, &self.outer_order)?;
        if expected.edges != self.edges {
            return Err("edge labels do not match the order".into());
        }
        let n = g.n();
        for i in 0..n {
            let (a, b) = (self.outer_order[i], self.outer_order[(i + 1) % n]);
            if a != b && g.has_edge(a, b) && !self.is_outer(a, b) {
                return Err(format!("consecutive edge ({a}, {b}) labelled inner"));
            }
        }
        Ok(())
    }
}

/// An outer embedding of a connected graph, or `None` if it has a
/// K_4 or K_{2,3} minor.
pub fn outerplanar_embedding(g: &Graph) -> Result<Option<OuterEmbedding>, StructureError> {
    if g.n() == 0 {
        return Err(StructureError::Empty);
    }
    if !g.is_connected() {
        return Err(StructureError::Disconnected);
    }
    let Some(order) = outer_order(g) else { return Ok(None) };
    Ok(Some(OuterEmbedding::from_order(g, &order).expect("spliced block orders never cross")))
}

fn outer_order(g: &Graph) -> Option<Vec<usize>> {
    let blocks = block_decomposition(g).blocks;
    let mut block_orders = Vec::with_capacity(blocks.len());
    for &b in &blocks {
        let order = match b.len() {
            1 | 2 => b.to_vec(),
            k => {
                if g.edges_within(b) > 2 * k - 3 {
                    return None;
                }
                hamiltonian_book_cycle(g, b)?
            }
        };
        block_orders.push(order);
    }
    // splice child blocks in right after their cut vertex, breadth first
    let mut order = block_orders[0].clone();
    let mut placed = blocks[0];
    let mut done = vec![false; blocks.len()];
    done[0] = true;
    let mut progress = true;
    while progress {
        progress = false;
        for i in 0..blocks.len() {
            if done[i] {
                continue;
            }
            let shared = blocks[i].intersection(placed);
            let Some(c) = shared.first() else { continue };
            let bo = &block_orders[i];
            let k = bo.iter().position(|&v| v == c).unwrap();
            let rotated: Vec<usize> = bo[k + 1..].iter().chain(&bo[..k]).copied().collect();
            let at = order.iter().position(|&v| v == c).unwrap();
            order.splice(at + 1..at + 1, rotated);
            placed = placed.union(blocks[i]);
            done[i] = true;
            progress = true;
        }
    }
    Some(order)
}

/// A Hamiltonian cycle of the block `b` whose chords do not cross.
fn hamiltonian_book_cycle(g: &Graph, b: VertexSet) -> Option<Vec<usize>> {
    let n = g.n();
    let start = b.first()?;
    let mut pos = vec![usize::MAX; n];
    pos[start] = 0;
    let mut path = vec![start];
    let mut chords: Vec<(usize, usize)> = Vec::new();
    if extend_cycle(g, b, &mut path, &mut pos, &mut chords) {
        Some(path)
    } else {
        None
    }
}

fn extend_cycle(
    g: &Graph,
    b: VertexSet,
    path: &mut Vec<usize>,
    pos: &mut [usize],
    edges: &mut Vec<(usize, usize)>,
) -> bool {
    let last = *path.last().unwrap();
    if path.len() == b.len() {
        return g.has_edge(last, path[0]);
    }
    let placed: VertexSet = path.iter().copied().collect();
    for w in g.neighbors(last).intersection(b).difference(placed) {
        let p = path.len();
        let back: Vec<usize> = g.neighbors(w).intersection(placed).iter().collect();
        // w sits after everything placed, so (x, w) crosses (c, d) iff c < x < d
        let crosses = back
            .iter()
            .any(|&x| edges.iter().any(|&(c, d)| pos[c] < pos[x] && pos[x] < pos[d]));
        if crosses {
            continue;
        }
        // a placed vertex strictly under a new edge can take no further edges
        let rest = b.difference(placed).difference(VertexSet::singleton(w));
        let shut = back.iter().any(|&x| {
            path[pos[x] + 1..].iter().any(|&z| !g.neighbors(z).intersection(rest).is_empty())
        });
        if shut {
            continue;
        }
        pos[w] = p;
        path.push(w);
        let before = edges.len();
        edges.extend(back.iter().map(|&x| (x, w)));
        if extend_cycle(g, b, path, pos, edges) {
            return true;
        }
        edges.truncate(before);
        path.pop();
        pos[w] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edge_list(n, e).unwrap()
    }

    /// Outerplanarity by trying every cyclic order.
    fn brute_outerplanar(g: &Graph) -> bool {
        fn perms(rest: &mut Vec<usize>, cur: &mut Vec<usize>, g: &Graph) -> bool {
            if rest.is_empty() {
                return OuterEmbedding::from_order(g, cur).is_ok();
            }
            for i in 0..rest.len() {
                let v = rest.remove(i);
                cur.push(v);
                if perms(rest, cur, g) {
                    return true;
                }
                cur.pop();
                rest.insert(i, v);
            }
            false
        }
        let mut rest: Vec<usize> = (1..g.n()).collect();
        perms(&mut rest, &mut vec![0], g)
    }

    #[test]
    fn cycle_is_all_outer() {
        let c6 = g(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let emb = outerplanar_embedding(&c6).unwrap().unwrap();
        assert_eq!(emb.outer_order, vec![0, 1, 2, 3, 4, 5]);
        assert!(emb.edges.iter().all(|e| e.class == EdgeClass::Outer));
        emb.verify(&c6).unwrap();
    }

    #[test]
    fn forbidden_minors() {
        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(outerplanar_embedding(&k4), Ok(None));
        let k23 = g(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        assert_eq!(outerplanar_embedding(&k23), Ok(None));
        assert_eq!(outerplanar_embedding(&g(2, &[])), Err(StructureError::Disconnected));
    }

    #[test]
    fn chords_and_bridges() {
        // a fan: apex 0 over the path 1-2-3-4, with a pendant vertex 5 on 2
        let fan = g(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (2, 5)]);
        let emb = outerplanar_embedding(&fan).unwrap().unwrap();
        emb.verify(&fan).unwrap();
        assert_eq!(emb.inner_edges(), vec![(0, 2), (0, 3)]);
        assert!(emb.is_outer(2, 5));

        let star = g(4, &[(0, 1), (0, 2), (0, 3)]);
        let emb = OuterEmbedding::from_order(&star, &[0, 1, 2, 3]).unwrap();
        assert!(emb.edges.iter().all(|e| e.class == EdgeClass::Outer));
    }

    #[test]
    fn crossing_orders_are_rejected() {
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(OuterEmbedding::from_order(&c4, &[0, 2, 1, 3]).is_err());
        let mut emb = OuterEmbedding::from_order(&c4, &[0, 1, 2, 3]).unwrap();
        emb.edges[0].class = EdgeClass::Inner;
        assert!(emb.verify(&c4).is_err());
    }

    #[test]
    fn agrees_with_brute_force_on_small_graphs() {
        // every connected graph on 5 vertices given by a 10-bit edge mask
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        let mut checked = 0;
        for mask in 0u32..1 << pairs.len() {
            let e: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            let h = g(5, &e);
            if !h.is_connected() {
                continue;
            }
            let emb = outerplanar_embedding(&h).unwrap();
            assert_eq!(emb.is_some(), brute_outerplanar(&h), "{h:?}");
            if let Some(emb) = emb {
                emb.verify(&h).unwrap();
            }
            checked += 1;
        }
        assert_eq!(checked, 728);
    }
}
