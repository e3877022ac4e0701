//! Double paths and series of parallel paths.
//!
//! A layering is a sequence of oriented induced paths `L1, .., Lk`
//! partitioning the vertices such that
//!
//! * every edge joins two vertices of one layer or of consecutive layers,
//! * each consecutive pair induces a connected graph that is not a path,
//! * for each consecutive pair, both drawn left to right one above the
//!   other, no two edges cross (the cyclic order `Li ++ rev(Li+1)` is a
//!   one-page book embedding).
//!
//! The search is exact and returns a layering with the fewest layers.

use super::outerplanar::OuterEmbedding;
use super::{FamilyCertificate, StructureError};
use crate::enumerate::{shapes_by_min, Shape};
use crate::graph::{Graph, VertexSet};

const NODE_LIMIT: u64 = 20_000_000;

/// A double-path certificate (two layers, with the embedding they induce),
/// a series-of-parallel-paths certificate for more layers, or `None`.
pub fn double_path_certificate(g: &Graph) -> Result<Option<FamilyCertificate>, StructureError> {
    if g.n() == 0 {
        return Err(StructureError::Empty);
    }
    if !g.is_connected() {
        return Err(StructureError::Disconnected);
    }
    if g.is_path() {
        return Err(StructureError::IsPath);
    }
    let Some(paths) = parallel_path_layers(g, g.n())? else { return Ok(None) };
    if paths.len() == 2 {
        let order: Vec<usize> = paths[0].iter().chain(paths[1].iter().rev()).copied().collect();
        let embedding = OuterEmbedding::from_order(g, &order).expect("layer pairs never cross");
        Ok(Some(FamilyCertificate::DoublePath { paths, embedding }))
    } else {
        Ok(Some(FamilyCertificate::SeriesOfParallelPaths { paths }))
    }
}

/// A layering with the fewest layers, trying 2 up to `max_layers`.
pub fn parallel_path_layers(g: &Graph, max_layers: usize) -> Result<Option<Vec<Vec<usize>>>, StructureError> {
    let mut search = Search { g, nodes: 0 };
    let firsts: Vec<Vec<usize>> = shapes_by_min(g, g.vertices().bits(), Shape::Path)
        .into_iter()
        .flatten()
        .filter_map(|s| g.path_order(VertexSet(s)))
        .collect();
    for k in 2..=max_layers.min(g.n()) {
        // balanced first layers are tried first
        let mut firsts = firsts.clone();
        firsts.sort_by_key(|f| (f.len() * k).abs_diff(g.n()));
        for first in &firsts {
            let mut layers = vec![first.clone()];
            let used: VertexSet = first.iter().copied().collect();
            if search.extend(&mut layers, used, k)? {
                return Ok(Some(layers));
            }
        }
    }
    Ok(None)
}

struct Search<'a> {
    g: &'a Graph,
    nodes: u64,
}

impl Search<'_> {
    fn extend(&mut self, layers: &mut Vec<Vec<usize>>, used: VertexSet, k: usize) -> Result<bool, StructureError> {
        self.nodes += 1;
        if self.nodes > NODE_LIMIT {
            return Err(StructureError::BudgetExceeded(NODE_LIMIT));
        }
        let g = self.g;
        if used == g.vertices() {
            return Ok(layers.len() >= 2);
        }
        if layers.len() == k {
            return Ok(false);
        }
        let last = layers.last().unwrap().clone();
        let last_set: VertexSet = last.iter().copied().collect();
        let remaining = g.vertices().difference(used);
        let required = last
            .iter()
            .fold(VertexSet::EMPTY, |acc, &v| acc.union(g.neighbors(v)))
            .intersection(remaining);
        let Some(r0) = required.first() else { return Ok(false) };
        let mut candidates = Vec::new();
        oriented_paths_through(g, r0, remaining, &mut candidates);
        for next in candidates {
            let next_set: VertexSet = next.iter().copied().collect();
            if !required.is_subset(next_set) {
                continue;
            }
            if layers.len() + 1 == k && used.union(next_set) != g.vertices() {
                continue;
            }
            if !pair_ok(g, &last, last_set, &next, next_set) {
                continue;
            }
            layers.push(next);
            if self.extend(layers, used.union(next_set), k)? {
                return Ok(true);
            }
            layers.pop();
        }
        Ok(false)
    }
}

fn pair_ok(g: &Graph, a: &[usize], a_set: VertexSet, b: &[usize], b_set: VertexSet) -> bool {
    let union = a_set.union(b_set);
    if !g.is_connected_within(union) || g.induces_path(union) {
        return false;
    }
    let (h, map) = g.induced_subgraph(union).expect("layers lie in the graph");
    let mut back = vec![0; g.n()];
    for (i, &v) in map.iter().enumerate() {
        back[v] = i;
    }
    let order: Vec<usize> = a.iter().chain(b.iter().rev()).map(|&v| back[v]).collect();
    OuterEmbedding::from_order(&h, &order).is_ok()
}

/// Every induced path inside `within` that contains `r`, as an oriented
/// sequence; each orientation is produced once.
fn oriented_paths_through(g: &Graph, r: usize, within: VertexSet, out: &mut Vec<Vec<usize>>) {
    fn grow_left(g: &Graph, within: VertexSet, left: &mut Vec<usize>, right: &[usize], set: VertexSet, out: &mut Vec<Vec<usize>>) {
        let mut seq: Vec<usize> = left.iter().rev().copied().collect();
        seq.extend_from_slice(right);
        out.push(seq);
        let end = *left.last().unwrap_or(&right[0]);
        for w in g.neighbors(end).intersection(within).difference(set) {
            if g.neighbors(w).intersection(set) != VertexSet::singleton(end) {
                continue;
            }
            left.push(w);
            grow_left(g, within, left, right, set.union(VertexSet::singleton(w)), out);
            left.pop();
        }
    }
    fn grow_right(g: &Graph, within: VertexSet, right: &mut Vec<usize>, set: VertexSet, out: &mut Vec<Vec<usize>>) {
        grow_left(g, within, &mut Vec::new(), right, set, out);
        let end = *right.last().unwrap();
        for w in g.neighbors(end).intersection(within).difference(set) {
            if g.neighbors(w).intersection(set) != VertexSet::singleton(end) {
                continue;
            }
            right.push(w);
            grow_right(g, within, right, set.union(VertexSet::singleton(w)), out);
            right.pop();
        }
    }
    grow_right(g, within, &mut vec![r], VertexSet::singleton(r), out);
}

/// Checks a layering against the three conditions in the module docs.
pub fn verify_parallel_paths(g: &Graph, paths: &[Vec<usize>]) -> Result<(), String> {
    if paths.len() < 2 {
        return Err("fewer than two paths".into());
    }
    let mut layer_of = vec![usize::MAX; g.n()];
    let mut sets = Vec::with_capacity(paths.len());
    for (i, p) in paths.iter().enumerate() {
        let set: VertexSet = p.iter().copied().collect();
        if set.len() != p.len() || p.is_empty() || g.check_set(set).is_err() {
            return Err(format!("path {i} is empty, repeats or leaves the graph"));
        }
        if !g.induces_path(set) || p.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
            return Err(format!("path {i} is not an induced path in the given order"));
        }
        for &v in p {
            if layer_of[v] != usize::MAX {
                return Err(format!("vertex {v} lies in two paths"));
            }
            layer_of[v] = i;
        }
        sets.push(set);
    }
    if let Some(v) = layer_of.iter().position(|&l| l == usize::MAX) {
        return Err(format!("vertex {v} is not covered"));
    }
    for (u, v) in g.edges() {
        if layer_of[u].abs_diff(layer_of[v]) > 1 {
            return Err(format!("edge ({u}, {v}) skips a layer"));
        }
    }
    for i in 0..paths.len() - 1 {
        if !pair_ok(g, &paths[i], sets[i], &paths[i + 1], sets[i + 1]) {
            return Err(format!("paths {i} and {} do not form a double path drawn in parallel", i + 1));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edge_list(n, e).unwrap()
    }

    fn grid(r: usize, c: usize) -> Graph {
        let mut e = vec![];
        for i in 0..r {
            for j in 0..c {
                if j + 1 < c {
                    e.push((i * c + j, i * c + j + 1));
                }
                if i + 1 < r {
                    e.push((i * c + j, (i + 1) * c + j));
                }
            }
        }
        g(r * c, &e)
    }

    #[test]
    fn square_is_a_double_path() {
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let cert = double_path_certificate(&c4).unwrap().unwrap();
        cert.verify(&c4).unwrap();
        let FamilyCertificate::DoublePath { paths, .. } = &cert else { panic!() };
        assert_eq!(paths, &vec![vec![0, 1], vec![3, 2]]);
    }

    #[test]
    fn grid_layers() {
        let g33 = grid(3, 3);
        let cert = double_path_certificate(&g33).unwrap().unwrap();
        cert.verify(&g33).unwrap();
        assert_eq!(cert.paths().unwrap().len(), 3);
        // a 2 x 4 ladder needs only two layers
        let ladder = grid(2, 4);
        let cert = double_path_certificate(&ladder).unwrap().unwrap();
        assert_eq!(cert.kind(), super::super::FamilyKind::DoublePath);
    }

    #[test]
    fn rejections() {
        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(double_path_certificate(&k4), Ok(None));
        assert_eq!(double_path_certificate(&g(3, &[(0, 1), (1, 2)])), Err(StructureError::IsPath));
        assert_eq!(double_path_certificate(&g(3, &[(0, 1)])), Err(StructureError::Disconnected));
    }

    #[test]
    fn oriented_paths_are_complete() {
        let h = grid(2, 3);
        let mut out = vec![];
        oriented_paths_through(&h, 1, h.vertices(), &mut out);
        // brute force: orientations of induced paths containing 1
        let mut expected = 0;
        for s in 1u64..1 << 6 {
            let s = VertexSet(s);
            if s.contains(1) && h.induces_path(s) {
                expected += if s.len() == 1 { 1 } else { 2 };
            }
        }
        assert_eq!(out.len(), expected);
        out.sort();
        out.dedup();
        assert_eq!(out.len(), expected);
    }

    #[test]
    fn bad_layerings_fail_verification() {
        let g33 = grid(3, 3);
        let rows = vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]];
        verify_parallel_paths(&g33, &rows).unwrap();
        let flipped = vec![vec![0, 1, 2], vec![5, 4, 3], vec![6, 7, 8]];
        assert!(verify_parallel_paths(&g33, &flipped).is_err());
        let skipping = vec![vec![0, 1, 2], vec![6, 7, 8], vec![3, 4, 5]];
        assert!(verify_parallel_paths(&g33, &skipping).is_err());
    }
}
