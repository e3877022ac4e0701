//! Enumeration of connected induced subgraphs that are trees or paths.
//!
//! Uses the ESU extension scheme: every connected vertex set whose minimum
//! is `v` is produced exactly once, grown one vertex at a time through
//! connected subsets. A connected subset of an induced tree (path) is again
//! an induced tree (path), so branches can be cut as soon as the shape breaks.

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Shape {
    Path,
    Tree,
}

/// All vertex sets inside `allowed` whose minimum is `v` and which induce a
/// tree (or path). `v` must be in `allowed`.
pub(crate) fn connected_shapes(g: &Graph, v: usize, allowed: u64, shape: Shape, out: &mut Vec<u64>) {
    let adj = g.adj_bits();
    let above = allowed & !((2u64 << v).wrapping_sub(1)) & !(1u64 << v);
    let start = 1u64 << v;
    extend(adj, shape, start, adj[v], adj[v] & above, above, out);
}

fn extend(adj: &[u64], shape: Shape, set: u64, nbhd: u64, mut ext: u64, above: u64, out: &mut Vec<u64>) {
    out.push(set);
    while ext != 0 {
        let w = ext.trailing_zeros() as usize;
        ext &= ext - 1;
        let touch = adj[w] & set;
        if touch.count_ones() != 1 {
            continue;
        }
        if shape == Shape::Path && set.count_ones() > 1 {
            // the attachment point must be an endpoint of the current path
            let x = touch.trailing_zeros() as usize;
            if (adj[x] & set).count_ones() > 1 {
                continue;
            }
        }
        let new_set = set | 1 << w;
        let excl = adj[w] & above & !set & !nbhd;
        extend(adj, shape, new_set, nbhd | adj[w], ext | excl, above, out);
    }
}

/// Every induced tree (path) of `g`, grouped by minimum vertex.
pub(crate) fn shapes_by_min(g: &Graph, allowed: u64, shape: Shape) -> Vec<Vec<u64>> {
    (0..g.n())
        .map(|v| {
            let mut out = Vec::new();
            if allowed >> v & 1 == 1 {
                connected_shapes(g, v, allowed, shape, &mut out);
            }
            out
        })
        .collect()
}
