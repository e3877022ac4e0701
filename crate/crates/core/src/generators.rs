//! Seeded generators for the graph families.
//!
//! Randomness comes from `XorShiftRng::seed_from_u64(seed)`, so a spec and
//! seed always give the same graph. Random families are relabelled by a
//! random permutation before they are returned, so vertex labels carry no
//! structure.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_xorshift::XorShiftRng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::p2_interval_witness;
use crate::graph::{Graph, GraphError, MAX_VERTICES};
use crate::structure::chordal_peo;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn bad<T>(msg: impl Into<String>) -> Result<T, GenError> {
    Err(GenError::Params(msg.into()))
}

/// A family and its parameters; `generate` is a pure function of it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GenSpec {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    CompleteBipartite { m: usize, n: usize },
    Grid { rows: usize, cols: usize },
    Tree { n: usize, seed: u64 },
    BlockCycle { blocks: usize, max_cycle: usize, seed: u64 },
    Unicyclic { n: usize, seed: u64 },
    Outerplanar { n: usize, inner_keep: f64, #[serde(default = "one")] outer_keep: f64, seed: u64 },
    KTree { n: usize, k: usize, #[serde(default)] cluster_only: bool, seed: u64 },
    KCluster { n: usize, k: usize, s: usize, seed: u64 },
    SeriesParallelPaths { lengths: Vec<usize>, seed: u64 },
    Chordal { n: usize, k: usize, seed: u64 },
    ErdosRenyi { n: usize, p: f64, seed: u64 },
    P2Witness { m: usize, n: usize, k: usize },
}

fn one() -> f64 {
    1.0
}

impl GenSpec {
    pub fn generate(&self) -> Result<Graph, GenError> {
        match *self {
            GenSpec::Path { n } => path(n),
            GenSpec::Cycle { n } => cycle(n),
            GenSpec::Complete { n } => complete(n),
            GenSpec::CompleteBipartite { m, n } => complete_bipartite(m, n),
            GenSpec::Grid { rows, cols } => grid(rows, cols),
            GenSpec::Tree { n, seed } => random_tree(n, seed),
            GenSpec::BlockCycle { blocks, max_cycle, seed } => random_block_cycle(blocks, max_cycle, seed),
            GenSpec::Unicyclic { n, seed } => random_unicyclic(n, seed),
            GenSpec::Outerplanar { n, inner_keep, outer_keep, seed } => {
                random_outerplanar_with(n, inner_keep, outer_keep, seed)
            }
            GenSpec::KTree { n, k, cluster_only, seed } => random_k_tree(n, k, cluster_only, seed),
            GenSpec::KCluster { n, k, s, seed } => random_k_cluster(n, k, s, seed),
            GenSpec::SeriesParallelPaths { ref lengths, seed } => random_series_parallel_paths(lengths, seed),
            GenSpec::Chordal { n, k, seed } => random_chordal(n, k, seed),
            GenSpec::ErdosRenyi { n, p, seed } => random_erdos_renyi(n, p, seed),
            GenSpec::P2Witness { m, n, k } => p2_interval_witness(m, n, k).map_err(|e| GenError::Params(e.to_string())),
        }
    }
}

/// Named graphs: `path n`, `cycle n`, `complete n`,
/// `complete_bipartite m n`, `grid rows cols`.
pub fn canonical(family: &str, params: &[usize]) -> Result<Graph, GenError> {
    match (family, params) {
        ("path", &[n]) => path(n),
        ("cycle", &[n]) => cycle(n),
        ("complete", &[n]) => complete(n),
        ("complete_bipartite", &[m, n]) => complete_bipartite(m, n),
        ("grid", &[r, c]) => grid(r, c),
        _ => bad(format!("unknown family or arity: {family} {params:?}")),
    }
}

fn check_n(n: usize) -> Result<(), GenError> {
    if n > MAX_VERTICES {
        return bad(format!("{n} vertices exceed the limit of {MAX_VERTICES}"));
    }
    Ok(())
}

pub fn path(n: usize) -> Result<Graph, GenError> {
    if n == 0 {
        return bad("a path needs a vertex");
    }
    check_n(n)?;
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(Graph::from_edge_list(n, &e)?)
}

pub fn cycle(n: usize) -> Result<Graph, GenError> {
    if n < 3 {
        return bad("a cycle needs at least 3 vertices");
    }
    check_n(n)?;
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Graph::from_edge_list(n, &e)?)
}

pub fn complete(n: usize) -> Result<Graph, GenError> {
    if n == 0 {
        return bad("a complete graph needs a vertex");
    }
    check_n(n)?;
    let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Ok(Graph::from_edge_list(n, &e)?)
}

/// Parts `0..m` and `m..m+n`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph, GenError> {
    if m == 0 || n == 0 {
        return bad("both sides need a vertex");
    }
    check_n(m + n)?;
    let e: Vec<_> = (0..m).flat_map(|u| (m..m + n).map(move |v| (u, v))).collect();
    Ok(Graph::from_edge_list(m + n, &e)?)
}

/// Row-major labels: cell (i, j) is `i * cols + j`.
pub fn grid(rows: usize, cols: usize) -> Result<Graph, GenError> {
    if rows == 0 || cols == 0 {
        return bad("grid dimensions must be positive");
    }
    check_n(rows * cols)?;
    let mut e = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if j + 1 < cols {
                e.push((i * cols + j, i * cols + j + 1));
            }
            if i + 1 < rows {
                e.push((i * cols + j, (i + 1) * cols + j));
            }
        }
    }
    Ok(Graph::from_edge_list(rows * cols, &e)?)
}

fn rng(seed: u64) -> XorShiftRng {
    XorShiftRng::seed_from_u64(seed)
}

fn shuffled(n: usize, e: &[(usize, usize)], rng: &mut XorShiftRng) -> Result<Graph, GenError> {
    check_n(n)?;
    let g = Graph::from_edge_list(n, e)?;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    Ok(g.relabel(&perm))
}

pub fn random_tree(n: usize, seed: u64) -> Result<Graph, GenError> {
    if n == 0 {
        return bad("a tree needs a vertex");
    }
    let mut r = rng(seed);
    let e: Vec<_> = (1..n).map(|i| (r.random_range(0..i), i)).collect();
    shuffled(n, &e, &mut r)
}

/// Starts from an edge or a cycle and repeatedly glues another edge or
/// cycle (length 3 to `max_cycle`) at a uniformly chosen vertex.
pub fn random_block_cycle(blocks: usize, max_cycle: usize, seed: u64) -> Result<Graph, GenError> {
    if blocks == 0 {
        return bad("need at least one block");
    }
    let mut r = rng(seed);
    let mut e = Vec::new();
    let mut n = 1;
    for _ in 0..blocks {
        let at = r.random_range(0..n);
        let len = if max_cycle >= 3 && r.random_bool(0.5) { r.random_range(3..=max_cycle) } else { 2 };
        let mut prev = at;
        for i in 1..len {
            e.push((prev, n + i - 1));
            prev = n + i - 1;
        }
        if len >= 3 {
            e.push((prev, at));
        }
        n += len - 1;
        check_n(n)?;
    }
    shuffled(n, &e, &mut r)
}

/// A cycle of random length with trees hanging off it.
pub fn random_unicyclic(n: usize, seed: u64) -> Result<Graph, GenError> {
    if n < 3 {
        return bad("a unicyclic graph needs at least 3 vertices");
    }
    let mut r = rng(seed);
    let c = r.random_range(3..=n);
    let mut e: Vec<_> = (0..c).map(|i| (i, (i + 1) % c)).collect();
    e.extend((c..n).map(|i| (r.random_range(0..i), i)));
    shuffled(n, &e, &mut r)
}

/// A random triangulation of the n-gon with each chord kept with
/// probability `inner_keep`.
pub fn random_outerplanar(n: usize, inner_keep: f64, seed: u64) -> Result<Graph, GenError> {
    random_outerplanar_with(n, inner_keep, 1.0, seed)
}

/// As [`random_outerplanar`], but each polygon side is also kept with
/// probability `outer_keep`; dropped sides are restored in random order
/// until the graph is connected again.
pub fn random_outerplanar_with(n: usize, inner_keep: f64, outer_keep: f64, seed: u64) -> Result<Graph, GenError> {
    if n < 3 {
        return bad("need at least 3 vertices");
    }
    if !(0.0..=1.0).contains(&inner_keep) || !(0.0..=1.0).contains(&outer_keep) {
        return bad("probabilities must lie in [0, 1]");
    }
    check_n(n)?;
    let mut r = rng(seed);
    let mut chords = Vec::new();
    let mut stack = vec![(0usize, n - 1)];
    // split the polygon side (a, b) with an apex strictly between them
    while let Some((a, b)) = stack.pop() {
        if b - a < 2 {
            continue;
        }
        let c = r.random_range(a + 1..b);
        for (x, y) in [(a, c), (c, b)] {
            if y - x >= 2 {
                chords.push((x, y));
            }
            stack.push((x, y));
        }
    }
    let mut e: Vec<_> = chords.into_iter().filter(|_| r.random_bool(inner_keep)).collect();
    let mut dropped = Vec::new();
    for i in 0..n {
        let side = (i, (i + 1) % n);
        if r.random_bool(outer_keep) {
            e.push(side);
        } else {
            dropped.push(side);
        }
    }
    dropped.shuffle(&mut r);
    for side in dropped {
        if Graph::from_edge_list(n, &e)?.is_connected() {
            break;
        }
        e.push(side);
    }
    shuffled(n, &e, &mut r)
}

/// Builds from K_{k+1} on `0..=k`, attaching every new vertex to a random
/// k-clique; with `cluster_only` the clique lies in the starting K_{k+1}.
pub fn random_k_tree(n: usize, k: usize, cluster_only: bool, seed: u64) -> Result<Graph, GenError> {
    if k == 0 || n < k + 1 {
        return bad("need k >= 1 and n >= k + 1");
    }
    check_n(n)?;
    let mut r = rng(seed);
    let base: Vec<usize> = (0..=k).collect();
    let mut e: Vec<_> = (0..=k).flat_map(|u| (u + 1..=k).map(move |v| (u, v))).collect();
    let mut big = vec![base.clone()];
    for v in k + 1..n {
        let host = if cluster_only { &base } else { &big[r.random_range(0..big.len())] };
        let skip = r.random_range(0..=k);
        let clique: Vec<usize> = host.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &u)| u).collect();
        e.extend(clique.iter().map(|&u| (u, v)));
        let mut grown = clique;
        grown.push(v);
        big.push(grown);
    }
    shuffled(n, &e, &mut r)
}

/// A k-cluster whose outside vertices use exactly `s` distinct k-subsets
/// of the base clique.
pub fn random_k_cluster(n: usize, k: usize, s: usize, seed: u64) -> Result<Graph, GenError> {
    if k == 0 || s > k + 1 || n < k + 1 + s || (s == 0 && n != k + 1) {
        return bad("need k >= 1, s <= k + 1 and n - k - 1 >= s outside vertices (none when s = 0)");
    }
    check_n(n)?;
    let mut r = rng(seed);
    let mut e: Vec<_> = (0..=k).flat_map(|u| (u + 1..=k).map(move |v| (u, v))).collect();
    let skips = index::sample(&mut r, k + 1, s).into_vec();
    for (i, v) in (k + 1..n).enumerate() {
        let skip = if i < s { skips[i] } else { skips[r.random_range(0..s)] };
        e.extend((0..=k).filter(|&u| u != skip).map(|u| (u, v)));
    }
    shuffled(n, &e, &mut r)
}

/// Paths of the given lengths laid out left to right, one above the other,
/// with non-crossing edges between consecutive paths from a monotone
/// two-pointer sweep that always joins both left ends and both right ends.
pub fn random_series_parallel_paths(lengths: &[usize], seed: u64) -> Result<Graph, GenError> {
    if lengths.len() < 2 || lengths.contains(&0) {
        return bad("need at least two paths, each non-empty");
    }
    if lengths.windows(2).any(|w| w == [1, 1]) {
        return bad("two consecutive single-vertex paths induce a path");
    }
    let n: usize = lengths.iter().sum();
    check_n(n)?;
    let mut r = rng(seed);
    let mut start = vec![0];
    for &l in lengths {
        start.push(start.last().unwrap() + l);
    }
    let mut e = Vec::new();
    for (p, &l) in lengths.iter().enumerate() {
        e.extend((start[p] + 1..start[p] + l).map(|v| (v - 1, v)));
    }
    for p in 0..lengths.len() - 1 {
        let (a, b) = (lengths[p], lengths[p + 1]);
        let (mut i, mut j) = (0, 0);
        e.push((start[p], start[p + 1]));
        while i + 1 < a || j + 1 < b {
            match r.random_range(0..3) {
                0 if i + 1 < a => i += 1,
                1 if j + 1 < b => j += 1,
                _ => {
                    i = (i + 1).min(a - 1);
                    j = (j + 1).min(b - 1);
                }
            }
            if (i + 1 == a && j + 1 == b) || r.random_bool(0.5) {
                e.push((start[p] + i, start[p + 1] + j));
            }
        }
    }
    e.sort();
    e.dedup();
    shuffled(n, &e, &mut r)
}

/// A random k-tree thinned by edge deletions that keep it chordal and
/// connected.
pub fn random_chordal(n: usize, k: usize, seed: u64) -> Result<Graph, GenError> {
    let g = random_k_tree(n, k, false, seed)?;
    let mut r = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut edges = g.edges();
    edges.shuffle(&mut r);
    let mut current = g.edges();
    for (u, v) in edges {
        if !r.random_bool(0.5) {
            continue;
        }
        let trial: Vec<_> = current.iter().copied().filter(|&x| x != (u, v)).collect();
        let h = Graph::from_edge_list(n, &trial)?;
        if h.is_connected() && chordal_peo(&h).is_some() {
            current = trial;
        }
    }
    Ok(Graph::from_edge_list(n, &current)?)
}

/// Each edge independently with probability `p`.
pub fn random_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return bad("p must lie in [0, 1]");
    }
    check_n(n)?;
    let mut r = rng(seed);
    let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let e: Vec<_> = e.into_iter().filter(|_| r.random_bool(p)).collect();
    Ok(Graph::from_edge_list(n, &e)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::to_graph6;
    use crate::structure::{
        classify_block_cycle, classify_unicyclic, double_path_certificate, k_tree_certificate, outerplanar_embedding,
        FamilyCertificate,
    };

    #[test]
    fn canonical_counts() {
        assert_eq!(canonical("cycle", &[5]).unwrap().edge_count(), 5);
        let g = canonical("grid", &[2, 3]).unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 7));
        assert_eq!(canonical("complete_bipartite", &[2, 3]).unwrap().edge_count(), 6);
        assert!(canonical("cycle", &[2]).is_err());
        assert!(canonical("wheel", &[5]).is_err());
    }

    #[test]
    fn deterministic() {
        let spec = GenSpec::Outerplanar { n: 10, inner_keep: 0.5, outer_keep: 0.8, seed: 42 };
        let a = to_graph6(&spec.generate().unwrap()).unwrap();
        let b = to_graph6(&spec.generate().unwrap()).unwrap();
        assert_eq!(a, b);
        let json = serde_json::to_string(&spec).unwrap();
        let back: GenSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn outerplanar_extremes() {
        for seed in 0..10 {
            assert_eq!(random_outerplanar(9, 1.0, seed).unwrap().edge_count(), 2 * 9 - 3);
            let c = random_outerplanar(9, 0.0, seed).unwrap();
            assert_eq!(c.edge_count(), 9);
            assert!(c.vertices().iter().all(|v| c.degree(v) == 2));
        }
    }

    #[test]
    fn outputs_are_recognised() {
        for seed in 0..20 {
            let g = random_block_cycle(4, 5, seed).unwrap();
            assert!(classify_block_cycle(&g).unwrap().is_some());
            let g = random_unicyclic(9, seed).unwrap();
            assert!(classify_unicyclic(&g).unwrap().is_some());
            let g = random_outerplanar_with(10, 0.5, 0.7, seed).unwrap();
            assert!(g.is_connected() && outerplanar_embedding(&g).unwrap().is_some());
            let g = random_k_tree(9, 3, false, seed).unwrap();
            assert!(k_tree_certificate(&g, 3).is_some());
            let g = random_k_cluster(8, 2, 3, seed).unwrap();
            match k_tree_certificate(&g, 2) {
                Some(FamilyCertificate::KCluster(ev)) => assert_eq!(ev.cluster.unwrap().s.len(), 3),
                other => panic!("{other:?}"),
            }
            let g = random_series_parallel_paths(&[3, 4, 2], seed).unwrap();
            assert!(double_path_certificate(&g).unwrap().is_some());
            let g = random_chordal(9, 2, seed).unwrap();
            assert!(g.is_connected() && chordal_peo(&g).is_some());
            assert!(random_tree(7, seed).unwrap().is_tree());
        }
    }

    #[test]
    fn series_rejects_adjacent_singletons() {
        assert!(random_series_parallel_paths(&[1, 1], 0).is_err());
        assert!(random_series_parallel_paths(&[1, 2, 1], 0).is_ok());
    }
}
