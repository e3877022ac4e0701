//! Positive semidefinite forcing along tree covers of outerplanar graphs.
//!
//! A minimum tree cover always has a pendant tree (adjacent to one other
//! tree only) or a consecutive pair (adjacent in the outer-edge multigraph
//! on the trees, both of degree two there). A consecutive pair can be
//! reshaped into a pendant tree and its neighbour, so the construction
//! peels pendant trees recursively and picks one root per tree.

use serde::{Deserialize, Serialize};

use super::{guided_run, Claim, FamilyError, FamilySolution, Local};
use crate::cover::{Cover, CoverKind};
use crate::forcing::{closure, Rule};
use crate::graph::{Graph, VertexSet};
use crate::solvers::{tree_cover_number, Combinations};
use crate::structure::{outerplanar_embedding, FamilyKind, OuterEmbedding};

/// How the trees of a minimum tree cover sit in an outerplanar embedding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeClassification {
    /// Outer edges between distinct trees incident to each tree.
    pub outer_degrees: Vec<usize>,
    /// First tree adjacent to at most one other tree.
    pub pendant: Option<usize>,
    /// First consecutive pair.
    pub consecutive: Option<(usize, usize)>,
    /// When there is no pendant tree: the cover with the consecutive pair
    /// reshaped so that it contains one.
    pub transformed: Option<Cover>,
}

struct Reshape {
    /// Index of the tree that loses vertices, and of its partner.
    t1: usize,
    t2: usize,
    parts: Vec<VertexSet>,
    /// The reshaping edge: `u` in the first tree, `v` in the second.
    v: usize,
}

fn outer_degrees(emb: &OuterEmbedding, part_of: &[usize], k: usize) -> (Vec<usize>, Vec<(usize, usize)>) {
    let mut deg = vec![0; k];
    let mut pairs = Vec::new();
    for (a, b) in emb.outer_edges() {
        let (pa, pb) = (part_of[a], part_of[b]);
        if pa != pb {
            deg[pa] += 1;
            deg[pb] += 1;
            pairs.push((pa.min(pb), pa.max(pb)));
        }
    }
    pairs.sort();
    pairs.dedup();
    (deg, pairs)
}

fn part_index(g: &Graph, parts: &[VertexSet]) -> Vec<usize> {
    let mut part_of = vec![usize::MAX; g.n()];
    for (i, p) in parts.iter().enumerate() {
        for v in *p {
            part_of[v] = i;
        }
    }
    part_of
}

fn closed_neighbourhood(g: &Graph, s: VertexSet) -> VertexSet {
    s.iter().fold(s, |acc, v| acc.union(g.neighbors(v)))
}

/// Trees adjacent to part `i`.
fn neighbour_parts(g: &Graph, parts: &[VertexSet], i: usize) -> Vec<usize> {
    let reach = closed_neighbourhood(g, parts[i]);
    (0..parts.len()).filter(|&j| j != i && !parts[j].is_disjoint(reach)).collect()
}

fn find_pendant(g: &Graph, parts: &[VertexSet]) -> Option<usize> {
    (0..parts.len()).find(|&i| neighbour_parts(g, parts, i).len() <= 1)
}

/// Reshapes the consecutive pair `(i, j)`: across an edge `uv` that bounds
/// the pair's own outer face but is inner in `g`, the first tree keeps only
/// its branch at `u` reaching the second tree and the rest moves over.
fn reshape(g: &Graph, emb: &OuterEmbedding, parts: &[VertexSet], i: usize, j: usize) -> Option<Reshape> {
    let pair = parts[i].union(parts[j]);
    let local = Local::new(g, pair);
    let order: Vec<usize> = emb.outer_order.iter().filter(|&&v| pair.contains(v)).map(|&v| local.to_local[v]).collect();
    let sub = OuterEmbedding::from_order(&local.graph, &order).ok()?;
    let part_of = part_index(g, parts);
    for (a, b) in sub.outer_edges() {
        let (a, b) = (local.to_global[a], local.to_global[b]);
        if part_of[a] == part_of[b] || emb.is_outer(a, b) {
            continue;
        }
        for (u, v) in [(a, b), (b, a)] {
            let (t1, t2) = (part_of[u], part_of[v]);
            if g.neighbors(u).intersection(parts[t2]) != VertexSet::singleton(v) {
                continue;
            }
            let rest = parts[t1].difference(VertexSet::singleton(u));
            let touching: Vec<VertexSet> = g
                .components_within(rest)
                .into_iter()
                .filter(|c| !closed_neighbourhood(g, *c).is_disjoint(parts[t2]))
                .collect();
            let [s1] = touching[..] else { continue };
            let s2 = parts[t2].union(parts[t1].difference(s1));
            if !g.induces_tree(s1) || !g.induces_tree(s2) {
                continue;
            }
            let mut new_parts = parts.to_vec();
            new_parts[t1] = s1;
            new_parts[t2] = s2;
            if neighbour_parts(g, &new_parts, t1).len() <= 1 {
                return Some(Reshape { t1, t2, parts: new_parts, v });
            }
        }
    }
    None
}

/// Pendant trees, consecutive pairs and, if needed, the reshaped cover.
///
/// The cover must be a minimum tree cover of `g`.
pub fn consecutive_or_pendant_trees(g: &Graph, emb: &OuterEmbedding, cover: &Cover) -> Result<TreeClassification, FamilyError> {
    emb.verify(g).map_err(FamilyError::Precondition)?;
    if cover.kind != CoverKind::Tree {
        return Err(FamilyError::Precondition("not a tree cover".into()));
    }
    cover.validate(g)?;
    let t = tree_cover_number(g)?.value;
    if cover.len() != t {
        return Err(FamilyError::Precondition(format!("cover has {} trees, the minimum is {t}", cover.len())));
    }
    classify(g, emb, &cover.parts)
}

fn classify(g: &Graph, emb: &OuterEmbedding, parts: &[VertexSet]) -> Result<TreeClassification, FamilyError> {
    let part_of = part_index(g, parts);
    let (outer_degrees, pairs) = outer_degrees(emb, &part_of, parts.len());
    let pendant = find_pendant(g, parts);
    let consecutive = pairs.iter().copied().find(|&(i, j)| outer_degrees[i] == 2 && outer_degrees[j] == 2);
    let transformed = match (pendant, consecutive) {
        (Some(_), _) => None,
        (None, Some(_)) => {
            let r = pairs
                .iter()
                .filter(|&&(i, j)| outer_degrees[i] == 2 && outer_degrees[j] == 2)
                .find_map(|&(i, j)| reshape(g, emb, parts, i, j))
                .ok_or_else(|| FamilyError::VerificationFailed("no consecutive pair reshapes into a pendant tree".into()))?;
            Some(Cover::new(CoverKind::Tree, r.parts))
        }
        (None, None) => {
            return Err(FamilyError::VerificationFailed("neither a pendant tree nor a consecutive pair".into()));
        }
    };
    Ok(TreeClassification { outer_degrees, pendant, consecutive, transformed })
}

fn check_double_tree(g: &Graph, t1: VertexSet, t2: VertexSet) -> Result<(), FamilyError> {
    let fail = |s: &str| Err(FamilyError::Precondition(s.into()));
    if t1.is_empty() || t2.is_empty() || !t1.is_disjoint(t2) || t1.union(t2) != g.vertices() {
        return fail("the two trees must partition the vertices");
    }
    if !g.induces_tree(t1) || !g.induces_tree(t2) {
        return fail("a part does not induce a tree");
    }
    if !g.is_connected() || g.is_tree() {
        return fail("a double tree is connected and not itself a tree");
    }
    if outerplanar_embedding(g)?.is_none() {
        return fail("not outerplanar");
    }
    Ok(())
}

/// Vertices of `t2` in trial order: those forming a 2-vertex cut with `v`,
/// then leaves of `t2`, then the rest.
fn cut_pair_candidates(g: &Graph, v: usize, t2: VertexSet) -> Vec<usize> {
    let rank = |u: usize| {
        let rest = g.vertices().difference(VertexSet::singleton(v)).difference(VertexSet::singleton(u));
        if rest.len() >= 2 && !g.is_connected_within(rest) {
            0
        } else if g.neighbors(u).intersection(t2).len() <= 1 {
            1
        } else {
            2
        }
    };
    let mut c: Vec<usize> = t2.to_vec();
    c.sort_by_key(|&u| (rank(u), u));
    c
}

/// For a vertex `v` of `t1`, a vertex `u` of `t2` with `{v, u}` positive
/// forcing along the two trees.
pub fn double_tree_cut_pair(g: &Graph, t1: VertexSet, t2: VertexSet, v: usize) -> Result<(usize, FamilySolution), FamilyError> {
    check_double_tree(g, t1, t2)?;
    if !t1.contains(v) {
        return Err(FamilyError::Precondition(format!("{v} is not in the first tree")));
    }
    let cover = Cover::new(CoverKind::Tree, vec![t1, t2]);
    for u in cut_pair_candidates(g, v, t2) {
        let roots = VertexSet::singleton(v).union(VertexSet::singleton(u));
        if let Ok(sol) = FamilySolution::build(g, FamilyKind::DoubleTree, Rule::Positive, roots, cover.clone(), vec![Claim::ZPlusEqualsT]) {
            return Ok((u, sol));
        }
    }
    Err(FamilyError::VerificationFailed(format!("no partner for {v} in {t2:?}")))
}

/// A positive semidefinite forcing set whose forcing trees form a minimum
/// tree cover of a connected outerplanar graph.
pub fn outerplanar_solution(g: &Graph, emb: &OuterEmbedding) -> Result<FamilySolution, FamilyError> {
    emb.verify(g).map_err(FamilyError::Precondition)?;
    if g.n() == 0 || !g.is_connected() {
        return Err(FamilyError::Precondition("graph must be connected and non-empty".into()));
    }
    let cover = tree_cover_number(g)?.cover().expect("tree covers carry a cover").clone();
    let roots = roots_for(g, emb, &cover.parts)?;
    FamilySolution::build(g, FamilyKind::Outerplanar, Rule::Positive, roots.into_iter().collect(), cover, vec![Claim::ZPlusEqualsT])
}

/// One root per part such that the parts are the forcing trees.
fn roots_for(g: &Graph, emb: &OuterEmbedding, parts: &[VertexSet]) -> Result<Vec<usize>, FamilyError> {
    if parts.len() == 1 {
        return Ok(vec![parts[0].first().expect("parts are non-empty")]);
    }
    if let Some(p) = find_pendant(g, parts) {
        return roots_with_pendant(g, emb, parts, p);
    }
    let part_of = part_index(g, parts);
    let (deg, pairs) = outer_degrees(emb, &part_of, parts.len());
    let r = pairs
        .iter()
        .filter(|&&(i, j)| deg[i] == 2 && deg[j] == 2)
        .find_map(|&(i, j)| reshape(g, emb, parts, i, j))
        .ok_or_else(|| FamilyError::VerificationFailed("no pendant tree and no reshapeable consecutive pair".into()))?;
    let inner = roots_for(g, emb, &r.parts)?;
    let (y, x) = (inner[r.t1], inner[r.t2]);
    let mut trials = Vec::new();
    if parts[r.t2].contains(x) {
        trials.push((y, x));
    } else {
        trials.push((y, r.v));
        trials.push((x, r.v));
    }
    for (a, b) in trials {
        let mut roots = inner.clone();
        roots[r.t1] = a;
        roots[r.t2] = b;
        if guided_run(g, Rule::Positive, roots.iter().copied().collect(), parts).is_some() {
            return Ok(roots);
        }
    }
    Err(FamilyError::VerificationFailed("roots of the reshaped cover do not carry back".into()))
}

fn roots_with_pendant(g: &Graph, emb: &OuterEmbedding, parts: &[VertexSet], p: usize) -> Result<Vec<usize>, FamilyError> {
    let rest = g.vertices().difference(parts[p]);
    let local = Local::new(g, rest);
    let others: Vec<usize> = (0..parts.len()).filter(|&i| i != p).collect();
    let local_parts: Vec<VertexSet> = others.iter().map(|&i| local.set_in(parts[i])).collect();
    let order: Vec<usize> = emb.outer_order.iter().filter(|&&v| rest.contains(v)).map(|&v| local.to_local[v]).collect();
    let sub_emb = OuterEmbedding::from_order(&local.graph, &order).map_err(FamilyError::VerificationFailed)?;
    let sub_roots = roots_for(&local.graph, &sub_emb, &local_parts)?;
    let run = guided_run(&local.graph, Rule::Positive, sub_roots.iter().copied().collect(), &local_parts)
        .ok_or_else(|| FamilyError::VerificationFailed("sub-solution does not replay".into()))?;
    let q = neighbour_parts(g, parts, p)[0];
    let touching = parts[q].intersection(closed_neighbourhood(g, parts[p]));
    let x = touching
        .iter()
        .min_by_key(|&v| (run.black_since(local.to_local[v]).unwrap_or(usize::MAX), v))
        .expect("pendant tree has a neighbour");
    let mut roots = vec![0; parts.len()];
    for (k, &i) in others.iter().enumerate() {
        roots[i] = local.to_global[sub_roots[k]];
    }
    let pair = Local::new(g, parts[p].union(parts[q]));
    for y in cut_pair_candidates(&pair.graph, pair.to_local[x], pair.set_in(parts[p])) {
        roots[p] = pair.to_global[y];
        if guided_run(g, Rule::Positive, roots.iter().copied().collect(), parts).is_some() {
            return Ok(roots);
        }
    }
    Err(FamilyError::VerificationFailed(format!("no root for pendant tree {:?}", parts[p])))
}

/// Combines solutions for two graphs into one for their vertex sum at
/// `vg ~ vh`. The two trees through the shared vertex merge into one. When
/// no root of the merged tree works with the given trees, one side is
/// re-solved with the shared vertex as a root: the other side then forces
/// exactly as it does alone, blackens the shared vertex, and the re-rooted
/// side finishes.
pub fn compose_vertex_sum(sol_g: &FamilySolution, sol_h: &FamilySolution, vg: usize, vh: usize) -> Result<FamilySolution, FamilyError> {
    if sol_g.rule != Rule::Positive || sol_h.rule != Rule::Positive {
        return Err(FamilyError::Precondition("both solutions must use the positive rule".into()));
    }
    let (gg, hh) = (&sol_g.run.graph, &sol_h.run.graph);
    sol_g.verify(gg)?;
    sol_h.verify(hh)?;
    let sum = gg.vertex_sum(hh, vg, vh)?;
    let build = |side_g: &Side, side_h: &Side, root: usize| {
        let mut parts = side_g.others.clone();
        parts.extend(&side_h.others);
        parts.push(side_g.tree.union(side_h.tree));
        let roots = side_g.roots.union(side_h.roots).union(VertexSet::singleton(root));
        let cover = Cover::new(CoverKind::Tree, parts);
        FamilySolution::build(&sum.graph, FamilyKind::VertexSum, Rule::Positive, roots, cover, vec![Claim::ZPlusEqualsT]).ok()
    };
    let side_g = Side::new(&sol_g.cover.parts, sol_g.forcing_set, &sum.g_map, vg);
    let side_h = Side::new(&sol_h.cover.parts, sol_h.forcing_set, &sum.h_map, vh);
    let merged = side_g.tree.union(side_h.tree);
    let first = side_g.root.union(side_h.root);
    for r in first.iter().chain(merged.difference(first).iter()) {
        if let Some(sol) = build(&side_g, &side_h, r) {
            return Ok(sol);
        }
    }
    let shared = sum.g_map[vg];
    if let Some((set, cover)) = forcing_set_through(hh, vh, sol_h.value()) {
        if let Some(sol) = build(&side_g, &Side::new(&cover.parts, set, &sum.h_map, vh), side_g.root.first().unwrap()) {
            return Ok(sol);
        }
    }
    if let Some((set, cover)) = forcing_set_through(gg, vg, sol_g.value()) {
        if let Some(sol) = build(&Side::new(&cover.parts, set, &sum.g_map, vg), &side_h, side_h.root.first().unwrap()) {
            return Ok(sol);
        }
    }
    Err(FamilyError::VerificationFailed(format!("no root for the merged tree at {shared}")))
}

/// One summand mapped into the vertex sum: the trees away from the shared
/// vertex with their roots, and the tree through it with its root.
struct Side {
    others: Vec<VertexSet>,
    roots: VertexSet,
    tree: VertexSet,
    root: VertexSet,
}

impl Side {
    fn new(parts: &[VertexSet], forcing_set: VertexSet, map: &[usize], v: usize) -> Side {
        let map_set = |s: VertexSet| -> VertexSet { s.iter().map(|u| map[u]).collect() };
        let mut side = Side { others: vec![], roots: VertexSet::EMPTY, tree: VertexSet::EMPTY, root: VertexSet::EMPTY };
        for &p in parts {
            if p.contains(v) {
                side.tree = map_set(p);
                side.root = map_set(p.intersection(forcing_set));
            } else {
                side.others.push(map_set(p));
                side.roots = side.roots.union(map_set(p.intersection(forcing_set)));
            }
        }
        side
    }
}

const THROUGH_LIMIT: usize = 1 << 20;

/// A positive forcing set of size `k` containing `v`, with its forcing trees.
fn forcing_set_through(g: &Graph, v: usize, k: usize) -> Option<(VertexSet, Cover)> {
    let rest: Vec<usize> = (0..g.n()).filter(|&u| u != v).collect();
    for bits in Combinations::new(rest.len(), k.checked_sub(1)?).take(THROUGH_LIMIT) {
        let set: VertexSet = VertexSet(bits).iter().map(|i| rest[i]).chain([v]).collect();
        let run = closure(g, set, Rule::Positive).ok()?;
        if run.is_complete() {
            return Some((set, run.extract_cover().ok()?));
        }
    }
    None
}
