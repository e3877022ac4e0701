//! Exact solvers for Z, Z+, P, T and the edge clique cover number.
//!
//! Every parameter is additive over connected components, so each solver
//! splits the input first and searches one component at a time. All
//! searches are exponential and guarded by a node budget; running out of
//! budget is reported as an error rather than a best-effort answer.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::{Cover, CoverKind};
use crate::enumerate::{shapes_by_min, Shape};
use crate::forcing::{derived_set, Rule};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parameter {
    #[serde(rename = "Z")]
    ZeroForcing,
    #[serde(rename = "Z+")]
    PsdForcing,
    #[serde(rename = "P")]
    PathCover,
    #[serde(rename = "T")]
    TreeCover,
    #[serde(rename = "cc")]
    EdgeCliqueCover,
}

impl Parameter {
    pub const ALL: [Parameter; 5] = [
        Parameter::ZeroForcing,
        Parameter::PsdForcing,
        Parameter::PathCover,
        Parameter::TreeCover,
        Parameter::EdgeCliqueCover,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Parameter::ZeroForcing => "Z",
            Parameter::PsdForcing => "Z+",
            Parameter::PathCover => "P",
            Parameter::TreeCover => "T",
            Parameter::EdgeCliqueCover => "cc",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Parameter> {
        Parameter::ALL.into_iter().find(|p| p.symbol().eq_ignore_ascii_case(s))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Certificate {
    Set(VertexSet),
    Cover(Cover),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Closures evaluated or search states expanded.
    pub nodes: u64,
    /// Sum over components of the bound the search started from.
    pub lower_bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterResult {
    pub parameter: Parameter,
    pub value: usize,
    pub certificate: Certificate,
    pub stats: SearchStats,
}

impl ParameterResult {
    pub fn set(&self) -> Option<VertexSet> {
        match &self.certificate {
            Certificate::Set(s) => Some(*s),
            Certificate::Cover(_) => None,
        }
    }

    pub fn cover(&self) -> Option<&Cover> {
        match &self.certificate {
            Certificate::Cover(c) => Some(c),
            Certificate::Set(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("the graph has no vertices")]
    EmptyGraph,
    #[error("{edges} edges exceed the {limit}-edge limit of the clique cover search")]
    TooLarge { edges: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub node_limit: u64,
    /// Start the Z search at the minimum degree. Disable to search from 1.
    pub degree_bound: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { node_limit: 200_000_000, degree_bound: true }
    }
}

struct Budget {
    used: u64,
    limit: u64,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Budget { used: 0, limit }
    }

    #[inline]
    fn tick(&mut self) -> Result<(), SolveError> {
        self.used += 1;
        if self.used > self.limit {
            Err(SolveError::BudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }
}

pub fn zero_forcing_number(g: &Graph) -> Result<ParameterResult, SolveError> {
    zero_forcing_number_with(g, &SolverConfig::default())
}

pub fn psd_forcing_number(g: &Graph) -> Result<ParameterResult, SolveError> {
    psd_forcing_number_with(g, &SolverConfig::default())
}

pub fn path_cover_number(g: &Graph) -> Result<ParameterResult, SolveError> {
    path_cover_number_with(g, &SolverConfig::default())
}

pub fn tree_cover_number(g: &Graph) -> Result<ParameterResult, SolveError> {
    tree_cover_number_with(g, &SolverConfig::default())
}

pub fn edge_clique_cover_number(g: &Graph) -> Result<ParameterResult, SolveError> {
    edge_clique_cover_number_with(g, &SolverConfig::default())
}

pub fn solve(g: &Graph, p: Parameter, cfg: &SolverConfig) -> Result<ParameterResult, SolveError> {
    match p {
        Parameter::ZeroForcing => zero_forcing_number_with(g, cfg),
        Parameter::PsdForcing => psd_forcing_number_with(g, cfg),
        Parameter::PathCover => path_cover_number_with(g, cfg),
        Parameter::TreeCover => tree_cover_number_with(g, cfg),
        Parameter::EdgeCliqueCover => edge_clique_cover_number_with(g, cfg),
    }
}

pub fn zero_forcing_number_with(g: &Graph, cfg: &SolverConfig) -> Result<ParameterResult, SolveError> {
    forcing_number(g, Rule::Standard, Parameter::ZeroForcing, cfg)
}

pub fn psd_forcing_number_with(g: &Graph, cfg: &SolverConfig) -> Result<ParameterResult, SolveError> {
    forcing_number(g, Rule::Positive, Parameter::PsdForcing, cfg)
}

fn forcing_number(g: &Graph, rule: Rule, parameter: Parameter, cfg: &SolverConfig) -> Result<ParameterResult, SolveError> {
    if g.n() == 0 {
        return Err(SolveError::EmptyGraph);
    }
    let mut budget = Budget::new(cfg.node_limit);
    let mut set = VertexSet::EMPTY;
    let mut lower_bound = 0;
    for comp in g.components() {
        let (h, map) = g.induced_subgraph(comp).expect("component lies in the graph");
        let lb = match rule {
            Rule::Standard if cfg.degree_bound => h.min_degree().max(1),
            _ => 1,
        };
        lower_bound += lb;
        let local = min_forcing_set(&h, rule, lb, &mut budget)?;
        set = set.union(local.iter().map(|i| map[i]).collect());
    }
    Ok(ParameterResult {
        parameter,
        value: set.len(),
        certificate: Certificate::Set(set),
        stats: SearchStats { nodes: budget.used, lower_bound },
    })
}

/// Lexicographically first minimum forcing set, searching sizes from `lb` up.
fn min_forcing_set(h: &Graph, rule: Rule, lb: usize, budget: &mut Budget) -> Result<VertexSet, SolveError> {
    let n = h.n();
    let all = h.vertices().bits();
    for k in lb..=n {
        for s in Combinations::new(n, k) {
            budget.tick()?;
            if derived_set(h.adj_bits(), s, rule) == all {
                return Ok(VertexSet(s));
            }
        }
    }
    unreachable!("the full vertex set is always forcing")
}

/// k-subsets of {0..n} as bitmasks, in colexicographic order (Gosper's hack).
pub(crate) struct Combinations {
    next: Option<u128>,
    limit: u128,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        let next = (k <= n).then(|| (1u128 << k) - 1);
        Combinations { next, limit: 1u128 << n }
    }
}

impl Iterator for Combinations {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let x = self.next?;
        if x >= self.limit {
            self.next = None;
            return None;
        }
        self.next = if x == 0 {
            None
        } else {
            let c = x & x.wrapping_neg();
            let r = x + c;
            Some((((r ^ x) >> 2) / c) | r)
        };
        Some(x as u64)
    }
}

pub fn path_cover_number_with(g: &Graph, cfg: &SolverConfig) -> Result<ParameterResult, SolveError> {
    induced_cover(g, Shape::Path, None, cfg)
}

pub fn tree_cover_number_with(g: &Graph, cfg: &SolverConfig) -> Result<ParameterResult, SolveError> {
    induced_cover(g, Shape::Tree, None, cfg)
}

/// Minimum path cover in which `v` is an endpoint of its path (or alone).
pub fn path_cover_with_endpoint(g: &Graph, v: usize, cfg: &SolverConfig) -> Result<ParameterResult, SolveError> {
    induced_cover(g, Shape::Path, Some(v), cfg)
}

fn induced_cover(g: &Graph, shape: Shape, endpoint: Option<usize>, cfg: &SolverConfig) -> Result<ParameterResult, SolveError> {
    if g.n() == 0 {
        return Err(SolveError::EmptyGraph);
    }
    let mut budget = Budget::new(cfg.node_limit);
    let mut parts = Vec::new();
    for comp in g.components() {
        let (h, map) = g.induced_subgraph(comp).expect("component lies in the graph");
        let local_end = endpoint.and_then(|v| map.iter().position(|&x| x == v));
        let local = min_partition(&h, shape, local_end, &mut budget)?;
        parts.extend(local.into_iter().map(|p| p.iter().map(|i| map[i]).collect::<VertexSet>()));
    }
    parts.sort_by_key(|p| p.first());
    let (parameter, kind) = match shape {
        Shape::Path => (Parameter::PathCover, CoverKind::Path),
        Shape::Tree => (Parameter::TreeCover, CoverKind::Tree),
    };
    Ok(ParameterResult {
        parameter,
        value: parts.len(),
        certificate: Certificate::Cover(Cover::new(kind, parts)),
        stats: SearchStats { nodes: budget.used, lower_bound: 1 },
    })
}

/// Exact minimum partition of a connected graph into induced shapes.
///
/// The smallest uncovered vertex always opens the next part, so each
/// partition is visited once; results are memoised on the uncovered set.
fn min_partition(h: &Graph, shape: Shape, endpoint: Option<usize>, budget: &mut Budget) -> Result<Vec<VertexSet>, SolveError> {
    let mut by_min = shapes_by_min(h, h.vertices().bits(), shape);
    if let Some(v) = endpoint {
        for list in &mut by_min {
            list.retain(|&s| s >> v & 1 == 0 || (h.adj_bits()[v] & s).count_ones() <= 1);
        }
    }
    for list in &mut by_min {
        // large parts first: good covers are found early
        list.sort_by_key(|s| std::cmp::Reverse(s.count_ones()));
        budget.used += list.len() as u64;
    }
    let mut memo: HashMap<u64, (u32, u64)> = HashMap::new();
    best_partition(h.vertices().bits(), &by_min, &mut memo, budget)?;
    let mut parts = Vec::new();
    let mut rest = h.vertices().bits();
    while rest != 0 {
        let (_, part) = memo[&rest];
        parts.push(VertexSet(part));
        rest &= !part;
    }
    Ok(parts)
}

fn best_partition(
    rest: u64,
    by_min: &[Vec<u64>],
    memo: &mut HashMap<u64, (u32, u64)>,
    budget: &mut Budget,
) -> Result<u32, SolveError> {
    if rest == 0 {
        return Ok(0);
    }
    if let Some(&(v, _)) = memo.get(&rest) {
        return Ok(v);
    }
    budget.tick()?;
    let v = rest.trailing_zeros() as usize;
    let mut best = (u32::MAX, 0);
    for &s in &by_min[v] {
        if s & !rest != 0 {
            continue;
        }
        let remaining = rest & !s;
        // a part covers the rest on its own: nothing can beat one more part
        let lower = if remaining == 0 { 0 } else { 1 };
        if 1 + lower >= best.0 {
            continue;
        }
        let c = 1 + best_partition(remaining, by_min, memo, budget)?;
        if c < best.0 {
            best = (c, s);
        }
    }
    memo.insert(rest, best);
    Ok(best.0)
}

/// Every minimum path cover of `g`, up to `limit` of them, parts sorted by
/// first vertex. The flag reports whether the list was cut short.
pub fn minimum_path_covers(g: &Graph, limit: usize, cfg: &SolverConfig) -> Result<(Vec<Cover>, bool), SolveError> {
    let p = path_cover_number_with(g, cfg)?.value;
    let by_min = shapes_by_min(g, g.vertices().bits(), Shape::Path);
    let mut budget = Budget::new(cfg.node_limit);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let full = all_partitions(g.vertices().bits(), p, &by_min, &mut chosen, &mut out, limit, &mut budget)?;
    Ok((out, !full))
}

/// Returns false once `limit` covers have been collected.
fn all_partitions(
    rest: u64,
    left: usize,
    by_min: &[Vec<u64>],
    chosen: &mut Vec<VertexSet>,
    out: &mut Vec<Cover>,
    limit: usize,
    budget: &mut Budget,
) -> Result<bool, SolveError> {
    if rest == 0 {
        if out.len() == limit {
            return Ok(false);
        }
        out.push(Cover::new(CoverKind::Path, chosen.clone()));
        return Ok(true);
    }
    if left == 0 {
        return Ok(true);
    }
    budget.tick()?;
    let v = rest.trailing_zeros() as usize;
    for &s in &by_min[v] {
        if s & !rest != 0 {
            continue;
        }
        chosen.push(VertexSet(s));
        let more = all_partitions(rest & !s, left - 1, by_min, chosen, out, limit, budget)?;
        chosen.pop();
        if !more {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest edge count the clique cover search handles.
pub const CLIQUE_COVER_MAX_EDGES: usize = 128;

pub fn edge_clique_cover_number_with(g: &Graph, cfg: &SolverConfig) -> Result<ParameterResult, SolveError> {
    if g.n() == 0 {
        return Err(SolveError::EmptyGraph);
    }
    let edges = g.edge_count();
    if edges > CLIQUE_COVER_MAX_EDGES {
        return Err(SolveError::TooLarge { edges, limit: CLIQUE_COVER_MAX_EDGES });
    }
    let mut budget = Budget::new(cfg.node_limit);
    let mut parts = Vec::new();
    for comp in g.components() {
        if comp.len() >= 2 {
            parts.extend(min_clique_cover(g, comp, &mut budget)?);
        }
    }
    parts.sort();
    Ok(ParameterResult {
        parameter: Parameter::EdgeCliqueCover,
        value: parts.len(),
        certificate: Certificate::Cover(Cover::new(CoverKind::CliqueEdge, parts)),
        stats: SearchStats { nodes: budget.used, lower_bound: 0 },
    })
}

/// Maximal cliques inside `within` (Bron–Kerbosch with pivoting).
pub fn maximal_cliques(g: &Graph, within: VertexSet) -> Vec<VertexSet> {
    fn bk(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<VertexSet>) {
        if p == 0 && x == 0 {
            out.push(VertexSet(r));
            return;
        }
        let pivot = VertexSet(p | x)
            .iter()
            .max_by_key(|&u| (adj[u] & p).count_ones())
            .expect("p | x is non-empty");
        let mut cand = p & !adj[pivot];
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            bk(adj, r | 1 << v, p & adj[v], x & adj[v], out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    let adj: Vec<u64> = g.adj_bits().iter().map(|a| a & within.bits()).collect();
    let mut out = Vec::new();
    bk(&adj, 0, within.bits(), 0, &mut out);
    out.sort();
    out
}

fn min_clique_cover(g: &Graph, comp: VertexSet, budget: &mut Budget) -> Result<Vec<VertexSet>, SolveError> {
    let edges: Vec<(usize, usize)> =
        g.edges().into_iter().filter(|&(u, v)| comp.contains(u) && comp.contains(v)).collect();
    let cliques: Vec<VertexSet> = maximal_cliques(g, comp).into_iter().filter(|c| c.len() >= 2).collect();
    let masks: Vec<u128> = cliques
        .iter()
        .map(|c| {
            edges
                .iter()
                .enumerate()
                .filter(|(_, &(u, v))| c.contains(u) && c.contains(v))
                .fold(0u128, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let by_edge: Vec<Vec<usize>> = (0..edges.len())
        .map(|e| (0..cliques.len()).filter(|&c| masks[c] >> e & 1 == 1).collect())
        .collect();
    let largest = masks.iter().map(|m| m.count_ones()).max().unwrap_or(1);
    let all: u128 = if edges.len() == 128 { u128::MAX } else { (1u128 << edges.len()) - 1 };

    // greedy start
    let mut greedy = Vec::new();
    let mut left = all;
    while left != 0 {
        let c = (0..cliques.len()).max_by_key(|&c| (masks[c] & left).count_ones()).unwrap();
        greedy.push(c);
        left &= !masks[c];
    }
    let mut best = greedy;
    let mut chosen = Vec::new();
    cover_search(all, &masks, &by_edge, largest, &mut chosen, &mut best, budget)?;
    Ok(best.into_iter().map(|c| cliques[c]).collect())
}

fn cover_search(
    left: u128,
    masks: &[u128],
    by_edge: &[Vec<usize>],
    largest: u32,
    chosen: &mut Vec<usize>,
    best: &mut Vec<usize>,
    budget: &mut Budget,
) -> Result<(), SolveError> {
    budget.tick()?;
    if left == 0 {
        if chosen.len() < best.len() {
            *best = chosen.clone();
        }
        return Ok(());
    }
    let need = left.count_ones().div_ceil(largest) as usize;
    if chosen.len() + need >= best.len() {
        return Ok(());
    }
    let e = left.trailing_zeros() as usize;
    let mut options = by_edge[e].clone();
    options.sort_by_key(|&c| std::cmp::Reverse((masks[c] & left).count_ones()));
    for c in options {
        chosen.push(c);
        cover_search(left & !masks[c], masks, by_edge, largest, chosen, best, budget)?;
        chosen.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forcing::is_forcing_set;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edge_list(n, e).unwrap()
    }
    fn path(n: usize) -> Graph {
        g(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>())
    }
    fn cycle(n: usize) -> Graph {
        g(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }
    fn complete(n: usize) -> Graph {
        let mut e = vec![];
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        g(n, &e)
    }

    #[test]
    fn combinations_enumerate_every_subset_once() {
        let all: Vec<u64> = Combinations::new(5, 2).collect();
        assert_eq!(all.len(), 10);
        assert!(all.iter().all(|s| s.count_ones() == 2 && *s < 32));
        assert_eq!(Combinations::new(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(Combinations::new(3, 3).collect::<Vec<_>>(), vec![7]);
        assert_eq!(Combinations::new(2, 3).count(), 0);
        assert_eq!(Combinations::new(64, 64).collect::<Vec<_>>(), vec![u64::MAX]);
    }

    #[test]
    fn forcing_numbers_of_named_graphs() {
        let z = |h: &Graph| zero_forcing_number(h).unwrap().value;
        let zp = |h: &Graph| psd_forcing_number(h).unwrap().value;
        assert_eq!(z(&path(5)), 1);
        assert_eq!(z(&complete(5)), 4);
        assert_eq!(zp(&complete(4)), 3);
        let k23 = g(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        assert_eq!(zp(&k23), 2);
        let k1 = Graph::empty(1).unwrap();
        assert_eq!((z(&k1), zp(&k1)), (1, 1));
        // disconnected: sum over components
        let two_paths = g(4, &[(0, 1), (2, 3)]);
        assert_eq!(z(&two_paths), 2);
        assert_eq!(zero_forcing_number(&Graph::empty(0).unwrap()), Err(SolveError::EmptyGraph));
    }

    #[test]
    fn certificates_are_forcing_sets() {
        let h = cycle(7);
        let r = zero_forcing_number(&h).unwrap();
        assert!(is_forcing_set(&h, r.set().unwrap(), Rule::Standard));
        let r = psd_forcing_number(&h).unwrap();
        assert!(is_forcing_set(&h, r.set().unwrap(), Rule::Positive));
    }

    #[test]
    fn cover_numbers_of_named_graphs() {
        let p = |h: &Graph| path_cover_number(h).unwrap();
        let t = |h: &Graph| tree_cover_number(h).unwrap();
        assert_eq!(p(&complete(4)).value, 2);
        assert_eq!(p(&path(9)).value, 1);
        assert_eq!(p(&cycle(5)).value, 2);
        assert_eq!(t(&complete(5)).value, 3);
        assert_eq!(t(&cycle(4)).value, 2);
        let star = g(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(t(&star).value, 1);
        assert_eq!(p(&star).value, 3);
        for h in [complete(5), cycle(6), star] {
            p(&h).cover().unwrap().validate(&h).unwrap();
            t(&h).cover().unwrap().validate(&h).unwrap();
        }
    }

    #[test]
    fn endpoint_constrained_path_cover() {
        // u = 1 is the middle of P_3: forcing it to be an endpoint costs a path
        let p3 = path(3);
        assert_eq!(path_cover_with_endpoint(&p3, 1, &SolverConfig::default()).unwrap().value, 2);
        assert_eq!(path_cover_with_endpoint(&p3, 0, &SolverConfig::default()).unwrap().value, 1);
    }

    #[test]
    fn all_minimum_path_covers() {
        // C_4: two pairs of opposite edges, and four ways to split off one vertex
        let cfg = SolverConfig::default();
        let (covers, cut) = minimum_path_covers(&cycle(4), 100, &cfg).unwrap();
        assert_eq!((covers.len(), cut), (6, false));
        covers.iter().for_each(|c| c.validate(&cycle(4)).unwrap());
        let (covers, cut) = minimum_path_covers(&cycle(4), 3, &cfg).unwrap();
        assert_eq!((covers.len(), cut), (3, true));
    }

    #[test]
    fn clique_cover_numbers() {
        let cc = |h: &Graph| edge_clique_cover_number(h).unwrap();
        assert_eq!(cc(&complete(4)).value, 1);
        assert_eq!(cc(&path(3)).value, 2);
        assert_eq!(cc(&cycle(4)).value, 4);
        assert_eq!(cc(&Graph::empty(3).unwrap()).value, 0);
        let bowtie = g(5, &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]);
        let r = cc(&bowtie);
        assert_eq!(r.value, 2);
        r.cover().unwrap().validate(&bowtie).unwrap();
    }

    #[test]
    fn budget_is_enforced() {
        let cfg = SolverConfig { node_limit: 3, degree_bound: true };
        assert_eq!(zero_forcing_number_with(&g(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]), &cfg), Err(SolveError::BudgetExceeded(3)));
        assert!(matches!(tree_cover_number_with(&cycle(8), &cfg), Err(SolveError::BudgetExceeded(3))));
    }

    #[test]
    fn degree_bound_does_not_change_values() {
        let plain = SolverConfig { degree_bound: false, ..SolverConfig::default() };
        for h in [complete(5), cycle(6), path(4), g(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])] {
            assert_eq!(
                zero_forcing_number(&h).unwrap().value,
                zero_forcing_number_with(&h, &plain).unwrap().value
            );
        }
    }
}
