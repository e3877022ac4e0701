//! The standard and positive colour-change rules.
//!
//! A run is computed in synchronous rounds. Every force legal against the
//! black set at the start of a round is applied at once; a white vertex that
//! several black vertices could force records the smallest forcer. Under the
//! positive rule the white components are recomputed at the start of every
//! round, and a black vertex may force once into each of them.
//!
//! Delaying a legal force never makes it illegal (the black set only grows,
//! which can only shrink the forcer's white neighbourhood and the white
//! components), so a round-synchronous run is also a valid sequential one.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::{Cover, CoverKind};
use crate::graph::{Graph, GraphError, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Standard,
    Positive,
}

/// One application of a colour-change rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Force {
    pub forcer: usize,
    pub forced: usize,
    pub round: usize,
    /// The white component the force happened in (positive rule only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub component: Option<VertexSet>,
}

/// A chronological record of forces from an initial black set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcingRun {
    pub graph: Graph,
    pub rule: Rule,
    pub initial: VertexSet,
    pub forces: Vec<Force>,
    pub derived: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForcingError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("run is incomplete: {0:?} never turned black")]
    Incomplete(VertexSet),
    #[error("force {index} ({forcer} -> {forced}) is not legal in round {round}")]
    IllegalForce { index: usize, forcer: usize, forced: usize, round: usize },
    #[error("vertex {0} is forced more than once")]
    ForcedTwice(usize),
    #[error("derived set does not match the recorded forces")]
    DerivedMismatch,
}

/// Maximal run of `rule` from `initial`.
pub fn closure(g: &Graph, initial: VertexSet, rule: Rule) -> Result<ForcingRun, ForcingError> {
    g.check_set(initial)?;
    Ok(run(g, initial, rule, |_, _| true))
}

/// Maximal run that only performs forces between vertices of the same part.
///
/// If such a run blackens every vertex and each part holds exactly one
/// initial vertex, the forcing chains (trees) of the run are exactly the
/// parts. Because legal forces stay legal, this greedy run reaches every
/// vertex that any part-respecting process can reach.
pub fn closure_within_parts(
    g: &Graph,
    initial: VertexSet,
    rule: Rule,
    parts: &[VertexSet],
) -> Result<ForcingRun, ForcingError> {
    g.check_set(initial)?;
    let mut part_of = vec![usize::MAX; g.n()];
    for (i, p) in parts.iter().enumerate() {
        g.check_set(*p)?;
        for v in p.iter() {
            part_of[v] = i;
        }
    }
    Ok(run(g, initial, rule, |u, w| part_of[u] != usize::MAX && part_of[u] == part_of[w]))
}

pub fn is_forcing_set(g: &Graph, initial: VertexSet, rule: Rule) -> bool {
    g.check_set(initial).is_ok() && derived_set(g.adj_bits(), initial.bits(), rule) == g.vertices().bits()
}

fn run(g: &Graph, initial: VertexSet, rule: Rule, allow: impl Fn(usize, usize) -> bool) -> ForcingRun {
    let all = g.vertices();
    let mut black = initial;
    let mut forces = Vec::new();
    let mut round = 0;
    loop {
        let white = all.difference(black);
        let mut forcer_of = [usize::MAX; 64];
        let mut component_of = [VertexSet::EMPTY; 64];
        let mut new = VertexSet::EMPTY;
        match rule {
            Rule::Standard => {
                for u in black.iter() {
                    let wn = g.neighbors(u).intersection(white);
                    if wn.len() == 1 {
                        let w = wn.first().unwrap();
                        if !new.contains(w) && allow(u, w) {
                            forcer_of[w] = u;
                            new.insert(w);
                        }
                    }
                }
            }
            Rule::Positive => {
                let comps = g.components_within(white);
                for u in black.iter() {
                    let nu = g.neighbors(u);
                    for &c in &comps {
                        let wn = nu.intersection(c);
                        if wn.len() == 1 {
                            let w = wn.first().unwrap();
                            if !new.contains(w) && allow(u, w) {
                                forcer_of[w] = u;
                                component_of[w] = c;
                                new.insert(w);
                            }
                        }
                    }
                }
            }
        }
        if new.is_empty() {
            break;
        }
        // forces listed by forcer, then forced vertex
        let mut batch: Vec<Force> = new
            .iter()
            .map(|w| Force {
                forcer: forcer_of[w],
                forced: w,
                round,
                component: (rule == Rule::Positive).then_some(component_of[w]),
            })
            .collect();
        batch.sort_by_key(|f| (f.forcer, f.forced));
        forces.extend(batch);
        black = black.union(new);
        round += 1;
    }
    ForcingRun { graph: g.clone(), rule, initial, forces, derived: black }
}

/// Final black set of a maximal run, without recording forces.
pub(crate) fn derived_set(adj: &[u64], initial: u64, rule: Rule) -> u64 {
    let n = adj.len();
    let all = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut black = initial;
    match rule {
        Rule::Standard => loop {
            let before = black;
            let mut b = black;
            while b != 0 {
                let u = b.trailing_zeros() as usize;
                b &= b - 1;
                let wn = adj[u] & !black;
                if wn != 0 && wn & (wn - 1) == 0 {
                    black |= wn;
                }
            }
            if black == before {
                return black;
            }
        },
        Rule::Positive => loop {
            let before = black;
            let mut white = all & !black;
            while white != 0 {
                // grow one white component
                let start = white & white.wrapping_neg();
                let mut comp = start;
                let mut frontier = start;
                while frontier != 0 {
                    let mut next = 0;
                    let mut f = frontier;
                    while f != 0 {
                        let v = f.trailing_zeros() as usize;
                        f &= f - 1;
                        next |= adj[v];
                    }
                    next &= white & !comp;
                    comp |= next;
                    frontier = next;
                }
                white &= !comp;
                let mut b = before;
                let mut gained = 0;
                while b != 0 {
                    let u = b.trailing_zeros() as usize;
                    b &= b - 1;
                    let wn = adj[u] & comp;
                    if wn != 0 && wn & (wn - 1) == 0 {
                        gained |= wn;
                    }
                }
                black |= gained;
            }
            if black == before {
                return black;
            }
        },
    }
}

impl ForcingRun {
    pub fn is_complete(&self) -> bool {
        self.derived == self.graph.vertices()
    }

    /// Number of rounds in which at least one force happened.
    pub fn rounds(&self) -> usize {
        self.forces.last().map_or(0, |f| f.round + 1)
    }

    /// The round after which `v` is black: 0 for initial vertices, `r + 1`
    /// for a vertex forced in round `r`.
    pub fn black_since(&self, v: usize) -> Option<usize> {
        if self.initial.contains(v) {
            return Some(0);
        }
        self.forces.iter().find(|f| f.forced == v).map(|f| f.round + 1)
    }

    /// Replays the recorded forces and checks each one against the rule.
    pub fn validate(&self) -> Result<(), ForcingError> {
        let g = &self.graph;
        let all = g.vertices();
        let mut black = self.initial;
        let mut derived = self.initial;
        let mut i = 0;
        while i < self.forces.len() {
            let round = self.forces[i].round;
            let white = all.difference(black);
            let comps = if self.rule == Rule::Positive { g.components_within(white) } else { vec![] };
            let mut added = VertexSet::EMPTY;
            while i < self.forces.len() && self.forces[i].round == round {
                let f = &self.forces[i];
                let illegal = ForcingError::IllegalForce { index: i, forcer: f.forcer, forced: f.forced, round };
                if f.forcer >= g.n() || f.forced >= g.n() || !black.contains(f.forcer) || !white.contains(f.forced) {
                    return Err(illegal);
                }
                if derived.contains(f.forced) {
                    return Err(ForcingError::ForcedTwice(f.forced));
                }
                let ok = match self.rule {
                    Rule::Standard => g.neighbors(f.forcer).intersection(white) == VertexSet::singleton(f.forced),
                    Rule::Positive => match comps.iter().find(|c| c.contains(f.forced)) {
                        Some(&c) => {
                            f.component.is_none_or(|w| w == c)
                                && g.neighbors(f.forcer).intersection(c) == VertexSet::singleton(f.forced)
                        }
                        None => false,
                    },
                };
                if !ok {
                    return Err(illegal);
                }
                added.insert(f.forced);
                derived.insert(f.forced);
                i += 1;
            }
            black = black.union(added);
        }
        if derived != self.derived {
            return Err(ForcingError::DerivedMismatch);
        }
        Ok(())
    }

    /// The forcing chains (standard rule) or forcing trees (positive rule)
    /// of a complete run, one part per initial vertex, ordered by root.
    pub fn extract_cover(&self) -> Result<Cover, ForcingError> {
        if !self.is_complete() {
            return Err(ForcingError::Incomplete(self.graph.vertices().difference(self.derived)));
        }
        let mut parent = vec![usize::MAX; self.graph.n()];
        for f in &self.forces {
            parent[f.forced] = f.forcer;
        }
        let roots = self.initial.to_vec();
        let mut parts = vec![VertexSet::EMPTY; roots.len()];
        for v in 0..self.graph.n() {
            let mut r = v;
            while parent[r] != usize::MAX {
                r = parent[r];
            }
            let i = roots.binary_search(&r).expect("every vertex descends from an initial vertex");
            parts[i].insert(v);
        }
        let kind = match self.rule {
            Rule::Standard => CoverKind::Path,
            Rule::Positive => CoverKind::Tree,
        };
        Ok(Cover::new(kind, parts))
    }

    /// Forcing chains as vertex sequences, each starting at its initial vertex.
    /// Only meaningful for the standard rule.
    pub fn chains(&self) -> Vec<Vec<usize>> {
        let mut next = vec![usize::MAX; self.graph.n()];
        for f in &self.forces {
            next[f.forcer] = f.forced;
        }
        self.initial
            .iter()
            .map(|r| {
                let mut chain = vec![r];
                let mut cur = r;
                while next[cur] != usize::MAX {
                    cur = next[cur];
                    chain.push(cur);
                }
                chain
            })
            .collect()
    }
}

/// Convenience wrapper: `closure` followed by `extract_cover`.
pub fn extract_cover(run: &ForcingRun) -> Result<Cover, ForcingError> {
    run.extract_cover()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edge_list(n, e).unwrap()
    }

    fn forces(run: &ForcingRun) -> Vec<(usize, usize, usize)> {
        run.forces.iter().map(|f| (f.forcer, f.forced, f.round)).collect()
    }

    #[test]
    fn path_forces_along() {
        let p3 = g(3, &[(0, 1), (1, 2)]);
        let run = closure(&p3, VertexSet(1), Rule::Standard).unwrap();
        assert_eq!(forces(&run), vec![(0, 1, 0), (1, 2, 1)]);
        assert!(run.is_complete());
        assert_eq!(run.extract_cover().unwrap().parts, vec![VertexSet(0b111)]);
        assert_eq!(run.chains(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn triangle_stalls_under_both_rules() {
        let k3 = g(3, &[(0, 1), (1, 2), (0, 2)]);
        for rule in [Rule::Standard, Rule::Positive] {
            let run = closure(&k3, VertexSet(1), rule).unwrap();
            assert!(run.forces.is_empty());
            assert_eq!(run.derived, VertexSet(1));
            assert!(matches!(run.extract_cover(), Err(ForcingError::Incomplete(_))));
        }
    }

    #[test]
    fn star_center_forces_every_leaf_at_once() {
        let star = g(4, &[(0, 1), (0, 2), (0, 3)]);
        let run = closure(&star, VertexSet(1), Rule::Positive).unwrap();
        assert_eq!(forces(&run), vec![(0, 1, 0), (0, 2, 0), (0, 3, 0)]);
        assert_eq!(run.forces[1].component, Some(VertexSet(0b100)));
        assert_eq!(run.extract_cover().unwrap().parts, vec![VertexSet(0b1111)]);
        assert!(!is_forcing_set(&star, VertexSet(1), Rule::Standard));
    }

    #[test]
    fn cycle_from_adjacent_pair() {
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let run = closure(&c4, VertexSet(0b0011), Rule::Standard).unwrap();
        assert_eq!(forces(&run), vec![(0, 3, 0), (1, 2, 0)]);
        let cover = run.extract_cover().unwrap();
        assert_eq!(cover.parts, vec![VertexSet(0b1001), VertexSet(0b0110)]);
        cover.validate(&c4).unwrap();
    }

    #[test]
    fn smallest_forcer_wins() {
        // 0 and 2 both have 1 as their only white neighbour
        let p3 = g(3, &[(0, 1), (1, 2)]);
        let run = closure(&p3, VertexSet(0b101), Rule::Standard).unwrap();
        assert_eq!(forces(&run), vec![(0, 1, 0)]);
    }

    #[test]
    fn guided_run_respects_parts() {
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let parts = [VertexSet(0b0001), VertexSet(0b1110)];
        let run = closure_within_parts(&c4, VertexSet(0b0011), Rule::Standard, &parts).unwrap();
        assert_eq!(forces(&run), vec![(1, 2, 0), (2, 3, 1)]);
        assert!(run.extract_cover().unwrap().same_parts(&Cover::new(CoverKind::Path, parts.to_vec())));
        run.validate().unwrap();
    }

    #[test]
    fn forcing_set_queries() {
        let p5 = g(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert!(is_forcing_set(&p5, VertexSet(1), Rule::Standard));
        assert!(!is_forcing_set(&p5, VertexSet(1 << 2), Rule::Standard));
        assert!(is_forcing_set(&p5, VertexSet(1 << 2), Rule::Positive));
        assert!(!is_forcing_set(&p5, VertexSet(1 << 9), Rule::Standard));
        assert!(closure(&p5, VertexSet(1 << 9), Rule::Standard).is_err());
    }

    #[test]
    fn tampered_runs_fail_validation() {
        let p3 = g(3, &[(0, 1), (1, 2)]);
        let mut run = closure(&p3, VertexSet(1), Rule::Standard).unwrap();
        run.validate().unwrap();
        run.forces[1].round = 0;
        assert!(matches!(run.validate(), Err(ForcingError::IllegalForce { index: 1, .. })));
        let mut run = closure(&p3, VertexSet(1), Rule::Standard).unwrap();
        run.derived = VertexSet(0b011);
        assert_eq!(run.validate(), Err(ForcingError::DerivedMismatch));
    }
}
