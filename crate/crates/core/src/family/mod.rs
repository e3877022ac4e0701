//! Constructive certificates for the families where a forcing parameter
//! equals a cover number.
//!
//! Every construction ends with a replay: the forcing set is closed under
//! the rule with forces restricted to the parts of the cover, and the run
//! must blacken the whole graph. A failed replay is reported as an error.

mod block_cycle;
mod ktree;
mod paths;
mod trees;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::{Cover, CoverError};
use crate::forcing::{closure_within_parts, is_forcing_set, ForcingRun, Rule};
use crate::graph::{Graph, GraphError, VertexSet};
use crate::solvers::SolveError;
use crate::structure::{CertificateError, FamilyKind, StructureError};

pub use block_cycle::block_cycle_solution;
pub use ktree::{chordal_psd_identity, k_cluster_parameters, k_tree_tree_cover_odd, KClusterParameters};
pub use paths::{double_path_solution, p2_interval_witness};
pub use trees::{
    compose_vertex_sum, consecutive_or_pendant_trees, double_tree_cut_pair, outerplanar_solution, TreeClassification,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error(transparent)]
    Certificate(#[from] CertificateError),
    #[error("expected a {expected} certificate, got {got:?}")]
    WrongCertificate { expected: &'static str, got: FamilyKind },
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("construction failed to replay: {0}")]
    VerificationFailed(String),
}

/// A parameter identity asserted by a construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Claim {
    #[serde(rename = "Z = P")]
    ZEqualsP,
    #[serde(rename = "Z+ = T")]
    ZPlusEqualsT,
}

/// A forcing set together with the cover its forcing chains (trees) trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySolution {
    pub family: FamilyKind,
    pub rule: Rule,
    pub forcing_set: VertexSet,
    pub cover: Cover,
    pub claimed_equalities: Vec<Claim>,
    /// Replay transcript: a run from `forcing_set` whose chains (trees)
    /// are the parts of `cover`.
    pub run: ForcingRun,
}

impl FamilySolution {
    /// Replays `roots` inside `parts` and packages the result.
    pub(crate) fn build(
        g: &Graph,
        family: FamilyKind,
        rule: Rule,
        roots: VertexSet,
        cover: Cover,
        claimed_equalities: Vec<Claim>,
    ) -> Result<Self, FamilyError> {
        let run = guided_run(g, rule, roots, &cover.parts)
            .ok_or_else(|| FamilyError::VerificationFailed(format!("{roots:?} does not force along {:?}", cover.parts)))?;
        let sol = FamilySolution { family, rule, forcing_set: roots, cover, claimed_equalities, run };
        sol.verify(g)?;
        Ok(sol)
    }

    pub fn value(&self) -> usize {
        self.forcing_set.len()
    }

    /// Checks every invariant: the cover is valid, the set is forcing, the
    /// transcript replays, and its chains (trees) are the cover's parts.
    pub fn verify(&self, g: &Graph) -> Result<(), FamilyError> {
        let fail = |s: &str| Err(FamilyError::VerificationFailed(s.to_string()));
        self.cover.validate(g)?;
        if self.forcing_set.len() != self.cover.len() {
            return fail("forcing set and cover differ in size");
        }
        if !is_forcing_set(g, self.forcing_set, self.rule) {
            return fail("not a forcing set");
        }
        if &self.run.graph != g || self.run.initial != self.forcing_set || self.run.rule != self.rule {
            return fail("transcript belongs to another instance");
        }
        self.run.validate().map_err(|e| FamilyError::VerificationFailed(e.to_string()))?;
        let traced = self.run.extract_cover().map_err(|e| FamilyError::VerificationFailed(e.to_string()))?;
        if !traced.same_parts(&self.cover) {
            return fail("forcing chains differ from the cover");
        }
        Ok(())
    }
}

/// A complete run from `roots` using only forces inside parts, provided
/// every part holds exactly one root.
pub(crate) fn guided_run(g: &Graph, rule: Rule, roots: VertexSet, parts: &[VertexSet]) -> Option<ForcingRun> {
    if parts.iter().any(|p| p.intersection(roots).len() != 1) {
        return None;
    }
    let run = closure_within_parts(g, roots, rule, parts).ok()?;
    run.is_complete().then_some(run)
}

/// One endpoint of every path such that the paths are the forcing chains
/// from those endpoints, if any choice works. Choices are tried in
/// binary-counter order over the parts, first endpoints first; `prefer`
/// filters the acceptable root sets.
pub fn chain_roots_for_cover(g: &Graph, parts: &[VertexSet], prefer: impl Fn(&[usize]) -> bool) -> Option<Vec<usize>> {
    let ends: Vec<[usize; 2]> = parts
        .iter()
        .map(|&p| {
            let order = g.path_order(p)?;
            Some([order[0], *order.last().unwrap()])
        })
        .collect::<Option<_>>()?;
    let free: Vec<usize> = (0..parts.len()).filter(|&i| ends[i][0] != ends[i][1]).collect();
    if free.len() > 20 {
        return None;
    }
    for mask in 0u32..1 << free.len() {
        let mut roots: Vec<usize> = ends.iter().map(|e| e[0]).collect();
        for (bit, &i) in free.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                roots[i] = ends[i][1];
            }
        }
        if !prefer(&roots) {
            continue;
        }
        if guided_run(g, Rule::Standard, roots.iter().copied().collect(), parts).is_some() {
            return Some(roots);
        }
    }
    None
}

/// The subgraph induced by `s` with label maps in both directions.
pub(crate) struct Local {
    pub graph: Graph,
    pub to_global: Vec<usize>,
    pub to_local: Vec<usize>,
}

impl Local {
    pub fn new(g: &Graph, s: VertexSet) -> Local {
        let (graph, to_global) = g.induced_subgraph(s).expect("subset of the graph");
        let mut to_local = vec![usize::MAX; g.n()];
        for (i, &v) in to_global.iter().enumerate() {
            to_local[v] = i;
        }
        Local { graph, to_global, to_local }
    }

    pub fn set_in(&self, s: VertexSet) -> VertexSet {
        s.iter().map(|v| self.to_local[v]).collect()
    }
}
