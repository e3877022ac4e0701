use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverKind {
    /// Vertex-disjoint induced paths covering every vertex.
    #[serde(rename = "path_cover")]
    Path,
    /// Vertex-disjoint induced trees covering every vertex.
    #[serde(rename = "tree_cover")]
    Tree,
    /// Cliques (possibly overlapping) containing every edge.
    #[serde(rename = "clique_edge_cover")]
    CliqueEdge,
}

/// A path cover, tree cover or edge clique cover of some graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cover {
    pub kind: CoverKind,
    pub parts: Vec<VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("part {0} is empty")]
    EmptyPart(usize),
    #[error("parts {0} and {1} overlap")]
    Overlap(usize, usize),
    #[error("vertices {0:?} are not covered")]
    Uncovered(VertexSet),
    #[error("part {0} contains vertices outside the graph")]
    OutOfRange(usize),
    #[error("part {index} does not induce a {what}")]
    BadPart { index: usize, what: &'static str },
    #[error("edge {0:?} lies in no part")]
    UncoveredEdge((usize, usize)),
}

impl Cover {
    pub fn new(kind: CoverKind, parts: Vec<VertexSet>) -> Self {
        Cover { kind, parts }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Index of the part containing `v` (first one, for clique covers).
    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(v))
    }

    /// Parts sorted by their bit pattern, for comparisons up to part order.
    pub fn canonical_parts(&self) -> Vec<VertexSet> {
        let mut p = self.parts.clone();
        p.sort();
        p
    }

    pub fn same_parts(&self, other: &Cover) -> bool {
        self.canonical_parts() == other.canonical_parts()
    }

    /// Checks every structural invariant of this cover against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), CoverError> {
        let all = g.vertices();
        for (i, p) in self.parts.iter().enumerate() {
            if p.is_empty() {
                return Err(CoverError::EmptyPart(i));
            }
            if !p.is_subset(all) {
                return Err(CoverError::OutOfRange(i));
            }
        }
        match self.kind {
            CoverKind::Path | CoverKind::Tree => {
                let mut seen = VertexSet::EMPTY;
                for (i, &p) in self.parts.iter().enumerate() {
                    if !p.is_disjoint(seen) {
                        let j = self.parts[..i].iter().position(|q| !q.is_disjoint(p)).unwrap_or(0);
                        return Err(CoverError::Overlap(j, i));
                    }
                    seen = seen.union(p);
                    let ok = match self.kind {
                        CoverKind::Path => g.induces_path(p),
                        _ => g.induces_tree(p),
                    };
                    if !ok {
                        let what = if self.kind == CoverKind::Path { "path" } else { "tree" };
                        return Err(CoverError::BadPart { index: i, what });
                    }
                }
                if seen != all {
                    return Err(CoverError::Uncovered(all.difference(seen)));
                }
            }
            CoverKind::CliqueEdge => {
                for (i, &p) in self.parts.iter().enumerate() {
                    if !g.induces_clique(p) {
                        return Err(CoverError::BadPart { index: i, what: "clique" });
                    }
                }
                for (u, v) in g.edges() {
                    if !self.parts.iter().any(|p| p.contains(u) && p.contains(v)) {
                        return Err(CoverError::UncoveredEdge((u, v)));
                    }
                }
            }
        }
        Ok(())
    }
}
