//! Structural recognition: blocks, block-cycle graphs, outerplanar
//! embeddings, chordality, k-trees and layered path partitions.
//!
//! Every recogniser returns a certificate that can be replayed against the
//! graph with [`FamilyCertificate::verify`].

mod blocks;
mod chordal;
mod ktree;
mod outerplanar;
mod series;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

pub use blocks::{block_decomposition, classify_block_cycle, classify_unicyclic, BlockCycleEvidence, BlockDecomposition, PendantBlock};
pub use chordal::{chordal_peo, is_perfect_elimination_order};
pub use ktree::{k_tree_certificate, Attachment, ClusterEvidence, KTreeEvidence};
pub use outerplanar::{outerplanar_embedding, ClassifiedEdge, EdgeClass, OuterEmbedding};
pub use series::{double_path_certificate, parallel_path_layers, verify_parallel_paths};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("the graph is disconnected")]
    Disconnected,
    #[error("the graph has no vertices")]
    Empty,
    #[error("the graph is a path")]
    IsPath,
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid {kind:?} certificate: {reason}")]
pub struct CertificateError {
    pub kind: FamilyKind,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    BlockCycle,
    Unicyclic,
    ChordalPeo,
    KTree,
    KCluster,
    DoublePath,
    SeriesOfParallelPaths,
    DoubleTree,
    Outerplanar,
    VertexSum,
}

/// Recognition evidence, tagged by family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyCertificate {
    BlockCycle(BlockCycleEvidence),
    Unicyclic(BlockCycleEvidence),
    ChordalPeo {
        /// Each vertex's later neighbours form a clique.
        order: Vec<usize>,
    },
    KTree(KTreeEvidence),
    KCluster(KTreeEvidence),
    DoublePath {
        /// Both paths run left to right.
        paths: Vec<Vec<usize>>,
        embedding: OuterEmbedding,
    },
    SeriesOfParallelPaths {
        paths: Vec<Vec<usize>>,
    },
}

impl FamilyCertificate {
    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilyCertificate::BlockCycle(_) => FamilyKind::BlockCycle,
            FamilyCertificate::Unicyclic(_) => FamilyKind::Unicyclic,
            FamilyCertificate::ChordalPeo { .. } => FamilyKind::ChordalPeo,
            FamilyCertificate::KTree(_) => FamilyKind::KTree,
            FamilyCertificate::KCluster(_) => FamilyKind::KCluster,
            FamilyCertificate::DoublePath { .. } => FamilyKind::DoublePath,
            FamilyCertificate::SeriesOfParallelPaths { .. } => FamilyKind::SeriesOfParallelPaths,
        }
    }

    /// The covering paths of a double-path or series certificate.
    pub fn paths(&self) -> Option<&[Vec<usize>]> {
        match self {
            FamilyCertificate::DoublePath { paths, .. } | FamilyCertificate::SeriesOfParallelPaths { paths } => {
                Some(paths)
            }
            _ => None,
        }
    }

    /// Replays the evidence against `g`.
    pub fn verify(&self, g: &Graph) -> Result<(), CertificateError> {
        let kind = self.kind();
        let fail = |reason: String| CertificateError { kind, reason };
        match self {
            FamilyCertificate::BlockCycle(ev) => ev.verify(g).map_err(fail),
            FamilyCertificate::Unicyclic(ev) => {
                ev.verify(g).map_err(fail)?;
                let cycles = ev.steps.iter().filter(|s| s.is_cycle()).count();
                if cycles != 1 {
                    return Err(fail(format!("{cycles} cycle blocks, expected one")));
                }
                Ok(())
            }
            FamilyCertificate::ChordalPeo { order } => {
                if is_perfect_elimination_order(g, order) {
                    Ok(())
                } else {
                    Err(fail("not a perfect elimination ordering".into()))
                }
            }
            FamilyCertificate::KTree(ev) => {
                if ev.cluster.is_some() {
                    return Err(fail("cluster evidence under a plain k-tree tag".into()));
                }
                ev.verify(g).map_err(fail)
            }
            FamilyCertificate::KCluster(ev) => {
                if ev.cluster.is_none() {
                    return Err(fail("missing cluster evidence".into()));
                }
                ev.verify(g).map_err(fail)
            }
            FamilyCertificate::DoublePath { paths, embedding } => {
                if paths.len() != 2 {
                    return Err(fail(format!("{} paths", paths.len())));
                }
                verify_parallel_paths(g, paths).map_err(fail)?;
                embedding.verify(g).map_err(fail)
            }
            FamilyCertificate::SeriesOfParallelPaths { paths } => verify_parallel_paths(g, paths).map_err(fail),
        }
    }
}
