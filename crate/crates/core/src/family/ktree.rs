use serde::{Deserialize, Serialize};

use super::FamilyError;
use crate::cover::{Cover, CoverKind};
use crate::graph::{Graph, VertexSet};
use crate::solvers::edge_clique_cover_number;
use crate::structure::FamilyCertificate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KClusterParameters {
    pub k: usize,
    /// Number of distinct neighbourhoods of the vertices outside the base clique.
    pub s: usize,
    pub z_plus: usize,
    pub t: usize,
}

/// Z+ and T of a k-cluster, read off its cluster evidence.
pub fn k_cluster_parameters(g: &Graph, cert: &FamilyCertificate) -> Result<KClusterParameters, FamilyError> {
    let FamilyCertificate::KCluster(ev) = cert else {
        return Err(FamilyError::WrongCertificate { expected: "k-cluster", got: cert.kind() });
    };
    cert.verify(g)?;
    let k = ev.k;
    let s = ev.cluster.as_ref().expect("verified cluster evidence").s.len();
    let z_plus = if s >= 3 { k + 1 } else { k };
    let half = (k + 1).div_ceil(2);
    let t = if !k.is_multiple_of(2) {
        half
    } else if s == k + 1 {
        half + 1
    } else {
        half
    };
    Ok(KClusterParameters { k, s, z_plus, t })
}

/// A tree cover of a k-tree with odd k into (k+1)/2 trees: the base clique
/// is split into pairs, and every later vertex joins the one tree meeting
/// its attachment clique in a single vertex.
pub fn k_tree_tree_cover_odd(g: &Graph, cert: &FamilyCertificate, k: usize) -> Result<Cover, FamilyError> {
    let ev = match cert {
        FamilyCertificate::KTree(ev) | FamilyCertificate::KCluster(ev) => ev,
        other => return Err(FamilyError::WrongCertificate { expected: "k-tree", got: other.kind() }),
    };
    if ev.k != k {
        return Err(FamilyError::Precondition(format!("certificate is for k = {}, not {k}", ev.k)));
    }
    if k.is_multiple_of(2) {
        return Err(FamilyError::Precondition(format!("k = {k} is even")));
    }
    cert.verify(g)?;
    let base = ev.base.to_vec();
    let mut parts: Vec<VertexSet> = base.chunks(2).map(|c| c.iter().copied().collect()).collect();
    for a in &ev.steps {
        let hits: Vec<usize> = (0..parts.len()).filter(|&i| parts[i].intersection(a.clique).len() == 1).collect();
        let [i] = hits[..] else {
            return Err(FamilyError::VerificationFailed(format!(
                "vertex {} meets {} trees in exactly one vertex",
                a.vertex,
                hits.len()
            )));
        };
        parts[i].insert(a.vertex);
    }
    let cover = Cover::new(CoverKind::Tree, parts);
    cover.validate(g)?;
    Ok(cover)
}

/// Z+ of a chordal graph as n - cc.
pub fn chordal_psd_identity(g: &Graph, cert: &FamilyCertificate) -> Result<usize, FamilyError> {
    if !matches!(cert, FamilyCertificate::ChordalPeo { .. }) {
        return Err(FamilyError::WrongCertificate { expected: "chordal", got: cert.kind() });
    }
    cert.verify(g)?;
    Ok(g.n() - edge_clique_cover_number(g)?.value)
}
