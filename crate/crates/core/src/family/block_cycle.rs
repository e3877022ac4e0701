//! Block-cycle graphs, built up one pendant block at a time.
//!
//! The chains of a minimum path cover are maintained while blocks are
//! added back in reverse elimination order. Attaching at the end of a chain
//! extends it; attaching at the start of one first reverses every chain;
//! attaching in the middle of a chain uses a cover of the current graph in
//! which the attachment vertex ends its path, when one of minimum size
//! exists, and opens a new chain otherwise.

use super::{chain_roots_for_cover, guided_run, Claim, FamilyError, FamilySolution, Local};
use crate::cover::{Cover, CoverKind};
use crate::forcing::Rule;
use crate::graph::{Graph, VertexSet};
use crate::solvers::{path_cover_with_endpoint, SolverConfig};
use crate::structure::FamilyCertificate;

/// A zero forcing set whose forcing chains form a minimum path cover.
pub fn block_cycle_solution(g: &Graph, cert: &FamilyCertificate) -> Result<FamilySolution, FamilyError> {
    let ev = match cert {
        FamilyCertificate::BlockCycle(ev) | FamilyCertificate::Unicyclic(ev) => ev,
        other => return Err(FamilyError::WrongCertificate { expected: "block-cycle", got: other.kind() }),
    };
    cert.verify(g)?;
    let mut steps = ev.steps.iter().rev();
    let base = steps.next().expect("verified evidence has a block");
    let mut chains: Vec<Vec<usize>> = match base.order.len() {
        1 | 2 => vec![base.order.clone()],
        _ => vec![vec![base.order[0]], base.order[1..].to_vec()],
    };
    let mut cur = base.block;
    check_chains(g, cur, &chains)?;
    for step in steps {
        let u = step.attach.expect("only the base block is unattached");
        let mut spot = locate(&chains, u);
        if spot.1 == 0 && chains[spot.0].len() > 1 {
            chains.iter_mut().for_each(|c| c.reverse());
            spot = locate(&chains, u);
        }
        let terminal = spot.1 + 1 == chains[spot.0].len() || make_terminal(g, cur, &mut chains, u)?;
        let (ci, _) = locate(&chains, u);
        let rest = &step.order[1..];
        match (step.is_cycle(), terminal) {
            (false, true) => chains[ci].push(rest[0]),
            (false, false) => chains.push(rest.to_vec()),
            (true, true) => {
                chains[ci].extend(rest[1..].iter().rev());
                chains.push(vec![rest[0]]);
            }
            (true, false) => chains.push(rest.to_vec()),
        }
        cur = cur.union(step.block);
        check_chains(g, cur, &chains)?;
    }
    let roots: VertexSet = chains.iter().map(|c| c[0]).collect();
    let parts = chains.iter().map(|c| c.iter().copied().collect()).collect();
    FamilySolution::build(g, cert.kind(), Rule::Standard, roots, Cover::new(CoverKind::Path, parts), vec![Claim::ZEqualsP])
}

fn locate(chains: &[Vec<usize>], u: usize) -> (usize, usize) {
    chains
        .iter()
        .enumerate()
        .find_map(|(i, c)| c.iter().position(|&x| x == u).map(|j| (i, j)))
        .expect("attachment vertex is already covered")
}

/// Replaces the chains by ones of the same number in which `u` is a
/// terminal, if a minimum path cover of the current graph has `u` as an
/// endpoint. Returns whether it did.
fn make_terminal(g: &Graph, cur: VertexSet, chains: &mut Vec<Vec<usize>>, u: usize) -> Result<bool, FamilyError> {
    let local = Local::new(g, cur);
    let lu = local.to_local[u];
    let res = path_cover_with_endpoint(&local.graph, lu, &SolverConfig::default())?;
    if res.value != chains.len() {
        return Ok(false);
    }
    let parts = res.cover().expect("path covers carry a cover").parts.clone();
    let part_of_u = parts.iter().position(|p| p.contains(lu)).unwrap();
    let ends_at_u = |roots: &[usize]| roots[part_of_u] != lu || parts[part_of_u].len() == 1;
    let starts_at_u = |roots: &[usize]| roots[part_of_u] == lu;
    let (roots, reverse) = match chain_roots_for_cover(&local.graph, &parts, ends_at_u) {
        Some(r) => (r, false),
        None => match chain_roots_for_cover(&local.graph, &parts, starts_at_u) {
            Some(r) => (r, true),
            None => {
                return Err(FamilyError::VerificationFailed(format!(
                    "minimum path cover with {u} at an end is not a set of forcing chains"
                )))
            }
        },
    };
    let run = guided_run(&local.graph, Rule::Standard, roots.into_iter().collect(), &parts).unwrap();
    *chains = run
        .chains()
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|v| local.to_global[v]).collect();
            if reverse {
                c.reverse();
            }
            c
        })
        .collect();
    Ok(true)
}

/// The chains must be exactly the forcing chains from their first vertices
/// in the subgraph induced by `cur`.
fn check_chains(g: &Graph, cur: VertexSet, chains: &[Vec<usize>]) -> Result<(), FamilyError> {
    let local = Local::new(g, cur);
    let roots: VertexSet = chains.iter().map(|c| local.to_local[c[0]]).collect();
    let parts: Vec<VertexSet> = chains.iter().map(|c| c.iter().map(|&v| local.to_local[v]).collect()).collect();
    let run = guided_run(&local.graph, Rule::Standard, roots, &parts)
        .ok_or_else(|| FamilyError::VerificationFailed(format!("chains {chains:?} do not force {cur:?}")))?;
    let mut got: Vec<Vec<usize>> =
        run.chains().into_iter().map(|c| c.into_iter().map(|v| local.to_global[v]).collect()).collect();
    let mut want = chains.to_vec();
    got.sort();
    want.sort();
    if got != want {
        return Err(FamilyError::VerificationFailed(format!("forcing chains {got:?} differ from {want:?}")));
    }
    Ok(())
}
