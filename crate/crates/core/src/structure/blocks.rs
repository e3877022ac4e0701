use serde::{Deserialize, Serialize};

use super::{FamilyCertificate, StructureError};
use crate::graph::{Graph, VertexSet};

/// Blocks (biconnected components, bridges and isolated vertices) and the
/// cut vertices between them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    /// Sorted by smallest member, then by bit pattern.
    pub blocks: Vec<VertexSet>,
    pub cut_vertices: VertexSet,
    /// Index pairs `(i, j)`, `i < j`, of blocks sharing a vertex.
    pub block_adjacency: Vec<(usize, usize)>,
}

struct Tarjan<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<(usize, usize)>,
    blocks: Vec<VertexSet>,
}

impl Tarjan<'_> {
    fn dfs(&mut self, u: usize, parent: usize) {
        self.disc[u] = self.time;
        self.low[u] = self.time;
        self.time += 1;
        for w in self.g.neighbors(u) {
            if self.disc[w] == usize::MAX {
                self.stack.push((u, w));
                self.dfs(w, u);
                self.low[u] = self.low[u].min(self.low[w]);
                if self.low[w] >= self.disc[u] {
                    let mut block = VertexSet::EMPTY;
                    while let Some((a, b)) = self.stack.pop() {
                        block.insert(a);
                        block.insert(b);
                        if (a, b) == (u, w) {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if w != parent && self.disc[w] < self.disc[u] {
                self.stack.push((u, w));
                self.low[u] = self.low[u].min(self.disc[w]);
            }
        }
    }
}

pub fn block_decomposition(g: &Graph) -> BlockDecomposition {
    let n = g.n();
    let mut t = Tarjan { g, disc: vec![usize::MAX; n], low: vec![0; n], time: 0, stack: Vec::new(), blocks: Vec::new() };
    for v in 0..n {
        if t.disc[v] == usize::MAX {
            if g.degree(v) == 0 {
                t.blocks.push(VertexSet::singleton(v));
                t.disc[v] = t.time;
                t.time += 1;
            } else {
                t.dfs(v, usize::MAX);
            }
        }
    }
    let mut blocks = t.blocks;
    blocks.sort_by_key(|b| (b.first(), *b));
    let mut cut_vertices = VertexSet::EMPTY;
    let mut block_adjacency = Vec::new();
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            let shared = blocks[i].intersection(blocks[j]);
            if !shared.is_empty() {
                cut_vertices = cut_vertices.union(shared);
                block_adjacency.push((i, j));
            }
        }
    }
    BlockDecomposition { blocks, cut_vertices, block_adjacency }
}

/// One block of a block-cycle graph, as removed during pendant elimination.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PendantBlock {
    pub block: VertexSet,
    /// The block's vertices in cyclic order (an edge lists its two ends),
    /// starting at the attachment vertex when there is one.
    pub order: Vec<usize>,
    /// The vertex shared with the rest of the graph; `None` for the last block.
    pub attach: Option<usize>,
}

impl PendantBlock {
    pub fn is_cycle(&self) -> bool {
        self.order.len() >= 3
    }
}

/// Pendant-block elimination order of a block-cycle graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCycleEvidence {
    pub steps: Vec<PendantBlock>,
}

/// Cyclic order of a cycle block starting at `start`, continuing to the
/// smaller neighbour.
fn cycle_order(g: &Graph, block: VertexSet, start: usize) -> Vec<usize> {
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = g.neighbors(cur).intersection(block).iter().find(|&w| w != prev && w != start);
        match next {
            Some(w) if order.len() < block.len() => {
                order.push(w);
                prev = cur;
                cur = w;
            }
            _ => break,
        }
    }
    order
}

fn block_shape(g: &Graph, b: VertexSet) -> Option<bool> {
    match b.len() {
        1 | 2 => Some(false),
        k if g.edges_within(b) == k && b.iter().all(|v| g.neighbors(v).intersection(b).len() == 2) => Some(true),
        _ => None,
    }
}

/// Certificate for a connected graph whose blocks are all edges or cycles.
pub fn classify_block_cycle(g: &Graph) -> Result<Option<FamilyCertificate>, StructureError> {
    Ok(block_cycle_evidence(g)?.map(FamilyCertificate::BlockCycle))
}

/// A connected graph with exactly one cycle.
pub fn classify_unicyclic(g: &Graph) -> Result<Option<FamilyCertificate>, StructureError> {
    if g.n() > 0 && g.is_connected() && g.edge_count() != g.n() {
        return Ok(None);
    }
    Ok(block_cycle_evidence(g)?.map(FamilyCertificate::Unicyclic))
}

fn block_cycle_evidence(g: &Graph) -> Result<Option<BlockCycleEvidence>, StructureError> {
    if g.n() == 0 {
        return Err(StructureError::Empty);
    }
    if !g.is_connected() {
        return Err(StructureError::Disconnected);
    }
    let dec = block_decomposition(g);
    if dec.blocks.iter().any(|&b| block_shape(g, b).is_none()) {
        return Ok(None);
    }
    let mut remaining: Vec<VertexSet> = dec.blocks;
    let mut steps = Vec::new();
    while remaining.len() > 1 {
        let i = pendant_blocks(&remaining)
            .into_iter()
            .min_by_key(|&(i, _)| (remaining[i].first(), remaining[i]))
            .expect("a block-cycle graph with two or more blocks has a pendant block");
        let (i, attach) = i;
        let b = remaining.remove(i);
        steps.push(PendantBlock { block: b, order: block_order(g, b, attach), attach: Some(attach) });
    }
    let last = remaining[0];
    let first = last.first().expect("blocks are non-empty");
    steps.push(PendantBlock { block: last, order: block_order(g, last, first), attach: None });
    Ok(Some(BlockCycleEvidence { steps }))
}

fn block_order(g: &Graph, b: VertexSet, start: usize) -> Vec<usize> {
    match b.len() {
        1 => vec![start],
        2 => vec![start, b.difference(VertexSet::singleton(start)).first().unwrap()],
        _ => cycle_order(g, b, start),
    }
}

/// Blocks sharing exactly one vertex with the union of the others, with
/// that vertex.
fn pendant_blocks(blocks: &[VertexSet]) -> Vec<(usize, usize)> {
    (0..blocks.len())
        .filter_map(|i| {
            let rest = blocks
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(VertexSet::EMPTY, |acc, (_, &b)| acc.union(b));
            let shared = blocks[i].intersection(rest);
            (shared.len() == 1).then(|| (i, shared.first().unwrap()))
        })
        .collect()
}

impl BlockCycleEvidence {
    pub(crate) fn verify(&self, g: &Graph) -> Result<(), String> {
        if g.n() == 0 || !g.is_connected() {
            return Err("graph must be connected and non-empty".into());
        }
        let mut remaining = g.vertices();
        for (i, step) in self.steps.iter().enumerate() {
            let (h, map) = g.induced_subgraph(remaining).map_err(|e| e.to_string())?;
            let blocks: Vec<VertexSet> = block_decomposition(&h)
                .blocks
                .into_iter()
                .map(|b| b.iter().map(|v| map[v]).collect())
                .collect();
            if !blocks.contains(&step.block) {
                return Err(format!("step {i}: {:?} is not a block of what remains", step.block));
            }
            if block_shape(g, step.block) != Some(step.is_cycle()) {
                return Err(format!("step {i}: block is neither an edge nor a cycle"));
            }
            if step.order.iter().copied().collect::<VertexSet>() != step.block || step.order.len() != step.block.len() {
                return Err(format!("step {i}: order does not list the block"));
            }
            let closed = step.order.len() >= 3;
            for (j, &v) in step.order.iter().enumerate() {
                let w = step.order[(j + 1) % step.order.len()];
                if (j + 1 < step.order.len() || closed) && !g.has_edge(v, w) {
                    return Err(format!("step {i}: order is not a cycle"));
                }
            }
            let pendants = pendant_blocks(&blocks);
            match step.attach {
                Some(a) => {
                    if blocks.len() < 2 {
                        return Err(format!("step {i}: attachment given for the last block"));
                    }
                    if pendants.len() < 2 {
                        return Err(format!("step {i}: fewer than two pendant blocks"));
                    }
                    if !pendants.iter().any(|&(j, v)| blocks[j] == step.block && v == a) {
                        return Err(format!("step {i}: block is not pendant at {a}"));
                    }
                    if step.order[0] != a {
                        return Err(format!("step {i}: order does not start at the attachment"));
                    }
                    remaining = remaining.difference(step.block).union(VertexSet::singleton(a));
                }
                None => {
                    if i + 1 != self.steps.len() || blocks.len() != 1 {
                        return Err(format!("step {i}: unattached block before the end"));
                    }
                    remaining = remaining.difference(step.block);
                }
            }
        }
        if !remaining.is_empty() {
            return Err(format!("{remaining:?} left after elimination"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edge_list(n, e).unwrap()
    }

    fn bowtie() -> Graph {
        g(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    }

    #[test]
    fn decompositions() {
        let d = block_decomposition(&bowtie());
        assert_eq!(d.blocks, vec![VertexSet(0b00111), VertexSet(0b11100)]);
        assert_eq!(d.cut_vertices, VertexSet(0b00100));
        assert_eq!(d.block_adjacency, vec![(0, 1)]);

        let p4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        let d = block_decomposition(&p4);
        assert_eq!(d.blocks.len(), 3);
        assert_eq!(d.cut_vertices, VertexSet(0b0110));

        let c5 = g(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let d = block_decomposition(&c5);
        assert_eq!((d.blocks.len(), d.cut_vertices), (1, VertexSet::EMPTY));

        let d = block_decomposition(&g(3, &[(0, 1)]));
        assert_eq!(d.blocks, vec![VertexSet(0b011), VertexSet(0b100)]);
    }

    #[test]
    fn block_cycle_recognition() {
        let tree = g(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]);
        let cert = classify_block_cycle(&tree).unwrap().unwrap();
        cert.verify(&tree).unwrap();

        let b = bowtie();
        let cert = classify_block_cycle(&b).unwrap().unwrap();
        cert.verify(&b).unwrap();
        let FamilyCertificate::BlockCycle(ev) = &cert else { panic!() };
        assert_eq!(ev.steps.iter().filter(|s| s.is_cycle()).count(), 2);
        assert_eq!(ev.steps[0].order, vec![2, 0, 1]);

        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(classify_block_cycle(&k4), Ok(None));
        assert_eq!(classify_block_cycle(&g(3, &[(0, 1)])), Err(StructureError::Disconnected));

        let k1 = Graph::empty(1).unwrap();
        classify_block_cycle(&k1).unwrap().unwrap().verify(&k1).unwrap();
    }

    #[test]
    fn unicyclic_recognition() {
        let tadpole = g(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]);
        let cert = classify_unicyclic(&tadpole).unwrap().unwrap();
        assert_eq!(cert.kind(), super::super::FamilyKind::Unicyclic);
        cert.verify(&tadpole).unwrap();
        assert_eq!(classify_unicyclic(&bowtie()), Ok(None));
    }

    #[test]
    fn tampered_evidence_is_rejected() {
        let b = bowtie();
        let Some(FamilyCertificate::BlockCycle(mut ev)) = classify_block_cycle(&b).unwrap() else { panic!() };
        ev.steps.swap(0, 1);
        assert!(ev.verify(&b).is_err());
    }
}
