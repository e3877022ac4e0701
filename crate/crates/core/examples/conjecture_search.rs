//! Looks for vertex sums of Z = P graphs with Z != P, and checks whether
//! minimum path covers of Z = P graphs are always forcing chains.

use zf_lab::harness::{search_conjecture, PoolFamily, SearchConfig};

fn main() {
    let cfg = SearchConfig {
        max_n: 6,
        seed: 3,
        pairs: 20,
        families: vec![PoolFamily::BlockCycle, PoolFamily::Outerplanar, PoolFamily::Named],
        ..SearchConfig::default()
    };
    let rep = search_conjecture(&cfg);
    println!("{} pool graphs, {} sums, {} with Z != P", rep.pool.len(), rep.sums, rep.counterexamples.len());
    for c in &rep.counterexamples {
        println!("  {} ({}) + {} ({}) = {}: Z = {}, P = {}", c.g, c.vg, c.h, c.vh, c.sum, c.z, c.p);
    }
    let p = &rep.probe;
    println!("probe: {} covers over {} graphs, {} not forcing chains", p.covers, p.graphs, p.covers_not_chains);
}
