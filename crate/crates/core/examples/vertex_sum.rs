//! Gluing two graphs at a vertex: Z+ and T both add up minus one.

use zf_lab::family::{compose_vertex_sum, outerplanar_solution};
use zf_lab::generators::{cycle, random_tree};
use zf_lab::graph::Graph;
use zf_lab::solvers::{psd_forcing_number, tree_cover_number};
use zf_lab::structure::outerplanar_embedding;

fn solve(g: &Graph) -> Result<zf_lab::family::FamilySolution, Box<dyn std::error::Error>> {
    let emb = outerplanar_embedding(g)?.ok_or("not outerplanar")?;
    Ok(outerplanar_solution(g, &emb)?)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = cycle(5)?;
    let h = random_tree(6, 2)?;
    let (sg, sh) = (solve(&g)?, solve(&h)?);
    println!("Z+(C5) = {}, Z+(tree) = {}", sg.value(), sh.value());
    for vh in 0..h.n() {
        let sol = compose_vertex_sum(&sg, &sh, 0, vh)?;
        let sum = &sol.run.graph;
        println!(
            "0~{vh}: composed {}, Z+ = {}, T = {}, trees {:?}",
            sol.value(),
            psd_forcing_number(sum)?.value,
            tree_cover_number(sum)?.value,
            sol.cover.parts
        );
    }
    Ok(())
}
