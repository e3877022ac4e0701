//! Outerplanar graphs: Z+ = T with an explicit positive forcing set whose
//! forcing trees are a minimum tree cover.

use zf_lab::family::{consecutive_or_pendant_trees, outerplanar_solution};
use zf_lab::generators::random_outerplanar_with;
use zf_lab::solvers::{psd_forcing_number, tree_cover_number};
use zf_lab::structure::outerplanar_embedding;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for seed in 0..4 {
        let g = random_outerplanar_with(12, 0.9, 0.7, seed)?;
        let emb = outerplanar_embedding(&g)?.expect("outerplanar by construction");
        println!("seed {seed}: outer cycle order {:?}", emb.outer_order);
        println!("  inner edges {:?}", emb.inner_edges());

        let cover = tree_cover_number(&g)?.cover().unwrap().clone();
        let class = consecutive_or_pendant_trees(&g, &emb, &cover)?;
        println!("  trees {:?}, pendant {:?}, consecutive {:?}", cover.parts, class.pendant, class.consecutive);

        let sol = outerplanar_solution(&g, &emb)?;
        println!(
            "  Z+ = {}, T = {}, forcing set {:?}, trees {:?}",
            psd_forcing_number(&g)?.value,
            sol.value(),
            sol.forcing_set,
            sol.cover.parts
        );
    }
    Ok(())
}
