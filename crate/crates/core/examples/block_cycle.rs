//! Block-cycle graphs: a forcing set whose chains are a minimum path cover.

use zf_lab::generators::random_block_cycle;
use zf_lab::family::block_cycle_solution;
use zf_lab::solvers::{path_cover_number, zero_forcing_number};
use zf_lab::structure::classify_block_cycle;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for seed in 0..5 {
        let g = random_block_cycle(4, 5, seed)?;
        let cert = classify_block_cycle(&g)?.expect("generator output is block-cycle");
        let sol = block_cycle_solution(&g, &cert)?;
        let z = zero_forcing_number(&g)?.value;
        let p = path_cover_number(&g)?.value;
        println!("seed {seed}: n = {:2}, Z = {z}, P = {p}, forcing set {:?}", g.n(), sol.forcing_set);
        for chain in sol.run.chains() {
            println!("    chain {chain:?}");
        }
    }
    Ok(())
}
