//! Colour-change runs under both rules, round by round.

use zf_lab::forcing::{closure, Rule};
use zf_lab::generators::grid;
use zf_lab::graph::VertexSet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = grid(3, 4)?;
    // left column of the 3x4 grid
    let start: VertexSet = [0, 4, 8].into_iter().collect();
    for rule in [Rule::Standard, Rule::Positive] {
        let run = closure(&g, start, rule)?;
        println!("{rule:?}: complete = {}, {} rounds", run.is_complete(), run.rounds());
        for f in &run.forces {
            println!("  round {}: {} -> {}", f.round, f.forcer, f.forced);
        }
        println!("  chains {:?}", run.chains());
    }

    // one corner is not enough under the standard rule
    let corner = closure(&g, VertexSet::singleton(0), Rule::Standard)?;
    println!("from corner: derived {:?}", corner.derived);
    Ok(())
}
