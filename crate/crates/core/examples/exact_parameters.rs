//! Z, Z+, P, T and cc with their certificates for a few small graphs.

use zf_lab::generators::{canonical, random_erdos_renyi};
use zf_lab::solvers::{solve, Parameter, SolverConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let graphs = [
        ("K_3,3", canonical("complete_bipartite", &[3, 3])?),
        ("C_7", canonical("cycle", &[7])?),
        ("3x3 grid", canonical("grid", &[3, 3])?),
        ("G(9, 0.4)", random_erdos_renyi(9, 0.4, 7)?),
    ];
    let cfg = SolverConfig::default();
    for (name, g) in &graphs {
        println!("{name} (n = {}, m = {})", g.n(), g.edge_count());
        for p in Parameter::ALL {
            let r = solve(g, p, &cfg)?;
            match (r.set(), r.cover()) {
                (Some(s), _) => println!("  {:>2} = {}  {s:?}", p.symbol(), r.value),
                (_, Some(c)) => println!("  {:>2} = {}  {:?}", p.symbol(), r.value, c.parts),
                _ => println!("  {:>2} = {}", p.symbol(), r.value),
            }
        }
    }
    Ok(())
}
