//! graph6 and edge-list round trips, and DOT output with a certificate.

use zf_lab::generators::random_outerplanar;
use zf_lab::io::{parse_edge_list, parse_graph6, to_dot, to_edge_list, to_graph6, DotAnnotations};
use zf_lab::solvers::zero_forcing_number;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = parse_graph6("Bw")?;
    println!("Bw: n = {}, edges {:?}", g.n(), g.edges());

    let h = random_outerplanar(9, 0.5, 4)?;
    let g6 = to_graph6(&h)?;
    assert_eq!(parse_graph6(&g6)?, h);
    let edges = to_edge_list(&h);
    assert_eq!(parse_edge_list(&edges)?, h);
    println!("{g6}\n{edges}");

    let z = zero_forcing_number(&h)?;
    print!("{}", to_dot(&h, DotAnnotations { black: z.set(), cover: None }));
    Ok(())
}
