//! Seeded generators: the same spec always gives the same graph.

use zf_lab::generators::GenSpec;
use zf_lab::io::to_graph6;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let specs = [
        r#"{"family":"tree","n":8,"seed":1}"#,
        r#"{"family":"block_cycle","blocks":3,"max_cycle":5,"seed":2}"#,
        r#"{"family":"unicyclic","n":8,"seed":3}"#,
        r#"{"family":"outerplanar","n":8,"inner_keep":0.5,"seed":4}"#,
        r#"{"family":"k_cluster","n":9,"k":3,"s":2,"seed":5}"#,
        r#"{"family":"series_parallel_paths","lengths":[3,4,3],"seed":6}"#,
        r#"{"family":"chordal","n":8,"k":2,"seed":7}"#,
        r#"{"family":"erdos_renyi","n":8,"p":0.3,"seed":8}"#,
    ];
    for s in specs {
        let spec: GenSpec = serde_json::from_str(s)?;
        let g = spec.generate()?;
        assert_eq!(g, spec.generate()?);
        println!("{:<10} n = {:2}, m = {:2}  {s}", to_graph6(&g)?, g.n(), g.edge_count());
    }
    Ok(())
}
