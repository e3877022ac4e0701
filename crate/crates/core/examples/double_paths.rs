//! Double paths and series of parallel paths. Endpoints of the layers always
//! force; for more than two layers this is only an upper bound on Z.

use zf_lab::family::double_path_solution;
use zf_lab::generators::{grid, random_series_parallel_paths};
use zf_lab::solvers::{path_cover_number, zero_forcing_number};
use zf_lab::structure::double_path_certificate;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("ladder 2x6", grid(2, 6)?),
        ("grid 3x3", grid(3, 3)?),
        ("grid 4x4", grid(4, 4)?),
        ("series [5, 4]", random_series_parallel_paths(&[5, 4], 3)?),
        ("series [3, 4, 4, 1]", random_series_parallel_paths(&[3, 4, 4, 1], 17133107264002473777)?),
    ];
    for (name, g) in &cases {
        let cert = double_path_certificate(g)?.expect("layered by construction");
        let sol = double_path_solution(g, &cert)?;
        println!(
            "{name}: layers {}, construction {}, Z = {}, P = {}, claims {:?}",
            cert.paths().unwrap().len(),
            sol.value(),
            zero_forcing_number(g)?.value,
            path_cover_number(g)?.value,
            sol.claimed_equalities
        );
    }
    Ok(())
}
