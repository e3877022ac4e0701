//! Two paths with P = 2 whose zero forcing number grows with the join.

use zf_lab::family::p2_interval_witness;
use zf_lab::solvers::{path_cover_number, zero_forcing_number};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for k in 1..=5 {
        let g = p2_interval_witness(5, 5, k)?;
        println!(
            "k = {k}: P = {}, Z = {}",
            path_cover_number(&g)?.value,
            zero_forcing_number(&g)?.value
        );
    }
    Ok(())
}
