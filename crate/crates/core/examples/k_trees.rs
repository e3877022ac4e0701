//! k-trees and k-clusters: closed forms for Z+ and T, the odd-k tree cover,
//! and Z+ = n - cc on chordal graphs.

use zf_lab::family::{chordal_psd_identity, k_cluster_parameters, k_tree_tree_cover_odd};
use zf_lab::generators::{random_chordal, random_k_cluster, random_k_tree};
use zf_lab::solvers::{psd_forcing_number, tree_cover_number};
use zf_lab::structure::{chordal_peo, k_tree_certificate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for k in 2..=4 {
        let mut sizes = vec![1, 2, 3, k + 1];
        sizes.dedup();
        for s in sizes {
            let g = random_k_cluster(k + 1 + s + 2, k, s, 11)?;
            let cert = k_tree_certificate(&g, k).expect("k-cluster by construction");
            let p = k_cluster_parameters(&g, &cert)?;
            println!(
                "k = {k}, |S| = {s}: formula Z+ = {}, T = {}; brute force Z+ = {}, T = {}",
                p.z_plus,
                p.t,
                psd_forcing_number(&g)?.value,
                tree_cover_number(&g)?.value
            );
        }
    }

    let g = random_k_tree(12, 3, false, 5)?;
    let cert = k_tree_certificate(&g, 3).expect("3-tree by construction");
    let cover = k_tree_tree_cover_odd(&g, &cert, 3)?;
    println!("3-tree on 12 vertices covered by {:?}", cover.parts);

    let g = random_chordal(10, 3, 8)?;
    let cert = chordal_peo(&g).expect("chordal by construction");
    println!("chordal: n - cc = {}, Z+ = {}", chordal_psd_identity(&g, &cert)?, psd_forcing_number(&g)?.value);
    Ok(())
}
