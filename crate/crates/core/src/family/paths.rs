use super::{Claim, FamilyError, FamilySolution};
use crate::cover::{Cover, CoverKind};
use crate::forcing::Rule;
use crate::graph::{Graph, VertexSet};
use crate::structure::FamilyCertificate;

/// Forcing set made of one end of every layer path: the left ends if they
/// force along the layers, the right ends otherwise. For a double path the
/// value is Z = P = 2; for longer series it is only an upper bound on Z.
pub fn double_path_solution(g: &Graph, cert: &FamilyCertificate) -> Result<FamilySolution, FamilyError> {
    let claims = match cert {
        FamilyCertificate::DoublePath { .. } => vec![Claim::ZEqualsP],
        FamilyCertificate::SeriesOfParallelPaths { .. } => vec![],
        other => return Err(FamilyError::WrongCertificate { expected: "parallel-path", got: other.kind() }),
    };
    cert.verify(g)?;
    let paths = cert.paths().expect("parallel-path certificates carry paths");
    let cover = Cover::new(CoverKind::Path, paths.iter().map(|p| p.iter().copied().collect()).collect());
    let left: VertexSet = paths.iter().map(|p| p[0]).collect();
    let right: VertexSet = paths.iter().map(|p| *p.last().unwrap()).collect();
    FamilySolution::build(g, cert.kind(), Rule::Standard, left, cover.clone(), claims.clone())
        .or_else(|_| FamilySolution::build(g, cert.kind(), Rule::Standard, right, cover, claims))
}

/// Two paths `0..m` and `m..m+n` with each of the first `k` vertices of the
/// first path joined to every vertex of the second.
pub fn p2_interval_witness(m: usize, n: usize, k: usize) -> Result<Graph, FamilyError> {
    if m == 0 || n == 0 || k == 0 || k > m.min(n) {
        return Err(FamilyError::Precondition(format!("need 1 <= k <= min(m, n), got m={m} n={n} k={k}")));
    }
    let mut edges: Vec<(usize, usize)> = (1..m).map(|i| (i - 1, i)).collect();
    edges.extend((m + 1..m + n).map(|i| (i - 1, i)));
    for a in 0..k {
        edges.extend((m..m + n).map(|b| (a, b)));
    }
    Ok(Graph::from_edge_list(m + n, &edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{path_cover_number, zero_forcing_number};
    use crate::structure::double_path_certificate;

    fn grid(r: usize, c: usize) -> Graph {
        let mut e = vec![];
        for i in 0..r {
            for j in 0..c {
                if j + 1 < c {
                    e.push((i * c + j, i * c + j + 1));
                }
                if i + 1 < r {
                    e.push((i * c + j, (i + 1) * c + j));
                }
            }
        }
        Graph::from_edge_list(r * c, &e).unwrap()
    }

    #[test]
    fn ladders_and_grids() {
        for (r, c) in [(2, 2), (2, 5), (3, 3), (3, 4)] {
            let h = grid(r, c);
            let cert = double_path_certificate(&h).unwrap().unwrap();
            let sol = double_path_solution(&h, &cert).unwrap();
            assert_eq!(sol.value(), zero_forcing_number(&h).unwrap().value, "{r}x{c}");
            assert_eq!(sol.value(), cert.paths().unwrap().len());
        }
    }

    #[test]
    fn grid_has_fewer_paths_than_layers() {
        let h = grid(3, 3);
        assert_eq!(path_cover_number(&h).unwrap().value, 2);
        assert_eq!(zero_forcing_number(&h).unwrap().value, 3);
    }

    #[test]
    fn series_with_fewer_forcing_vertices_than_layers() {
        let h = crate::io::parse_graph6("KA`H_PUXs?c@").unwrap();
        let cert = double_path_certificate(&h).unwrap().unwrap();
        let sol = double_path_solution(&h, &cert).unwrap();
        assert_eq!(sol.value(), 4);
        assert!(sol.claimed_equalities.is_empty());
        assert_eq!(zero_forcing_number(&h).unwrap().value, 3);
        assert_eq!(path_cover_number(&h).unwrap().value, 2);
    }

    #[test]
    fn witness_shape() {
        let h = p2_interval_witness(4, 3, 2).unwrap();
        assert_eq!(h.edge_count(), 3 + 2 + 6);
        assert_eq!(path_cover_number(&h).unwrap().value, 2);
        assert!(p2_interval_witness(2, 3, 3).is_err());
        assert!(p2_interval_witness(2, 3, 0).is_err());
    }
}
