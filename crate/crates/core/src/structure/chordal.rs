use super::FamilyCertificate;
use crate::graph::{Graph, VertexSet};

/// A perfect elimination ordering, if `g` is chordal.
///
/// Maximum cardinality search visits vertices in the reverse of a perfect
/// elimination ordering whenever one exists; the result is then checked.
pub fn chordal_peo(g: &Graph) -> Option<FamilyCertificate> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = VertexSet::EMPTY;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = g
            .vertices()
            .difference(visited)
            .iter()
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .unwrap();
        visited.insert(v);
        order.push(v);
        for w in g.neighbors(v).difference(visited) {
            weight[w] += 1;
        }
    }
    order.reverse();
    is_perfect_elimination_order(g, &order).then_some(FamilyCertificate::ChordalPeo { order })
}

/// Does every vertex's set of later neighbours in `order` form a clique?
pub fn is_perfect_elimination_order(g: &Graph, order: &[usize]) -> bool {
    if order.len() != g.n() || order.iter().copied().collect::<VertexSet>() != g.vertices() {
        return false;
    }
    let mut later = g.vertices();
    order.iter().all(|&v| {
        later.remove(v);
        g.induces_clique(g.neighbors(v).intersection(later))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edge_list(n, e).unwrap()
    }

    #[test]
    fn recognition() {
        let tree = g(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]);
        assert!(chordal_peo(&tree).is_some());
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(chordal_peo(&c4).is_none());
        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let Some(FamilyCertificate::ChordalPeo { order }) = chordal_peo(&k4) else { panic!() };
        assert!(is_perfect_elimination_order(&k4, &order));
        // C_4 with a chord is chordal
        let diamond = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]);
        assert!(chordal_peo(&diamond).is_some());
        assert!(!is_perfect_elimination_order(&diamond, &[0, 1, 2, 3]));
    }

    #[test]
    fn agrees_with_induced_cycle_search() {
        // chordal iff no induced cycle of length >= 4, checked over all 6-vertex subsets of a few graphs
        let graphs = [
            g(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 2), (0, 3), (0, 4)]),
            g(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]),
            g(6, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (3, 5)]),
        ];
        for h in &graphs {
            let has_hole = (1u64..1 << h.n()).any(|s| {
                let s = VertexSet(s);
                s.len() >= 4 && h.is_connected_within(s) && s.iter().all(|v| h.neighbors(v).intersection(s).len() == 2)
            });
            assert_eq!(chordal_peo(h).is_some(), !has_hole);
        }
    }
}
