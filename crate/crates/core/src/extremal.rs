//! Disjoint unions of cliques: the graphs `G` with small `r(K_s, G)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnionOfCliques {
    /// Order of each clique.
    pub k: usize,
    /// Number of vertex-disjoint copies of `K_k`.
    pub count: usize,
    #[serde(skip)]
    pub graph: Graph,
}

/// Clique order `max(2, round(m^{1/s} (ln m)^{(s-2)/s}))`.
pub fn union_clique_order(m: usize, s: usize) -> Result<usize> {
    if m < 3 {
        return Err(Error::domain(format!(
            "edge budget m must be >= 3, got {m}"
        )));
    }
    if s < 3 {
        return Err(Error::domain(format!(
            "clique order s must be >= 3, got {s}"
        )));
    }
    let mf = m as f64;
    let sf = s as f64;
    let k = mf.powf(1.0 / sf) * mf.ln().powf((sf - 2.0) / sf);
    Ok((k.round() as usize).max(2))
}

/// `ceil(2m / (k(k-1)))` disjoint copies of `K_k`, so `e(G) >= m`.
pub fn union_of_cliques(m: usize, s: usize) -> Result<UnionOfCliques> {
    let k = union_clique_order(m, s)?;
    let per = k * (k - 1);
    let count = (2 * m).div_ceil(per);
    let block = Graph::complete(k);
    let graph = (0..count).fold(Graph::empty(0), |g, _| g.disjoint_union(&block));
    Ok(UnionOfCliques { k, count, graph })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m100_s3() {
        let u = union_of_cliques(100, 3).unwrap();
        assert_eq!((u.k, u.count, u.graph.edge_count()), (8, 4, 112));
        assert_eq!(u.graph.n(), 32);
    }

    #[test]
    fn m3_floors_at_two() {
        let u = union_of_cliques(3, 3).unwrap();
        assert_eq!((u.k, u.count, u.graph.edge_count()), (2, 3, 3));
        assert_eq!(u.graph.components().len(), 3);
    }

    #[test]
    fn rejects_small_inputs() {
        assert!(union_of_cliques(2, 3).is_err());
        assert!(union_of_cliques(10, 2).is_err());
    }

    #[test]
    fn components_are_cliques_of_order_k() {
        let u = union_of_cliques(500, 4).unwrap();
        for comp in u.graph.components() {
            assert_eq!(comp.len(), u.k);
            assert!(comp.iter().all(|&v| u.graph.degree(v) == u.k - 1));
        }
    }
}
