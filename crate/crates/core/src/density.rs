//! Densities `ρ(H) = (e_H - 1) / (v_H - 2)` and `ρ*(H) = max ρ(H')` over subgraphs.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Exact reduced fraction with positive denominator.
pub type Rational = Ratio<i64>;

/// Default largest `v_H` accepted by [`rho_star`].
pub const RHO_STAR_DEFAULT_CAP: usize = 20;

/// Hard ceiling on the configurable cap; the subset table has `2^v` entries.
pub const RHO_STAR_MAX_CAP: usize = 26;

pub fn density(h: &Graph) -> Result<Rational> {
    if h.n() < 3 {
        return Err(Error::domain(format!(
            "density needs at least 3 vertices, got {}",
            h.n()
        )));
    }
    Ok(Rational::new(h.edge_count() as i64 - 1, h.n() as i64 - 2))
}

pub fn rho_star(h: &Graph) -> Result<Rational> {
    rho_star_with_cap(h, RHO_STAR_DEFAULT_CAP)
}

/// Maximum of `density(H[S])` over vertex subsets `|S| >= 3`.
///
/// For a fixed vertex set the induced subgraph has the most edges, so
/// restricting to induced subgraphs loses nothing.
pub fn rho_star_with_cap(h: &Graph, cap: usize) -> Result<Rational> {
    let v = h.n();
    if v < 3 {
        return Err(Error::domain(format!(
            "rho* needs at least 3 vertices, got {v}"
        )));
    }
    let limit = cap.min(RHO_STAR_MAX_CAP);
    if v > limit {
        return Err(Error::Capacity {
            what: "vertex count for rho*",
            got: v,
            limit,
        });
    }

    let adj: Vec<u32> = (0..v)
        .map(|u| h.neighbors(u).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();

    // edges[mask] = e(H[mask]), filled from mask with its lowest vertex removed.
    let size = 1usize << v;
    let mut edges = vec![0u16; size];
    let mut best: Option<Rational> = None;
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        edges[mask] = edges[rest] + (adj[low] & rest as u32).count_ones() as u16;
        let k = mask.count_ones() as i64;
        if k >= 3 {
            let d = Rational::new(edges[mask] as i64 - 1, k - 2);
            if best.is_none_or(|b| d > b) {
                best = Some(d);
            }
        }
    }
    Ok(best.expect("v >= 3 guarantees a subset of size 3"))
}
