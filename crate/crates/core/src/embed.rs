//! Greedy blue embeddings of `G` into colorings without a red `K_s`.
//!
//! Triangle case: take the vertex `w` of maximum red degree `t`; its red
//! neighborhood `X` is a blue clique (no red triangle). The `t` highest
//! degree vertices of `G` go into `X`, every other vertex `v` has degree at
//! most `2m / (t + 1)`, so at most `t * deg(v) < 2m` vertices are red to one
//! of its placed neighbors. With `3m` vertices and at most `m + 1` vertices
//! per connected `G`, a free blue-compatible vertex always remains.
//!
//! General `s`: a vertex with red degree at least
//! `d = c1 m^{(s-2)/2} / ln^{(s-4)/2} m` lets us descend into its red
//! neighborhood (no red `K_{s-1}` there). Otherwise a blue clique of order
//! `k = floor(sqrt(m ln m))` hosts the top-degree vertices and the rest are
//! placed greedily.

use serde::Serialize;
use thiserror::Error;

use crate::bits::VertexSet;
use crate::detect::{
    find_clique_within, max_degree_vertex_within, EmbeddingMap, Search, DEFAULT_NODE_BUDGET,
};
use crate::extremal::UnionOfCliques;
use crate::graph::{Color, Graph, TwoColoring};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EmbedError {
    #[error("coloring contains a red K_{s}: {clique:?}")]
    RedClique { s: usize, clique: Vec<usize> },
    #[error("could not rule out a red K_{s} within the node budget")]
    CliqueCheckBudget { s: usize },
    #[error("G has an isolated vertex {0}")]
    IsolatedVertex(usize),
    #[error("need at least {need} vertices, have {have}")]
    TooFewVertices { need: usize, have: usize },
    #[error("invalid argument: {0}")]
    Domain(String),
    #[error("no blue K_{k} found ({})", if *.exhausted { "none exists" } else { "node budget spent" })]
    NoBlueClique { k: usize, exhausted: bool },
    #[error("no free blue-compatible vertex for pattern vertex {vertex}")]
    GreedyExhausted { vertex: usize },
    /// A step the triangle-case argument guarantees did not hold.
    #[error("algorithm contract violated: {0}")]
    Contract(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EmbedConfig {
    /// Constant in the red-degree threshold `d`.
    pub c1: f64,
    /// Node budget for each clique search.
    pub node_budget: u64,
}

impl Default for EmbedConfig {
    fn default() -> Self {
        Self {
            c1: 1.0,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Branch {
    /// Finished by the triangle-case procedure.
    Triangle,
    /// Finished around a blue clique of order `k`.
    BlueClique { k: usize, clique: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneralEmbedding {
    pub map: EmbeddingMap,
    /// Vertices whose red neighborhoods were entered, outermost first.
    pub descents: Vec<usize>,
    pub branch: Branch,
}

fn check_pattern(g: &Graph) -> Result<(), EmbedError> {
    match (0..g.n()).find(|&v| g.degree(v) == 0) {
        Some(v) => Err(EmbedError::IsolatedVertex(v)),
        None => Ok(()),
    }
}

fn check_no_red_clique(col: &TwoColoring, s: usize, budget: u64) -> Result<(), EmbedError> {
    match find_clique_within(col, Color::Red, s, &VertexSet::full(col.n()), budget) {
        Search::Found(clique) => Err(EmbedError::RedClique { s, clique }),
        Search::Unknown => Err(EmbedError::CliqueCheckBudget { s }),
        Search::Absent => Ok(()),
    }
}

/// Blue copy of `g` in a coloring with no red triangle and `n >= 3 e(G)`.
pub fn embed_s3(col: &TwoColoring, g: &Graph) -> Result<EmbeddingMap, EmbedError> {
    check_pattern(g)?;
    let need = 3 * g.edge_count();
    if col.n() < need {
        return Err(EmbedError::TooFewVertices {
            need,
            have: col.n(),
        });
    }
    check_no_red_clique(col, 3, u64::MAX)?;
    embed_s3_in(col, g, &VertexSet::full(col.n()))
}

/// Triangle-case procedure restricted to `pool`, `|pool| >= 3 e(G)`.
/// Components are handled on disjoint pools of `3 m_i` vertices, taken in id order.
fn embed_s3_in(col: &TwoColoring, g: &Graph, pool: &VertexSet) -> Result<EmbeddingMap, EmbedError> {
    let mut assignment = vec![usize::MAX; g.n()];
    let mut spare = pool.iter();
    for comp in g.components() {
        let m_i = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        let sub = VertexSet::from_iter_with_capacity(col.n(), spare.by_ref().take(3 * m_i));
        if sub.len() < 3 * m_i {
            return Err(EmbedError::TooFewVertices {
                need: 3 * g.edge_count(),
                have: pool.len(),
            });
        }
        embed_component(col, g, &comp, &sub, &mut assignment)?;
    }
    Ok(EmbeddingMap { assignment })
}

fn embed_component(
    col: &TwoColoring,
    g: &Graph,
    comp: &[usize],
    pool: &VertexSet,
    assignment: &mut [usize],
) -> Result<(), EmbedError> {
    let (w, t) = max_degree_vertex_within(col, Color::Red, pool)
        .ok_or_else(|| EmbedError::Contract("empty vertex pool".into()))?;
    let x: Vec<usize> = col
        .neighbors(w, Color::Red)
        .intersection(pool)
        .iter()
        .collect();
    debug_assert_eq!(x.len(), t);
    for (i, &a) in x.iter().enumerate() {
        for &b in &x[i + 1..] {
            if !col.is(a, b, Color::Blue) {
                return Err(EmbedError::Contract(format!(
                    "pair ({a}, {b}) inside the red neighborhood of {w} is red"
                )));
            }
        }
    }

    let mut by_degree = comp.to_vec();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let split = t.min(comp.len());
    let (top, rest) = by_degree.split_at(split);

    let mut used = VertexSet::new(col.n());
    for (&v, &target) in top.iter().zip(&x) {
        assignment[v] = target;
        used.insert(target);
    }
    let mut rest = rest.to_vec();
    rest.sort_unstable();
    for v in rest {
        let placed: Vec<usize> = g
            .neighbors(v)
            .iter()
            .map(|&u| assignment[u])
            .filter(|&a| a != usize::MAX)
            .collect();
        let mut not_red = pool.clone();
        for &y in &placed {
            not_red.difference_with(col.neighbors(y, Color::Red));
        }
        // Each placed neighbor has at most t red neighbors in the pool.
        let floor = pool.len().saturating_sub(t * placed.len());
        if not_red.len() < floor {
            return Err(EmbedError::Contract(format!(
                "{} pool vertices avoid red edges to {placed:?}, expected at least {floor}",
                not_red.len()
            )));
        }
        let target = place(col, &not_red, &placed, &used).ok_or_else(|| {
            EmbedError::Contract(format!(
                "no free vertex blue to {placed:?} for pattern vertex {v}"
            ))
        })?;
        assignment[v] = target;
        used.insert(target);
    }
    Ok(())
}

/// Smallest vertex of `cands`, unused, blue to every vertex of `placed`.
fn place(
    col: &TwoColoring,
    cands: &VertexSet,
    placed: &[usize],
    used: &VertexSet,
) -> Option<usize> {
    let mut c = cands.clone();
    c.difference_with(used);
    for &y in placed {
        c.intersect_with(col.neighbors(y, Color::Blue));
    }
    c.first()
}

/// Red-degree threshold `c1 m^{(s-2)/2} / L^{(s-4)/2}` with `L = max(ln m, 1)`.
pub fn descent_threshold(m: usize, s: usize, c1: f64) -> f64 {
    let mf = m as f64;
    let sf = s as f64;
    let log = mf.ln().max(1.0);
    c1 * mf.powf((sf - 2.0) / 2.0) / log.powf((sf - 4.0) / 2.0)
}

/// `floor(sqrt(m ln m))`.
pub fn blue_clique_order(m: usize) -> usize {
    let mf = m as f64;
    if m < 2 {
        return 0;
    }
    (mf * mf.ln()).sqrt().floor() as usize
}

/// Blue copy of `g` in a coloring with no red `K_s`, by red-neighborhood
/// descent and blue-clique seeding.
pub fn embed_general(
    col: &TwoColoring,
    g: &Graph,
    s: usize,
    cfg: &EmbedConfig,
) -> Result<GeneralEmbedding, EmbedError> {
    if s < 3 {
        return Err(EmbedError::Domain(format!("s must be >= 3, got {s}")));
    }
    check_pattern(g)?;
    check_no_red_clique(col, s, cfg.node_budget)?;

    let m = g.edge_count();
    let mut pool = VertexSet::full(col.n());
    let mut descents = Vec::new();
    let mut level = s;
    while level > 3 {
        let d = descent_threshold(m, level, cfg.c1);
        match max_degree_vertex_within(col, Color::Red, &pool) {
            Some((w, deg)) if deg as f64 >= d => {
                descents.push(w);
                pool.intersect_with(col.neighbors(w, Color::Red));
                level -= 1;
            }
            _ => {
                let (map, clique) = embed_around_blue_clique(col, g, &pool, cfg)?;
                let k = clique.len();
                return Ok(GeneralEmbedding {
                    map,
                    descents,
                    branch: Branch::BlueClique { k, clique },
                });
            }
        }
    }
    let need = 3 * m;
    if pool.len() < need {
        return Err(EmbedError::TooFewVertices {
            need,
            have: pool.len(),
        });
    }
    let map = embed_s3_in(col, g, &pool)?;
    Ok(GeneralEmbedding {
        map,
        descents,
        branch: Branch::Triangle,
    })
}

fn embed_around_blue_clique(
    col: &TwoColoring,
    g: &Graph,
    pool: &VertexSet,
    cfg: &EmbedConfig,
) -> Result<(EmbeddingMap, Vec<usize>), EmbedError> {
    let k = blue_clique_order(g.edge_count()).min(g.n());
    let x = match find_clique_within(col, Color::Blue, k, pool, cfg.node_budget) {
        Search::Found(x) => x,
        Search::Absent => return Err(EmbedError::NoBlueClique { k, exhausted: true }),
        Search::Unknown => {
            return Err(EmbedError::NoBlueClique {
                k,
                exhausted: false,
            })
        }
    };

    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let (top, rest) = order.split_at(k);

    let mut assignment = vec![usize::MAX; g.n()];
    let mut used = VertexSet::new(col.n());
    for (&v, &target) in top.iter().zip(&x) {
        assignment[v] = target;
        used.insert(target);
    }
    let mut rest = rest.to_vec();
    rest.sort_unstable();
    for v in rest {
        let placed: Vec<usize> = g
            .neighbors(v)
            .iter()
            .map(|&u| assignment[u])
            .filter(|&a| a != usize::MAX)
            .collect();
        let target =
            place(col, pool, &placed, &used).ok_or(EmbedError::GreedyExhausted { vertex: v })?;
        assignment[v] = target;
        used.insert(target);
    }
    Ok((EmbeddingMap { assignment }, x))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueExtraction {
    /// Pairwise disjoint blue cliques, in extraction order.
    pub cliques: Vec<Vec<usize>>,
    /// False if a search failed before `count` cliques were found.
    pub complete: bool,
    /// Set when the last failed search ran out of budget rather than finishing.
    pub budget_exhausted: bool,
}

/// Repeatedly takes the lexicographically least blue `k`-clique among the
/// remaining vertices and deletes it, up to `count` times.
pub fn iterated_blue_cliques(
    col: &TwoColoring,
    s: usize,
    k: usize,
    count: usize,
    node_budget: u64,
) -> Result<CliqueExtraction, EmbedError> {
    check_no_red_clique(col, s, node_budget)?;
    let mut remaining = VertexSet::full(col.n());
    let mut cliques = Vec::with_capacity(count);
    while cliques.len() < count {
        match find_clique_within(col, Color::Blue, k, &remaining, node_budget) {
            Search::Found(c) => {
                for &v in &c {
                    remaining.remove(v);
                }
                cliques.push(c);
            }
            other => {
                return Ok(CliqueExtraction {
                    cliques,
                    complete: false,
                    budget_exhausted: matches!(other, Search::Unknown),
                })
            }
        }
    }
    Ok(CliqueExtraction {
        cliques,
        complete: true,
        budget_exhausted: false,
    })
}

/// Maps the `i`-th clique component of `union` onto the `i`-th extracted clique.
pub fn union_embedding(union: &UnionOfCliques, cliques: &[Vec<usize>]) -> Option<EmbeddingMap> {
    if cliques.len() < union.count || cliques.iter().any(|c| c.len() != union.k) {
        return None;
    }
    let assignment = cliques[..union.count].iter().flatten().copied().collect();
    Some(EmbeddingMap { assignment })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::find_copy;

    #[test]
    fn all_blue_any_graph() {
        let g = Graph::cycle(6);
        let col = TwoColoring::all_blue(18);
        let map = embed_s3(&col, &g).unwrap();
        map.revalidate(&g, &col, Color::Blue).unwrap();
    }

    #[test]
    fn red_star_and_path() {
        let col = TwoColoring::from_red_graph(&Graph::new(12, (1..=5).map(|v| (0, v))).unwrap());
        let g = Graph::path(5);
        let map = embed_s3(&col, &g).unwrap();
        map.revalidate(&g, &col, Color::Blue).unwrap();
        assert!(find_copy(&col, Color::Blue, &g).is_some());
    }

    #[test]
    fn disconnected_pattern() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let col = TwoColoring::all_blue(6);
        let map = embed_s3(&col, &g).unwrap();
        map.revalidate(&g, &col, Color::Blue).unwrap();
        let mut images = map.assignment.clone();
        images.sort_unstable();
        images.dedup();
        assert_eq!(images.len(), 4);
    }

    #[test]
    fn s3_preconditions() {
        let g = Graph::path(3);
        assert!(matches!(
            embed_s3(&TwoColoring::all_blue(5), &g),
            Err(EmbedError::TooFewVertices { need: 6, have: 5 })
        ));
        assert!(matches!(
            embed_s3(&TwoColoring::all_red(6), &g),
            Err(EmbedError::RedClique { s: 3, .. })
        ));
        let iso = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(
            embed_s3(&TwoColoring::all_blue(9), &iso),
            Err(EmbedError::IsolatedVertex(2))
        );
    }

    #[test]
    fn general_all_blue_takes_clique_branch() {
        let g = Graph::complete(4);
        let col = TwoColoring::all_blue(6);
        let out = embed_general(&col, &g, 4, &EmbedConfig::default()).unwrap();
        out.map.revalidate(&g, &col, Color::Blue).unwrap();
        assert!(out.descents.is_empty());
        // k = floor(sqrt(6 ln 6)) = 3
        assert!(matches!(out.branch, Branch::BlueClique { k: 3, .. }));
    }

    #[test]
    fn general_descends_once() {
        // Vertex 0 is red to 1..=9; inside, the red graph is K_{4,5}.
        let mut red: Vec<(usize, usize)> = (1..=9).map(|v| (0, v)).collect();
        for a in 1..=4 {
            for b in 5..=9 {
                red.push((a, b));
            }
        }
        let col = TwoColoring::from_red_edges(10, red).unwrap();
        let g = Graph::path(4);
        let out = embed_general(&col, &g, 4, &EmbedConfig::default()).unwrap();
        assert_eq!(out.descents, vec![0]);
        assert_eq!(out.branch, Branch::Triangle);
        out.map.revalidate(&g, &col, Color::Blue).unwrap();
        assert!(out.map.assignment.iter().all(|&x| (1..=9).contains(&x)));
    }

    #[test]
    fn general_rejects_red_clique() {
        let col = TwoColoring::all_red(5);
        assert!(matches!(
            embed_general(&col, &Graph::path(3), 4, &EmbedConfig::default()),
            Err(EmbedError::RedClique { s: 4, .. })
        ));
    }

    #[test]
    fn iterated_examples() {
        let out = iterated_blue_cliques(&TwoColoring::all_blue(9), 3, 3, 3, u64::MAX).unwrap();
        assert!(out.complete);
        assert_eq!(
            out.cliques,
            vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]
        );

        let matching = TwoColoring::from_red_edges(8, [(0, 1), (2, 3), (4, 5), (6, 7)]).unwrap();
        let out = iterated_blue_cliques(&matching, 3, 2, 4, u64::MAX).unwrap();
        assert!(out.complete);
        assert_eq!(out.cliques.len(), 4);
        for c in &out.cliques {
            assert!(matching.is(c[0], c[1], Color::Blue));
        }

        let out = iterated_blue_cliques(&matching, 3, 2, 0, u64::MAX).unwrap();
        assert!(out.cliques.is_empty() && out.complete);
    }

    #[test]
    fn iterated_reports_partial_progress() {
        let out = iterated_blue_cliques(&TwoColoring::all_blue(7), 3, 3, 3, u64::MAX).unwrap();
        assert!(!out.complete);
        assert!(!out.budget_exhausted);
        assert_eq!(out.cliques.len(), 2);
    }
}
