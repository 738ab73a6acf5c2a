//! Monochromatic structure detection: cliques, copies of a pattern graph,
//! edge-disjoint clique packings and degree extrema.
//!
//! Every search scans candidates in increasing vertex order, so results are
//! reproducible without seeds.

use serde::Serialize;

use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{Color, Graph, TwoColoring};

/// Default cap on visited search nodes for budgeted searches.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Largest `n` accepted by the exact packing search.
pub const EXACT_PACKING_MAX_N: usize = 12;

/// Outcome of a budgeted search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// The search space was exhausted without a hit.
    Absent,
    /// The node budget ran out first.
    Unknown,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, Search::Absent)
    }
}

/// Decrementing node counter shared by a single search.
#[derive(Debug)]
pub(crate) struct Budget {
    left: u64,
}

impl Budget {
    pub(crate) fn new(nodes: u64) -> Self {
        Self { left: nodes }
    }

    /// Charges one node; false once the budget is spent.
    #[inline]
    pub(crate) fn tick(&mut self) -> bool {
        if self.left == 0 {
            return false;
        }
        self.left -= 1;
        true
    }
}

/// Lexicographically least monochromatic `s`-set, unbounded search.
pub fn find_clique(col: &TwoColoring, color: Color, s: usize) -> Option<Vec<usize>> {
    find_clique_within(col, color, s, &VertexSet::full(col.n()), u64::MAX).found()
}

/// Lexicographically least `s`-set inside `within` spanning only `color` edges.
pub fn find_clique_within(
    col: &TwoColoring,
    color: Color,
    s: usize,
    within: &VertexSet,
    budget: u64,
) -> Search<Vec<usize>> {
    if s == 0 {
        return Search::Found(Vec::new());
    }
    let mut budget = Budget::new(budget);
    let mut partial = Vec::with_capacity(s);
    match clique_dfs(col, color, s, within.clone(), &mut partial, &mut budget) {
        Some(true) => Search::Found(partial),
        Some(false) => Search::Absent,
        None => Search::Unknown,
    }
}

/// `Some(true)` on success (partial holds the clique), `None` when out of budget.
fn clique_dfs(
    col: &TwoColoring,
    color: Color,
    s: usize,
    cands: VertexSet,
    partial: &mut Vec<usize>,
    budget: &mut Budget,
) -> Option<bool> {
    if partial.len() + cands.len() < s {
        return Some(false);
    }
    for v in cands.iter() {
        if !budget.tick() {
            return None;
        }
        partial.push(v);
        if partial.len() == s {
            return Some(true);
        }
        let mut next = cands.above(v);
        next.intersect_with(col.neighbors(v, color));
        match clique_dfs(col, color, s, next, partial, budget) {
            Some(false) => {}
            other => return other,
        }
        partial.pop();
    }
    Some(false)
}

/// Injective vertex map from a pattern graph into a colored `K_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingMap {
    /// `assignment[v]` is the image of pattern vertex `v`.
    pub assignment: Vec<usize>,
}

impl EmbeddingMap {
    /// Checks injectivity, range, and that every pattern edge lands on `color`.
    pub fn revalidate(&self, g: &Graph, col: &TwoColoring, color: Color) -> Result<(), String> {
        if self.assignment.len() != g.n() {
            return Err(format!(
                "map covers {} vertices, pattern has {}",
                self.assignment.len(),
                g.n()
            ));
        }
        let mut seen = VertexSet::new(col.n());
        for (v, &x) in self.assignment.iter().enumerate() {
            if x >= col.n() {
                return Err(format!("vertex {v} mapped to {x}, outside K_{}", col.n()));
            }
            if seen.contains(x) {
                return Err(format!("target {x} used twice"));
            }
            seen.insert(x);
        }
        for &(u, v) in g.edges() {
            let (a, b) = (self.assignment[u], self.assignment[v]);
            if !col.is(a, b, color) {
                return Err(format!("edge ({u}, {v}) -> ({a}, {b}) is not {color}"));
            }
        }
        Ok(())
    }
}

/// Unbounded-budget copy search over all of `K_n`.
pub fn find_copy(col: &TwoColoring, color: Color, g: &Graph) -> Option<EmbeddingMap> {
    match find_copy_within(col, color, g, &VertexSet::full(col.n()), u64::MAX) {
        Search::Found(m) => Some(m),
        Search::Absent => None,
        Search::Unknown => unreachable!("unbounded search cannot run out of budget"),
    }
}

/// Copy (not necessarily induced) of `g` whose edges all have `color` and
/// whose image lies in `within`.
///
/// Pattern vertices are placed most-constrained first: start from the
/// highest degree, then always the vertex with the most already placed
/// neighbors (ties by degree, then id). A target is kept only if its color
/// degree inside the pool covers the pattern degree, and its unused color
/// neighbors cover the pattern neighbors still to be placed.
pub fn find_copy_within(
    col: &TwoColoring,
    color: Color,
    g: &Graph,
    within: &VertexSet,
    budget: u64,
) -> Search<EmbeddingMap> {
    if g.n() > within.len() {
        return Search::Absent;
    }
    if g.n() == 0 {
        return Search::Found(EmbeddingMap {
            assignment: Vec::new(),
        });
    }
    let plan = SearchPlan::new(g);
    let pool_degree: Vec<usize> = (0..col.n())
        .map(|x| {
            if within.contains(x) {
                col.neighbors(x, color).intersection_len(within)
            } else {
                0
            }
        })
        .collect();
    let mut state = CopySearch {
        col,
        color,
        g,
        plan: &plan,
        pool_degree,
        image: vec![usize::MAX; g.n()],
        free: within.clone(),
        budget: Budget::new(budget),
    };
    match state.dfs(0) {
        Some(true) => Search::Found(EmbeddingMap {
            assignment: state.image,
        }),
        Some(false) => Search::Absent,
        None => Search::Unknown,
    }
}

struct SearchPlan {
    order: Vec<usize>,
    /// For position i: pattern vertices at earlier positions adjacent to `order[i]`.
    back: Vec<Vec<usize>>,
    /// For position i: neighbors of `order[i]` placed later.
    forward_count: Vec<usize>,
}

impl SearchPlan {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut placed = vec![false; n];
        let mut links = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .max_by(|&a, &b| {
                    (links[a], g.degree(a))
                        .cmp(&(links[b], g.degree(b)))
                        .then(b.cmp(&a))
                })
                .expect("unplaced vertex remains");
            placed[next] = true;
            order.push(next);
            for &w in g.neighbors(next) {
                links[w] += 1;
            }
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                g.neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| pos[w] < i)
                    .collect()
            })
            .collect();
        let forward_count = order
            .iter()
            .enumerate()
            .map(|(i, &v)| g.neighbors(v).iter().filter(|&&w| pos[w] > i).count())
            .collect();
        Self {
            order,
            back,
            forward_count,
        }
    }
}

struct CopySearch<'a> {
    col: &'a TwoColoring,
    color: Color,
    g: &'a Graph,
    plan: &'a SearchPlan,
    pool_degree: Vec<usize>,
    image: Vec<usize>,
    free: VertexSet,
    budget: Budget,
}

impl CopySearch<'_> {
    fn dfs(&mut self, depth: usize) -> Option<bool> {
        if depth == self.plan.order.len() {
            return Some(true);
        }
        let u = self.plan.order[depth];
        let mut cands = self.free.clone();
        for &w in &self.plan.back[depth] {
            cands.intersect_with(self.col.neighbors(self.image[w], self.color));
        }
        let need_degree = self.g.degree(u);
        let need_forward = self.plan.forward_count[depth];
        for x in cands.iter() {
            if !self.budget.tick() {
                return None;
            }
            if self.pool_degree[x] < need_degree {
                continue;
            }
            if need_forward > 0
                && self
                    .col
                    .neighbors(x, self.color)
                    .intersection_len(&self.free)
                    < need_forward
            {
                continue;
            }
            self.image[u] = x;
            self.free.remove(x);
            match self.dfs(depth + 1) {
                Some(false) => {}
                other => return other,
            }
            self.free.insert(x);
            self.image[u] = usize::MAX;
        }
        Some(false)
    }
}

/// Family of pairwise edge-disjoint red `s`-cliques.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliquePacking {
    pub s: usize,
    /// Sorted vertex sets, in the order they were selected.
    pub members: Vec<Vec<usize>>,
}

impl CliquePacking {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Checks that every member is a red clique of order `s` and that no pair
    /// lies in two members.
    pub fn revalidate(&self, col: &TwoColoring) -> Result<(), String> {
        let mut used = vec![VertexSet::new(col.n()); col.n()];
        for m in &self.members {
            if m.len() != self.s {
                return Err(format!("member {m:?} does not have order {}", self.s));
            }
            for (i, &a) in m.iter().enumerate() {
                for &b in &m[i + 1..] {
                    if !col.is(a, b, Color::Red) {
                        return Err(format!("pair ({a}, {b}) of {m:?} is not red"));
                    }
                    if used[a].contains(b) {
                        return Err(format!("pair ({a}, {b}) covered twice"));
                    }
                    used[a].insert(b);
                    used[b].insert(a);
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PackingMode {
    /// Maximal packing from a lexicographic scan.
    Greedy,
    /// Maximum-cardinality packing by branch and bound (`n <= 12`).
    Exact,
}

pub fn max_edge_disjoint_packing(
    col: &TwoColoring,
    s: usize,
    mode: PackingMode,
) -> Result<CliquePacking> {
    if s < 2 {
        return Err(Error::domain(format!(
            "packing order must be >= 2, got {s}"
        )));
    }
    match mode {
        PackingMode::Greedy => Ok(greedy_packing(col, s)),
        PackingMode::Exact => exact_packing(col, s),
    }
}

/// Scans red `s`-sets in lexicographic order, keeping each one whose pairs
/// are all still unused.
pub fn greedy_packing(col: &TwoColoring, s: usize) -> CliquePacking {
    let n = col.n();
    let mut residual: Vec<VertexSet> = (0..n)
        .map(|v| col.neighbors(v, Color::Red).clone())
        .collect();
    let mut members = Vec::new();
    let mut partial = Vec::with_capacity(s);
    greedy_dfs(
        s,
        VertexSet::full(n),
        &mut residual,
        &mut partial,
        &mut members,
    );
    CliquePacking { s, members }
}

fn greedy_dfs(
    s: usize,
    cands: VertexSet,
    residual: &mut [VertexSet],
    partial: &mut Vec<usize>,
    members: &mut Vec<Vec<usize>>,
) {
    if partial.len() + cands.len() < s {
        return;
    }
    for v in cands.iter() {
        // `cands` predates earlier acceptances, so recheck against the residual graph.
        if !partial.iter().all(|&p| residual[p].contains(v)) {
            continue;
        }
        partial.push(v);
        if partial.len() == s {
            for (i, &a) in partial.iter().enumerate() {
                for &b in &partial[i + 1..] {
                    residual[a].remove(b);
                    residual[b].remove(a);
                }
            }
            members.push(partial.clone());
        } else {
            let mut next = cands.above(v);
            next.intersect_with(&residual[v]);
            greedy_dfs(s, next, residual, partial, members);
        }
        partial.pop();
        if partial.len() >= 2 && !pairwise_residual(partial, residual) {
            return;
        }
    }
}

fn pairwise_residual(set: &[usize], residual: &[VertexSet]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &a)| set[i + 1..].iter().all(|&b| residual[a].contains(b)))
}

/// All red `s`-cliques in lexicographic order.
pub fn red_cliques(col: &TwoColoring, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut partial = Vec::with_capacity(s);
    enumerate_cliques(col, s, VertexSet::full(col.n()), &mut partial, &mut out);
    out
}

fn enumerate_cliques(
    col: &TwoColoring,
    s: usize,
    cands: VertexSet,
    partial: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if partial.len() == s {
        out.push(partial.clone());
        return;
    }
    if partial.len() + cands.len() < s {
        return;
    }
    for v in cands.iter() {
        partial.push(v);
        let mut next = cands.above(v);
        next.intersect_with(col.neighbors(v, Color::Red));
        enumerate_cliques(col, s, next, partial, out);
        partial.pop();
    }
}

fn exact_packing(col: &TwoColoring, s: usize) -> Result<CliquePacking> {
    let n = col.n();
    if n > EXACT_PACKING_MAX_N {
        return Err(Error::Capacity {
            what: "coloring order for exact packing",
            got: n,
            limit: EXACT_PACKING_MAX_N,
        });
    }
    // Dense pair index: C(12, 2) = 66 pairs fit in a u128.
    let index = |a: usize, b: usize| a * n - a * (a + 1) / 2 + (b - a - 1);
    let ends: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let cliques = red_cliques(col, s);
    let masks: Vec<u128> = cliques
        .iter()
        .map(|c| {
            let mut m = 0u128;
            for (i, &a) in c.iter().enumerate() {
                for &b in &c[i + 1..] {
                    m |= 1u128 << index(a, b);
                }
            }
            m
        })
        .collect();

    let mut search = PackingSearch {
        masks: &masks,
        ends: &ends,
        s,
        n,
        chosen: Vec::new(),
        best: Vec::new(),
    };
    search.run(0, 0);
    let mut members: Vec<Vec<usize>> = search.best.iter().map(|&i| cliques[i].clone()).collect();
    members.sort();
    Ok(CliquePacking { s, members })
}

struct PackingSearch<'a> {
    masks: &'a [u128],
    ends: &'a [(usize, usize)],
    s: usize,
    n: usize,
    chosen: Vec<usize>,
    best: Vec<usize>,
}

impl PackingSearch<'_> {
    /// Upper bound on how many cliques from `from..` can still be added
    /// beside `used`. Besides the plain count, each added clique consumes
    /// `s - 1` available pairs at each of its `s` vertices.
    fn bound(&self, from: usize, used: u128) -> usize {
        let mut count = 0;
        let mut avail = 0u128;
        for &m in &self.masks[from..] {
            if m & used == 0 {
                count += 1;
                avail |= m;
            }
        }
        let mut degree = [0usize; EXACT_PACKING_MAX_N];
        while avail != 0 {
            let bit = avail.trailing_zeros() as usize;
            avail &= avail - 1;
            let (a, b) = self.ends[bit];
            degree[a] += 1;
            degree[b] += 1;
        }
        let by_vertex = degree[..self.n]
            .iter()
            .map(|d| d / (self.s - 1))
            .sum::<usize>()
            / self.s;
        count.min(by_vertex)
    }

    fn run(&mut self, from: usize, used: u128) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        if self.chosen.len() + self.bound(from, used) <= self.best.len() {
            return;
        }
        let Some(i) = (from..self.masks.len()).find(|&i| self.masks[i] & used == 0) else {
            return;
        };
        self.chosen.push(i);
        self.run(i + 1, used | self.masks[i]);
        self.chosen.pop();
        self.run(i + 1, used);
    }
}

/// Vertex of maximum red degree, ties to the smallest id.
pub fn max_red_degree_vertex(col: &TwoColoring) -> (usize, usize) {
    max_degree_vertex_within(col, Color::Red, &VertexSet::full(col.n()))
        .expect("coloring has at least one vertex")
}

/// Vertex of `pool` with the most `color` neighbors inside `pool`; ties to the smallest id.
pub fn max_degree_vertex_within(
    col: &TwoColoring,
    color: Color,
    pool: &VertexSet,
) -> Option<(usize, usize)> {
    pool.iter()
        .map(|v| (v, col.neighbors(v, color).intersection_len(pool)))
        .fold(None, |best, (v, d)| match best {
            Some((_, bd)) if bd >= d => best,
            _ => Some((v, d)),
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> TwoColoring {
        TwoColoring::from_red_graph(&Graph::cycle(5))
    }

    #[test]
    fn clique_examples() {
        assert_eq!(
            find_clique(&TwoColoring::all_red(5), Color::Red, 3),
            Some(vec![0, 1, 2])
        );
        assert_eq!(find_clique(&c5(), Color::Red, 3), None);
        assert_eq!(find_clique(&c5(), Color::Blue, 3), None);
        assert_eq!(find_clique(&c5(), Color::Red, 1), Some(vec![0]));
        assert_eq!(find_clique(&c5(), Color::Red, 2), Some(vec![0, 1]));
        assert_eq!(find_clique(&c5(), Color::Blue, 2), Some(vec![0, 2]));
    }

    #[test]
    fn clique_budget_reports_unknown() {
        let col = TwoColoring::all_blue(30);
        let pool = VertexSet::full(30);
        assert_eq!(
            find_clique_within(&col, Color::Red, 3, &pool, 1_000),
            Search::Absent
        );
        assert_eq!(
            find_clique_within(&col, Color::Blue, 20, &pool, 5),
            Search::Unknown
        );
    }

    #[test]
    fn copy_examples() {
        let col = TwoColoring::from_red_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]).unwrap();
        let m = find_copy(&col, Color::Blue, &Graph::complete(2)).unwrap();
        assert_eq!(m.assignment, vec![2, 3]);

        assert!(find_copy(&c5(), Color::Blue, &Graph::complete(3)).is_none());

        let all_blue = TwoColoring::all_blue(4);
        let p4 = Graph::path(4);
        let m = find_copy(&all_blue, Color::Blue, &p4).unwrap();
        m.revalidate(&p4, &all_blue, Color::Blue).unwrap();
    }

    #[test]
    fn copy_with_isolated_vertices() {
        let g = Graph::new(4, [(0, 1)]).unwrap();
        let col = TwoColoring::from_red_edges(4, [(0, 1)]).unwrap();
        let m = find_copy(&col, Color::Red, &g).unwrap();
        m.revalidate(&g, &col, Color::Red).unwrap();
        assert!(find_copy(&TwoColoring::all_red(3), Color::Red, &g).is_none());
    }

    #[test]
    fn copy_budget_is_distinct_from_absent() {
        let col = TwoColoring::from_red_graph(&Graph::complete_bipartite(8, 8));
        let pool = VertexSet::full(16);
        assert_eq!(
            find_copy_within(&col, Color::Red, &Graph::complete(3), &pool, 10),
            Search::Unknown
        );
        assert!(
            find_copy_within(&col, Color::Red, &Graph::complete(3), &pool, u64::MAX).is_absent()
        );
    }

    #[test]
    fn packing_examples() {
        let k4 = TwoColoring::all_red(4);
        assert_eq!(greedy_packing(&k4, 3).len(), 1);
        assert_eq!(
            max_edge_disjoint_packing(&k4, 3, PackingMode::Exact)
                .unwrap()
                .len(),
            1
        );
        let k5 = TwoColoring::all_red(5);
        assert_eq!(
            max_edge_disjoint_packing(&k5, 3, PackingMode::Exact)
                .unwrap()
                .len(),
            2
        );
        assert!(greedy_packing(&TwoColoring::all_blue(6), 3).is_empty());
        assert!(max_edge_disjoint_packing(&k4, 1, PackingMode::Greedy).is_err());
        assert!(matches!(
            max_edge_disjoint_packing(&TwoColoring::all_red(13), 3, PackingMode::Exact),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn greedy_k5_is_lexicographic() {
        let p = greedy_packing(&TwoColoring::all_red(5), 3);
        assert_eq!(p.members, vec![vec![0, 1, 2], vec![0, 3, 4]]);
    }

    #[test]
    fn exact_packing_of_full_k12() {
        // K_12 holds 20 edge-disjoint triangles: 12 * 10 / 6.
        let p =
            max_edge_disjoint_packing(&TwoColoring::all_red(12), 3, PackingMode::Exact).unwrap();
        assert_eq!(p.len(), 20);
        p.revalidate(&TwoColoring::all_red(12)).unwrap();
    }

    #[test]
    fn degree_extrema() {
        assert_eq!(max_red_degree_vertex(&TwoColoring::all_blue(5)), (0, 0));
        let star = TwoColoring::from_red_edges(4, [(2, 0), (2, 1), (2, 3)]).unwrap();
        assert_eq!(max_red_degree_vertex(&star), (2, 3));
        let matching = TwoColoring::from_red_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(max_red_degree_vertex(&matching), (0, 1));
    }
}
