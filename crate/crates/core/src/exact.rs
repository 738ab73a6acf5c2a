//! Exact Ramsey numbers of tiny pairs by backtracking over edge colorings.
//!
//! Pairs of `K_n` are fixed in lexicographic order, red before blue. After
//! each assignment only the copies of `H` (red) or `G` (blue) that use the
//! newly fixed pair are searched for, so a branch dies as soon as either
//! forbidden structure appears.

use serde::Serialize;

use crate::detect::find_copy;
use crate::error::{Error, Result};
use crate::graph::{Color, Graph, TwoColoring};

/// Default cap on `n(n-1)/2`, the number of pairs to color.
pub const DEFAULT_EDGE_CAP: usize = 36;

/// `true` iff `col` has no red copy of `h` and no blue copy of `g`.
pub fn is_witness(col: &TwoColoring, h: &Graph, g: &Graph) -> bool {
    find_copy(col, Color::Red, h).is_none() && find_copy(col, Color::Blue, g).is_none()
}

/// Oriented pattern edge `(x, y)` and the placement steps that follow it.
type EdgePlan = (usize, usize, Vec<(usize, Vec<usize>)>);

/// Pattern graph prepared for "copy through a given pair" queries on `u64` adjacency.
struct Pattern {
    /// Vertices with at least one edge.
    core: usize,
    isolated: usize,
    /// One plan per oriented edge `(x, y)`: the remaining core vertices in
    /// placement order, each with its earlier-placed neighbors.
    plans: Vec<EdgePlan>,
}

impl Pattern {
    fn new(g: &Graph) -> Self {
        let core_vertices: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) > 0).collect();
        let mut plans = Vec::new();
        for (x, y) in edge_orbit_representatives(g) {
            let mut placed = vec![x, y];
            let mut steps = Vec::new();
            while placed.len() < core_vertices.len() {
                let next = core_vertices
                    .iter()
                    .copied()
                    .filter(|v| !placed.contains(v))
                    .max_by_key(|&v| {
                        let links = g.neighbors(v).iter().filter(|w| placed.contains(w)).count();
                        (links, g.degree(v), std::cmp::Reverse(v))
                    })
                    .expect("core vertex remains");
                let back = g
                    .neighbors(next)
                    .iter()
                    .copied()
                    .filter(|w| placed.contains(w))
                    .collect();
                steps.push((next, back));
                placed.push(next);
            }
            plans.push((x, y, steps));
        }
        Self {
            core: core_vertices.len(),
            isolated: g.n() - core_vertices.len(),
            plans,
        }
    }

    /// Some copy in `adj` maps a pattern edge onto `{a, b}`.
    fn through(&self, adj: &[u64], n: usize, a: usize, b: usize, image: &mut [usize]) -> bool {
        if n < self.core + self.isolated {
            return false;
        }
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        self.plans.iter().any(|(x, y, steps)| {
            image[*x] = a;
            image[*y] = b;
            extend(adj, all, steps, 0, (1u64 << a) | (1u64 << b), image)
        })
    }
}

/// Largest pattern order for which automorphisms are enumerated.
const AUTOMORPHISM_MAX_N: usize = 9;

/// One oriented edge per orbit of the automorphism group acting on oriented
/// edges; all oriented edges when the pattern is too large to enumerate.
fn edge_orbit_representatives(g: &Graph) -> Vec<(usize, usize)> {
    let oriented: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .flat_map(|&(a, b)| [(a, b), (b, a)])
        .collect();
    if g.n() > AUTOMORPHISM_MAX_N {
        return oriented;
    }
    let autos = automorphisms(g);
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for &(x, y) in &oriented {
        if !autos.iter().any(|p| reps.contains(&(p[x], p[y]))) {
            reps.push((x, y));
        }
    }
    reps
}

fn automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    fn rec(g: &Graph, perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let v = perm.len();
        if v == g.n() {
            out.push(perm.clone());
            return;
        }
        for t in 0..g.n() {
            if used[t] || g.degree(t) != g.degree(v) {
                continue;
            }
            // Adjacency to already mapped vertices must be preserved.
            if (0..v).any(|u| g.has_edge(u, v) != g.has_edge(perm[u], t)) {
                continue;
            }
            used[t] = true;
            perm.push(t);
            rec(g, perm, used, out);
            perm.pop();
            used[t] = false;
        }
    }
    let mut out = Vec::new();
    rec(
        g,
        &mut Vec::with_capacity(g.n()),
        &mut vec![false; g.n()],
        &mut out,
    );
    out
}

fn extend(
    adj: &[u64],
    all: u64,
    steps: &[(usize, Vec<usize>)],
    i: usize,
    used: u64,
    image: &mut [usize],
) -> bool {
    let Some((v, back)) = steps.get(i) else {
        return true;
    };
    let mut cands = all & !used;
    for &w in back {
        cands &= adj[image[w]];
    }
    while cands != 0 {
        let t = cands.trailing_zeros() as usize;
        cands &= cands - 1;
        image[*v] = t;
        if extend(adj, all, steps, i + 1, used | 1 << t, image) {
            return true;
        }
    }
    false
}

struct WitnessSearch<'a> {
    n: usize,
    pairs: Vec<(usize, usize)>,
    red_pattern: &'a Pattern,
    blue_pattern: &'a Pattern,
    red: Vec<u64>,
    blue: Vec<u64>,
    red_image: Vec<usize>,
    blue_image: Vec<usize>,
    /// Skip the blue branch of the first pair (color-swap symmetry when H = G).
    symmetric: bool,
}

impl WitnessSearch<'_> {
    fn dfs(&mut self, i: usize) -> bool {
        let Some(&(a, b)) = self.pairs.get(i) else {
            return true;
        };
        self.red[a] |= 1 << b;
        self.red[b] |= 1 << a;
        if !self
            .red_pattern
            .through(&self.red, self.n, a, b, &mut self.red_image)
            && self.dfs(i + 1)
        {
            return true;
        }
        self.red[a] &= !(1 << b);
        self.red[b] &= !(1 << a);

        if i == 0 && self.symmetric {
            return false;
        }
        self.blue[a] |= 1 << b;
        self.blue[b] |= 1 << a;
        if !self
            .blue_pattern
            .through(&self.blue, self.n, a, b, &mut self.blue_image)
            && self.dfs(i + 1)
        {
            return true;
        }
        self.blue[a] &= !(1 << b);
        self.blue[b] &= !(1 << a);
        false
    }
}

fn check_capacity(n: usize, edge_cap: usize) -> Result<()> {
    let pairs = n * n.saturating_sub(1) / 2;
    if pairs > edge_cap {
        return Err(Error::Capacity {
            what: "pairs to color",
            got: pairs,
            limit: edge_cap,
        });
    }
    if n > 64 {
        return Err(Error::Capacity {
            what: "order of the complete graph",
            got: n,
            limit: 64,
        });
    }
    Ok(())
}

/// First coloring of `K_n` (red before blue, pairs in lexicographic order)
/// with no red `h` and no blue `g`.
pub fn find_witness(
    n: usize,
    h: &Graph,
    g: &Graph,
    edge_cap: usize,
) -> Result<Option<TwoColoring>> {
    check_capacity(n, edge_cap)?;
    // Edgeless patterns are present as soon as there is room for them.
    if (h.edge_count() == 0 && n >= h.n()) || (g.edge_count() == 0 && n >= g.n()) {
        return Ok(None);
    }
    let red_pattern = Pattern::new(h);
    let blue_pattern = Pattern::new(g);
    let mut search = WitnessSearch {
        n,
        pairs: (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect(),
        red_pattern: &red_pattern,
        blue_pattern: &blue_pattern,
        red: vec![0; n],
        blue: vec![0; n],
        red_image: vec![0; h.n()],
        blue_image: vec![0; g.n()],
        symmetric: h == g,
    };
    if !search.dfs(0) {
        return Ok(None);
    }
    let mut col = TwoColoring::all_blue(n);
    for u in 0..n {
        for v in u + 1..n {
            if search.red[u] >> v & 1 == 1 {
                col.set(u, v, Color::Red);
            }
        }
    }
    Ok(Some(col))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RamseyValue {
    /// `r(H, G)` equals this order.
    Exact(usize),
    /// Witnesses exist at every order up to and including this cap.
    Exceeds(usize),
}

/// Smallest `n` such that every coloring of `K_n` has a red `h` or a blue `g`.
pub fn ramsey_number(h: &Graph, g: &Graph, n_cap: usize, edge_cap: usize) -> Result<RamseyValue> {
    for n in 1..=n_cap {
        if find_witness(n, h, g, edge_cap)?.is_none() {
            return Ok(RamseyValue::Exact(n));
        }
    }
    Ok(RamseyValue::Exceeds(n_cap))
}

/// Largest `n` whose pair count fits `edge_cap`.
pub fn max_order_for(edge_cap: usize) -> usize {
    (1..=64)
        .take_while(|n| n * (n - 1) / 2 <= edge_cap)
        .last()
        .unwrap_or(1)
}
