//! Simple graphs and red/blue colorings of complete graphs.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::VertexSet;
use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n`.
///
/// Edges are stored as ordered pairs `(u, v)` with `u < v`, sorted
/// lexicographically. Adjacency lists are derived at construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate pairs and ids `>= n`.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::domain(format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::domain(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::domain(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(Self::from_sorted(n, set.into_iter().collect()))
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        Self { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn complete(k: usize) -> Self {
        let edges = (0..k)
            .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
            .collect();
        Self::from_sorted(k, edges)
    }

    /// Path with `k` vertices (`k - 1` edges).
    pub fn path(k: usize) -> Self {
        Self::from_sorted(k, (1..k).map(|v| (v - 1, v)).collect())
    }

    pub fn cycle(k: usize) -> Self {
        assert!(k >= 3, "cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..k).map(|v| (v - 1, v)).collect();
        edges.push((0, k - 1));
        edges.sort_unstable();
        Self::from_sorted(k, edges)
    }

    /// Star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        Self::from_sorted(leaves + 1, (1..=leaves).map(|v| (0, v)).collect())
    }

    /// `K_{p,q}` with parts `0..p` and `p..p+q`.
    pub fn complete_bipartite(p: usize, q: usize) -> Self {
        let edges = (0..p)
            .flat_map(|u| (p..p + q).map(move |v| (u, v)))
            .collect();
        Self::from_sorted(p + q, edges)
    }

    /// Vertex-disjoint union; the second graph's ids are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        Self::from_sorted(self.n + other.n, edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(Vec::is_empty)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Applies the vertex relabeling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::domain(
                "permutation length differs from vertex count",
            ));
        }
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

/// Red/blue coloring of the edges of `K_n`.
///
/// Red and blue neighborhoods are both kept as bitsets; for every `u != v`
/// exactly one of them contains the other endpoint.
#[derive(Clone, PartialEq, Eq)]
pub struct TwoColoring {
    n: usize,
    red: Vec<VertexSet>,
    blue: Vec<VertexSet>,
}

impl TwoColoring {
    pub fn all_blue(n: usize) -> Self {
        let blue = (0..n)
            .map(|v| {
                let mut s = VertexSet::full(n);
                s.remove(v);
                s
            })
            .collect();
        Self {
            n,
            red: vec![VertexSet::new(n); n],
            blue,
        }
    }

    pub fn all_red(n: usize) -> Self {
        let mut c = Self::all_blue(n);
        std::mem::swap(&mut c.red, &mut c.blue);
        c
    }

    /// Coloring whose red graph is exactly `edges`; duplicates and loops are rejected.
    pub fn from_red_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let g = Graph::new(n, edges)?;
        Ok(Self::from_red_graph(&g))
    }

    pub fn from_red_graph(g: &Graph) -> Self {
        let mut c = Self::all_blue(g.n());
        for &(u, v) in g.edges() {
            c.set(u, v, Color::Red);
        }
        c
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Color {
        debug_assert!(u != v);
        if self.red[u].contains(v) {
            Color::Red
        } else {
            Color::Blue
        }
    }

    #[inline]
    pub fn is(&self, u: usize, v: usize, color: Color) -> bool {
        u != v && self.neighbors(u, color).contains(v)
    }

    pub fn set(&mut self, u: usize, v: usize, color: Color) {
        assert!(
            u != v && u < self.n && v < self.n,
            "invalid pair ({u}, {v})"
        );
        let (on, off) = match color {
            Color::Red => (&mut self.red, &mut self.blue),
            Color::Blue => (&mut self.blue, &mut self.red),
        };
        on[u].insert(v);
        on[v].insert(u);
        off[u].remove(v);
        off[v].remove(u);
    }

    #[inline]
    pub fn neighbors(&self, v: usize, color: Color) -> &VertexSet {
        match color {
            Color::Red => &self.red[v],
            Color::Blue => &self.blue[v],
        }
    }

    #[inline]
    pub fn degree(&self, v: usize, color: Color) -> usize {
        self.neighbors(v, color).len()
    }

    /// Red pairs `(u, v)`, `u < v`, in lexicographic order.
    pub fn red_edges(&self) -> Vec<(usize, usize)> {
        self.edges_of(Color::Red)
    }

    pub fn edges_of(&self, color: Color) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| {
                self.neighbors(u, color)
                    .above(u)
                    .iter()
                    .map(move |v| (u, v))
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    pub fn edge_count(&self, color: Color) -> usize {
        self.red_or_blue(color)
            .iter()
            .map(VertexSet::len)
            .sum::<usize>()
            / 2
    }

    fn red_or_blue(&self, color: Color) -> &[VertexSet] {
        match color {
            Color::Red => &self.red,
            Color::Blue => &self.blue,
        }
    }

    /// The graph formed by the edges of one color.
    pub fn color_graph(&self, color: Color) -> Graph {
        Graph::from_sorted(self.n, self.edges_of(color))
    }

    /// Same coloring with red and blue exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            n: self.n,
            red: self.blue.clone(),
            blue: self.red.clone(),
        }
    }
}

impl fmt::Debug for TwoColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwoColoring(n={}, red={:?})", self.n, self.red_edges())
    }
}
