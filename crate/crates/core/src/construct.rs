//! Lower-bound witnesses by random coloring plus clique-deletion recoloring,
//! and Monte Carlo checks of the two tail inequalities behind the argument.
//!
//! Randomness: every coloring is drawn from a `ChaCha8Rng` seeded with the
//! master seed, on stream `i` for trial (or sample) `i`. Pairs are visited in
//! lexicographic order with one uniform draw each, red iff the draw is `< p`.
//! Results therefore depend only on `(seed, i)`, never on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::Serialize;

use crate::bits::VertexSet;
use crate::detect::{
    self, find_clique, find_copy_within, greedy_packing, CliquePacking, PackingMode, Search,
    EXACT_PACKING_MAX_N,
};
use crate::error::{Error, Result};
use crate::graph::{Color, Graph, TwoColoring};

/// Order `n` and red probability `p` of the random coloring.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeletionParams {
    pub n: usize,
    pub p: f64,
}

/// `n = floor(scale * (m / ln m)^{(s+1)/(s+3)} / (3 s^3))`, at least 2, and
/// `p = n^{-2/(s+1)} / (3 s)` evaluated at that integer `n`.
pub fn deletion_parameters(s: usize, m: usize, scale: f64) -> Result<DeletionParams> {
    if s < 3 {
        return Err(Error::domain(format!("s must be >= 3, got {s}")));
    }
    let mf = m as f64;
    if mf <= std::f64::consts::E {
        return Err(Error::domain(format!(
            "m must exceed e (ln m > 1), got {m}"
        )));
    }
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::domain(format!(
            "scale must be positive, got {scale}"
        )));
    }
    let sf = s as f64;
    let raw = scale * (mf / mf.ln()).powf((sf + 1.0) / (sf + 3.0)) / (3.0 * sf.powi(3));
    let n = (raw.floor() as usize).max(2);
    let p = (n as f64).powf(-2.0 / (sf + 1.0)) / (3.0 * sf);
    Ok(DeletionParams { n, p })
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "probability must lie in [0, 1], got {p}"
        )))
    }
}

/// Generator for trial `index` under master `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Each pair of `K_n` red independently with probability `p`; equals trial 0 of `seed`.
pub fn random_coloring(n: usize, p: f64, seed: u64) -> Result<TwoColoring> {
    check_probability(p)?;
    Ok(random_coloring_from(n, p, &mut trial_rng(seed, 0)))
}

pub fn random_coloring_from<R: Rng>(n: usize, p: f64, rng: &mut R) -> TwoColoring {
    let mut col = TwoColoring::all_blue(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                col.set(u, v, Color::Red);
            }
        }
    }
    col
}

/// Recolors blue every edge of a greedy maximal packing of red `s`-cliques.
/// The result has no red `K_s`: any survivor would extend the packing.
pub fn recolor_packing(col: &TwoColoring, s: usize) -> Result<(TwoColoring, CliquePacking)> {
    if s < 3 {
        return Err(Error::domain(format!("s must be >= 3, got {s}")));
    }
    let packing = greedy_packing(col, s);
    let mut out = col.clone();
    for m in &packing.members {
        for (i, &a) in m.iter().enumerate() {
            for &b in &m[i + 1..] {
                out.set(a, b, Color::Blue);
            }
        }
    }
    Ok((out, packing))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructParams {
    /// Order of the forbidden red clique.
    pub s: usize,
    pub n_override: Option<usize>,
    pub p_override: Option<f64>,
    pub trials: usize,
    pub seed: u64,
    /// Multiplier on the formula for `n`.
    pub scale: f64,
    /// Node budget for each blue-copy search.
    pub node_budget: u64,
    /// Worker threads; 0 lets the pool decide.
    pub threads: usize,
}

impl ConstructParams {
    pub fn new(s: usize, trials: usize, seed: u64) -> Self {
        Self {
            s,
            n_override: None,
            p_override: None,
            trials,
            seed,
            scale: 1.0,
            node_budget: detect::DEFAULT_NODE_BUDGET,
            threads: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CopyStatus {
    Found,
    Absent,
    Unknown,
}

impl<T> From<&Search<T>> for CopyStatus {
    fn from(s: &Search<T>) -> Self {
        match s {
            Search::Found(_) => CopyStatus::Found,
            Search::Absent => CopyStatus::Absent,
            Search::Unknown => CopyStatus::Unknown,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub trial_index: usize,
    #[serde(skip)]
    pub coloring: TwoColoring,
    pub packing_size: usize,
    #[serde(rename = "red_Ks_free")]
    pub red_ks_free: bool,
    #[serde(rename = "blue_G_status")]
    pub blue_g_status: CopyStatus,
    pub red_edges_before: usize,
    pub red_edges_after: usize,
}

impl TrialReport {
    /// A coloring with no red `K_s` and no blue `G` certifies `r(K_s, G) > n`.
    pub fn is_witness(&self) -> bool {
        self.red_ks_free && self.blue_g_status == CopyStatus::Absent
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructRun {
    pub s: usize,
    pub m: usize,
    pub n: usize,
    pub p: f64,
    pub reports: Vec<TrialReport>,
}

/// Runs `params.trials` independent trials of
/// random coloring -> recoloring -> verification against `g`.
pub fn construct_witness(params: &ConstructParams, g: &Graph) -> Result<ConstructRun> {
    if g.edge_count() == 0 {
        return Err(Error::domain("G must have at least one edge"));
    }
    if params.trials == 0 {
        return Err(Error::domain("trials must be >= 1"));
    }
    if params.s < 3 {
        return Err(Error::domain(format!("s must be >= 3, got {}", params.s)));
    }
    let m = g.edge_count();
    let (n, p) = match (params.n_override, params.p_override) {
        (Some(n), Some(p)) => (n, p),
        (n_o, p_o) => {
            let base = deletion_parameters(params.s, m, params.scale)?;
            let n = n_o.unwrap_or(base.n);
            let p = p_o.unwrap_or_else(|| {
                (n as f64).powf(-2.0 / (params.s as f64 + 1.0)) / (3.0 * params.s as f64)
            });
            (n, p)
        }
    };
    check_probability(p)?;

    let run_trial = |i: usize| run_trial(params, g, n, p, i);
    let reports: Vec<TrialReport> = if params.threads == 1 {
        (0..params.trials).map(run_trial).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(params.threads)
            .build()
            .map_err(|e| Error::domain(format!("thread pool: {e}")))?;
        pool.install(|| (0..params.trials).into_par_iter().map(run_trial).collect())
    };
    Ok(ConstructRun {
        s: params.s,
        m,
        n,
        p,
        reports,
    })
}

fn run_trial(params: &ConstructParams, g: &Graph, n: usize, p: f64, index: usize) -> TrialReport {
    let mut rng = trial_rng(params.seed, index as u64);
    let raw = random_coloring_from(n, p, &mut rng);
    let (coloring, packing) = recolor_packing(&raw, params.s).expect("s validated by caller");
    let red_ks_free = find_clique(&coloring, Color::Red, params.s).is_none();
    let blue = find_copy_within(
        &coloring,
        Color::Blue,
        g,
        &VertexSet::full(n),
        params.node_budget,
    );
    TrialReport {
        trial_index: index,
        packing_size: packing.len(),
        red_ks_free,
        blue_g_status: CopyStatus::from(&blue),
        red_edges_before: raw.edge_count(Color::Red),
        red_edges_after: coloring.edge_count(Color::Red),
        coloring,
    }
}

/// Empirical tail frequency next to its analytic bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailCheck {
    pub trials: usize,
    pub hits: usize,
    pub empirical: f64,
    pub bound: f64,
    /// `sqrt(q (1 - q) / trials)` with `q = min(bound, 1/2)`: the largest
    /// sampling error of a frequency whose true value is at most `bound`.
    pub std_error: f64,
}

impl TailCheck {
    fn new(trials: usize, hits: usize, bound: f64) -> Self {
        let q = bound.clamp(0.0, 0.5);
        Self {
            trials,
            hits,
            empirical: hits as f64 / trials as f64,
            bound,
            std_error: (q * (1.0 - q) / trials as f64).sqrt(),
        }
    }

    /// `empirical <= bound + 3 * std_error`.
    pub fn holds(&self) -> bool {
        self.empirical <= self.bound + 3.0 * self.std_error
    }
}

/// Samples `X ~ Bin(m, p)` and compares `P[X - pm < -a]` with `exp(-a^2 / (2pm))`.
pub fn chernoff_tail_check(m: u64, p: f64, a: f64, trials: usize, seed: u64) -> Result<TailCheck> {
    if m < 1 {
        return Err(Error::domain("m must be >= 1"));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain(format!("p must lie in (0, 1), got {p}")));
    }
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::domain(format!("a must be positive, got {a}")));
    }
    if trials == 0 {
        return Err(Error::domain("trials must be >= 1"));
    }
    let dist = Binomial::new(m, p).map_err(|e| Error::domain(e.to_string()))?;
    let mean = p * m as f64;
    let mut rng = trial_rng(seed, 0);
    let hits = (0..trials)
        .filter(|_| (dist.sample(&mut rng) as f64) - mean < -a)
        .count();
    let bound = (-a * a / (2.0 * mean)).exp();
    Ok(TailCheck::new(trials, hits, bound))
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Samples colorings of `K_n`, computes the maximum number `X0` of
/// edge-disjoint red `s`-cliques exactly, and compares `P[X0 >= k]` with
/// `(e mu / k)^k`, `mu = C(n, s) p^{C(s, 2)}`.
pub fn erdos_tetali_check(
    n: usize,
    p: f64,
    s: usize,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<TailCheck> {
    if n > EXACT_PACKING_MAX_N {
        return Err(Error::Capacity {
            what: "order for the exact packing oracle",
            got: n,
            limit: EXACT_PACKING_MAX_N,
        });
    }
    if s < 3 {
        return Err(Error::domain(format!("s must be >= 3, got {s}")));
    }
    if k < 1 {
        return Err(Error::domain("k must be >= 1"));
    }
    if trials == 0 {
        return Err(Error::domain("trials must be >= 1"));
    }
    check_probability(p)?;
    let mu = binomial(n, s) * p.powi((s * (s - 1) / 2) as i32);
    let bound = (std::f64::consts::E * mu / k as f64).powi(k as i32);
    let hits = (0..trials)
        .into_par_iter()
        .filter(|&i| {
            let col = random_coloring_from(n, p, &mut trial_rng(seed, i as u64));
            let packing = detect::max_edge_disjoint_packing(&col, s, PackingMode::Exact)
                .expect("order checked against the exact cap");
            packing.len() >= k
        })
        .count();
    Ok(TailCheck::new(trials, hits, bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameters_s3_m1e6() {
        // (10^6 / ln 10^6)^{2/3} / 81 = 21.44
        let t = deletion_parameters(3, 1_000_000, 1.0).unwrap();
        assert_eq!(t.n, 21);
        assert!((t.p - 1.0 / (9.0 * 21f64.sqrt())).abs() < 1e-15);
        assert!((t.p - 0.0242).abs() < 5e-5);
    }

    #[test]
    fn parameters_domain() {
        assert!(deletion_parameters(3, 2, 1.0).is_err());
        assert!(deletion_parameters(2, 100, 1.0).is_err());
        assert_eq!(deletion_parameters(3, 3, 1.0).unwrap().n, 2);
    }

    #[test]
    fn extreme_probabilities() {
        let c = random_coloring(9, 0.0, 1).unwrap();
        assert_eq!(c.edge_count(Color::Red), 0);
        let c = random_coloring(9, 1.0, 1).unwrap();
        assert_eq!(c.edge_count(Color::Red), 36);
        assert!(random_coloring(3, 1.5, 0).is_err());
        assert!(random_coloring(3, f64::NAN, 0).is_err());
    }

    #[test]
    fn recolor_examples() {
        let (out, p) = recolor_packing(&TwoColoring::all_red(4), 3).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(out.edge_count(Color::Red), 3);
        assert!(find_clique(&out, Color::Red, 3).is_none());

        let blue = TwoColoring::all_blue(6);
        let (out, p) = recolor_packing(&blue, 3).unwrap();
        assert!(p.is_empty());
        assert_eq!(out, blue);

        let c5 = TwoColoring::from_red_graph(&Graph::cycle(5));
        let (out, p) = recolor_packing(&c5, 3).unwrap();
        assert!(p.is_empty());
        assert_eq!(out, c5);
    }

    #[test]
    fn trivially_absent_when_n_below_pattern_order() {
        let mut params = ConstructParams::new(3, 5, 11);
        params.n_override = Some(4);
        params.p_override = Some(0.3);
        let run = construct_witness(&params, &Graph::complete(10)).unwrap();
        assert!(run
            .reports
            .iter()
            .all(|r| r.blue_g_status == CopyStatus::Absent && r.red_ks_free));
    }

    #[test]
    fn erdos_tetali_trivial_points() {
        let t = erdos_tetali_check(8, 0.0, 3, 1, 200, 5).unwrap();
        assert_eq!((t.hits, t.bound), (0, 0.0));
        let t = erdos_tetali_check(6, 1.0, 3, 1, 50, 5).unwrap();
        assert_eq!(t.empirical, 1.0);
        assert!((t.bound - std::f64::consts::E * 20.0).abs() < 1e-9);
        assert!(t.holds());
        assert!(erdos_tetali_check(13, 0.5, 3, 1, 10, 0).is_err());
    }

    #[test]
    fn chernoff_domain() {
        assert!(chernoff_tail_check(0, 0.5, 1.0, 10, 0).is_err());
        assert!(chernoff_tail_check(10, 1.0, 1.0, 10, 0).is_err());
        assert!(chernoff_tail_check(10, 0.5, 0.0, 10, 0).is_err());
    }
}
