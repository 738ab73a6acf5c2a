use ramsey_core::construct::{
    chernoff_tail_check, construct_witness, deletion_parameters, erdos_tetali_check,
    random_coloring, recolor_packing, ConstructParams, CopyStatus,
};
use ramsey_core::detect::{find_clique, find_copy};
use ramsey_core::{Color, Graph, TwoColoring};

/// `P[X <= k]` for `X ~ Bin(n, p)`, summed term by term.
fn binomial_cdf(n: u64, p: f64, k: u64) -> f64 {
    let mut term = (1.0 - p).powi(n as i32);
    let mut sum = term;
    for i in 0..k {
        term *= (n - i) as f64 / (i + 1) as f64 * p / (1.0 - p);
        sum += term;
    }
    sum
}

#[test]
fn deletion_keeps_mp_above_8nlogn_for_s3() {
    // With n floored to an integer the inequality first holds for good at m = 142.
    let holds = |m: usize| {
        let t = deletion_parameters(3, m, 1.0).unwrap();
        let n = t.n as f64;
        m as f64 * t.p > 8.0 * n * n.ln()
    };
    assert!(!holds(141));
    let mut m = 142usize;
    while m <= 10_000_000 {
        assert!(holds(m), "m = {m}");
        m = m + 1 + m / 97;
    }
}

#[test]
fn parameter_p_formula_for_s3() {
    for m in [100, 10_000, 1_000_000, 50_000_000] {
        let t = deletion_parameters(3, m, 1.0).unwrap();
        let expected = (t.n as f64).powf(-0.5) / 9.0;
        assert!((t.p - expected).abs() < 1e-15);
    }
}

#[test]
fn random_coloring_mean_red_count() {
    // Bin(C(50, 2), 0.1): mean 122.5, variance 110.25.
    let seeds = 10_000u64;
    let total: usize = (0..seeds)
        .map(|seed| {
            random_coloring(50, 0.1, seed)
                .unwrap()
                .edge_count(Color::Red)
        })
        .sum();
    let mean = total as f64 / seeds as f64;
    let se = (1225.0 * 0.1 * 0.9 / seeds as f64).sqrt();
    assert!((mean - 122.5).abs() < 3.0 * se, "mean {mean}, se {se}");
}

#[test]
fn random_coloring_is_reproducible() {
    let a = random_coloring(30, 0.3, 99).unwrap();
    let b = random_coloring(30, 0.3, 99).unwrap();
    let c = random_coloring(30, 0.3, 100).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn recoloring_invariants_over_a_sweep() {
    for s in [3usize, 4] {
        for n in [6usize, 12, 25, 40] {
            for (pi, p) in [0.1, 0.3, 0.6, 0.9].into_iter().enumerate() {
                for seed in 0..5u64 {
                    let col = random_coloring(n, p, seed * 31 + pi as u64).unwrap();
                    let (out, packing) = recolor_packing(&col, s).unwrap();
                    assert!(find_clique(&out, Color::Red, s).is_none());
                    let flipped = col.edge_count(Color::Red) - out.edge_count(Color::Red);
                    assert_eq!(flipped, s * (s - 1) / 2 * packing.len());
                    // Only packing edges changed color.
                    for (u, v) in col.red_edges() {
                        if out.color(u, v) == Color::Blue {
                            assert!(packing
                                .members
                                .iter()
                                .any(|m| m.contains(&u) && m.contains(&v)));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let mut params = ConstructParams::new(3, 64, 2024);
    params.n_override = Some(14);
    params.p_override = Some(0.35);
    let g = Graph::cycle(5);
    let runs: Vec<_> = [1usize, 2, 4, 0]
        .into_iter()
        .map(|threads| {
            params.threads = threads;
            construct_witness(&params, &g).unwrap()
        })
        .collect();
    for r in &runs[1..] {
        assert_eq!(r, &runs[0]);
    }
    for (i, rep) in runs[0].reports.iter().enumerate() {
        assert_eq!(rep.trial_index, i);
        assert!(rep.red_ks_free);
        assert_eq!(
            rep.red_edges_before - rep.red_edges_after,
            3 * rep.packing_size
        );
    }
}

#[test]
fn p_zero_reduces_to_all_blue_containment() {
    for (n, g) in [
        (4, Graph::complete(4)),
        (4, Graph::complete(5)),
        (7, Graph::cycle(7)),
        (5, Graph::path(6)),
    ] {
        let mut params = ConstructParams::new(3, 3, 1);
        params.n_override = Some(n);
        params.p_override = Some(0.0);
        let run = construct_witness(&params, &g).unwrap();
        let expected = if find_copy(&TwoColoring::all_blue(n), Color::Blue, &g).is_some() {
            CopyStatus::Found
        } else {
            CopyStatus::Absent
        };
        assert!(run
            .reports
            .iter()
            .all(|r| r.blue_g_status == expected && r.packing_size == 0));
    }
}

#[test]
fn triangle_witness_at_order_five_appears() {
    let mut params = ConstructParams::new(3, 500, 7);
    params.n_override = Some(5);
    params.p_override = Some(0.5);
    let run = construct_witness(&params, &Graph::complete(3)).unwrap();
    let witnesses: Vec<_> = run.reports.iter().filter(|r| r.is_witness()).collect();
    assert!(!witnesses.is_empty());
    for w in witnesses {
        // The only triangle-free graph on 5 vertices with triangle-free complement is C_5.
        let red = w.coloring.color_graph(Color::Red);
        assert_eq!(red.edge_count(), 5);
        assert!((0..5).all(|v| red.degree(v) == 2));
    }
}

#[test]
fn budget_exhaustion_reports_unknown() {
    let mut params = ConstructParams::new(3, 2, 3);
    params.n_override = Some(30);
    params.p_override = Some(0.05);
    params.node_budget = 3;
    let run = construct_witness(&params, &Graph::complete(12)).unwrap();
    assert!(run
        .reports
        .iter()
        .all(|r| r.blue_g_status == CopyStatus::Unknown));
}

#[test]
fn chernoff_against_exact_binomial_cdf() {
    // X - 5 < -0.1 iff X <= 4.
    let exact = binomial_cdf(10, 0.5, 4);
    assert!((exact - 386.0 / 1024.0).abs() < 1e-12);
    let t = chernoff_tail_check(10, 0.5, 0.1, 100_000, 17).unwrap();
    let sigma = (exact * (1.0 - exact) / 1e5).sqrt();
    assert!(
        (t.empirical - exact).abs() < 4.0 * sigma,
        "{} vs {exact}",
        t.empirical
    );
    assert!((t.bound - (-0.001f64).exp()).abs() < 1e-12);
    assert!(t.holds());
}

#[test]
fn chernoff_far_tail_is_empty() {
    let t = chernoff_tail_check(1000, 0.1, 50.0, 100_000, 3).unwrap();
    assert!((t.bound - (-12.5f64).exp()).abs() < 1e-15);
    assert_eq!(t.hits, 0);
    assert!(t.holds());
}

#[test]
fn chernoff_beyond_support() {
    // a >= pm: X - pm < -a would need X < 0.
    let t = chernoff_tail_check(40, 0.25, 10.0, 20_000, 8).unwrap();
    assert_eq!(t.hits, 0);
    assert!(t.holds());
}

#[test]
fn erdos_tetali_mid_range() {
    let t = erdos_tetali_check(8, 0.3, 3, 3, 10_000, 12).unwrap();
    assert!(t.holds(), "{t:?}");
}
