use proptest::prelude::*;
use ramsey_core::density::{density, rho_star, Rational};
use ramsey_core::format::{parse_coloring, parse_graph, serialize_coloring, serialize_graph};
use ramsey_core::{union_of_cliques, Color, Graph, TwoColoring};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            Graph::new(
                n,
                pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&p, _)| p),
            )
            .unwrap()
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// Maximum density over every (vertex subset, edge subset) pair: the
/// definition itself, with no appeal to induced subgraphs.
fn rho_star_by_definition(h: &Graph) -> Rational {
    let n = h.n();
    let mut best: Option<Rational> = None;
    for mask in 0u32..1 << n {
        let k = mask.count_ones() as i64;
        if k < 3 {
            continue;
        }
        let inside: Vec<_> = h
            .edges()
            .iter()
            .filter(|&&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1)
            .collect();
        for sub in 0u32..1 << inside.len() {
            let e = sub.count_ones() as i64;
            let d = Rational::new(e - 1, k - 2);
            if best.is_none_or(|b| d > b) {
                best = Some(d);
            }
        }
    }
    best.unwrap()
}

proptest! {
    #[test]
    fn densities_are_isomorphism_invariant(
        (g, perm) in graph_strategy(8).prop_flat_map(|g| { let n = g.n(); (Just(g), permutation(n)) })
    ) {
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(density(&g).unwrap(), density(&h).unwrap());
        prop_assert_eq!(rho_star(&g).unwrap(), rho_star(&h).unwrap());
    }

    #[test]
    fn rho_star_dominates_density(g in graph_strategy(10)) {
        prop_assert!(rho_star(&g).unwrap() >= density(&g).unwrap());
    }

    #[test]
    fn graph_text_round_trips(g in graph_strategy(9)) {
        let text = serialize_graph(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(serialize_graph(&back), text);
    }

    #[test]
    fn coloring_text_round_trips(g in graph_strategy(9)) {
        let col = TwoColoring::from_red_graph(&g);
        let text = serialize_coloring(&col);
        let back = parse_coloring(&text).unwrap();
        prop_assert_eq!(back.red_edges(), col.red_edges());
        prop_assert_eq!(back.edge_count(Color::Red) + back.edge_count(Color::Blue), g.n() * (g.n() - 1) / 2);
        prop_assert_eq!(serialize_coloring(&back), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn rho_star_matches_definition(g in graph_strategy(6)) {
        prop_assert_eq!(rho_star(&g).unwrap(), rho_star_by_definition(&g));
    }
}

#[test]
fn rho_star_small_examples_by_definition() {
    assert_eq!(
        rho_star_by_definition(&Graph::star(3)),
        Rational::from_integer(1)
    );
    let k4_minus = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
    assert_eq!(rho_star_by_definition(&k4_minus), Rational::from_integer(2));
}

#[test]
fn union_of_cliques_structure() {
    for s in 3..=5 {
        for m in [3, 4, 10, 57, 100, 999, 5000] {
            let u = union_of_cliques(m, s).unwrap();
            assert!(u.graph.edge_count() >= m);
            let comps = u.graph.components();
            assert_eq!(comps.len(), u.count);
            // Largest component has k vertices, so no K_{k+1}.
            assert!(comps.iter().all(|c| c.len() == u.k));
            assert!(u.graph.max_degree() < u.k);
        }
    }
}
