mod common;

use hamtough::structure::{find_pattern, gen_free, is_free};
use hamtough::{Graph, VertexSet};
use proptest::prelude::*;

#[test]
fn small_named_graphs() {
    let c5 = Graph::cycle(5);
    assert!(find_pattern(&c5, 2).is_none());
    assert!(!common::brute_has_pattern(&c5, 2));

    // P3 ∪ 2P1 itself: path 0-1-2, isolates 3 and 4.
    let pat = Graph::from_edges(5, &[(0, 1), (1, 2)]).unwrap();
    let w = find_pattern(&pat, 2).unwrap();
    assert_eq!(w.path3, (0, 1, 2));
    assert_eq!(w.isolates, vec![3, 4]);

    // Every leaf of K_{1,3} is adjacent to the centre, so no isolate exists.
    let star = Graph::complete_bipartite(1, 3);
    assert!(is_free(&star, 1));
    assert!(!common::brute_has_pattern(&star, 1));

    assert!(is_free(&Graph::complete(3), 1));
    for n in 1..9 {
        assert!(is_free(&Graph::complete(n), 1) && is_free(&Graph::complete(n), 2));
    }
}

#[test]
fn figure1_freeness_matches_enumeration() {
    let g = hamtough::fixtures::figure1();
    for k in [1, 2] {
        assert_eq!(is_free(&g, k), !common::brute_has_pattern(&g, k), "k = {k}");
    }
}

#[test]
fn gen_free_small_cases() {
    let g = gen_free(3, 1.0, 2, 0);
    assert_eq!(g, Graph::complete(3));
    assert_eq!(gen_free(10, 0.3, 2, 99), gen_free(10, 0.3, 2, 99));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn find_pattern_agrees_with_enumeration(n in 1usize..=10, p in 0.0f64..1.0, seed in any::<u64>(), k in 1usize..=2) {
        let g = common::random_graph(n, p, seed);
        match find_pattern(&g, k) {
            Some(w) => {
                prop_assert!(w.is_valid_in(&g));
                prop_assert_eq!(w.isolates.len(), k);
                prop_assert!(common::brute_has_pattern(&g, k));
            }
            None => prop_assert!(!common::brute_has_pattern(&g, k)),
        }
    }

    #[test]
    fn generated_graphs_are_free(n in 1usize..=14, p in 0.0f64..1.0, seed in any::<u64>(), k in 1usize..=2) {
        let g = gen_free(n, p, k, seed);
        prop_assert_eq!(g.n(), n);
        prop_assert!(is_free(&g, k));
        if n <= 10 {
            prop_assert!(!common::brute_has_pattern(&g, k));
        }
    }

    #[test]
    fn freeness_is_hereditary(n in 2usize..=12, p in 0.2f64..0.9, seed in any::<u64>(), keep in any::<u64>()) {
        let g = gen_free(n, p, 2, seed);
        let s: VertexSet = (0..n).filter(|&v| keep >> v & 1 == 1).collect();
        let (h, _) = g.induced(&s);
        prop_assert!(is_free(&h, 2));
    }
}
