use proptest::prelude::*;
use rls_core::graph::Graph;

fn edge_lists() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2usize..40).prop_flat_map(|n| {
        let pairs = (0..n, 1..n).prop_map(move |(u, d)| (u, (u + d) % n));
        (Just(n), prop::collection::vec(pairs, 0..120))
    })
}

fn as_dimacs(n: usize, edges: &[(usize, usize)], declared: usize) -> String {
    let mut s = format!("c generated\np edge {n} {declared}\n");
    for (u, v) in edges {
        s.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    s
}

proptest! {
    #[test]
    fn round_trip_is_identity((n, edges) in edge_lists()) {
        let text = as_dimacs(n, &edges, edges.len());
        let g = Graph::parse_dimacs(&text).unwrap();
        let again = Graph::parse_dimacs(&g.to_dimacs()).unwrap();
        prop_assert_eq!(g.n(), again.n());
        prop_assert_eq!(g.edges(), again.edges());
        prop_assert_eq!(again.duplicate_edges(), 0);
        for v in 0..n {
            prop_assert_eq!(g.neighbors(v), again.neighbors(v));
        }
    }

    #[test]
    fn structure_invariants((n, edges) in edge_lists()) {
        let g = Graph::parse_dimacs(&as_dimacs(n, &edges, edges.len())).unwrap();
        prop_assert!(g.m() <= edges.len());
        prop_assert_eq!(g.m() + g.duplicate_edges(), edges.len());
        let degree_sum: usize = (0..n).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * g.m());
        for u in 0..n {
            prop_assert!(!g.neighbors(u).contains(&u));
            for &v in g.neighbors(u) {
                prop_assert!(g.neighbors(v).contains(&u));
            }
            prop_assert!(g.neighbors(u).windows(2).all(|w| w[0] < w[1]));
        }
    }
}
