#![allow(dead_code)]

use rand::Rng;
use rls_core::graph::Graph;

/// Erdős–Rényi G(n, p).
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Conflict count straight from the definition, independent of the
/// library's `evaluate`.
pub fn count_conflicts(g: &Graph, groups: &[usize]) -> u64 {
    let mut c = 0;
    for u in 0..g.n() {
        for &v in g.neighbors(u) {
            if u < v && groups[u] == groups[v] {
                c += 1;
            }
        }
    }
    c
}

/// Smallest conflict count over all k^n colorings.
pub fn brute_force_min(g: &Graph, k: usize) -> u64 {
    let n = g.n();
    let mut groups = vec![0usize; n];
    let mut best = u64::MAX;
    loop {
        best = best.min(count_conflicts(g, &groups));
        if best == 0 {
            return 0;
        }
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            groups[i] += 1;
            if groups[i] < k {
                break;
            }
            groups[i] = 0;
            i += 1;
        }
    }
}
