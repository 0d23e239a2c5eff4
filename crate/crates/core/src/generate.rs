//! Seeded graph families for cross-validation.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    let edges: Vec<_> = pairs.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
    Graph::from_edges(n, &edges).expect("pairs are in range")
}

/// Every connected labelled graph on `n` vertices, in edge-mask order.
pub fn all_connected(n: usize) -> Vec<Graph> {
    let pairs = pairs(n);
    assert!(pairs.len() < 32, "exhaustive enumeration is for n <= 8");
    (0u64..1 << pairs.len())
        .map(|mask| from_mask(n, &pairs, mask))
        .filter(Graph::is_connected)
        .collect()
}

/// Connected labelled graphs on `n` vertices: all of them when there are at
/// most `cap`, otherwise `cap` distinct ones drawn uniformly by edge mask.
pub fn connected_sample(n: usize, cap: usize, seed: u64) -> Vec<Graph> {
    let pairs = pairs(n);
    if pairs.len() <= 16 {
        let all = all_connected(n);
        if all.len() <= cap {
            return all;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64) << 32);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::with_capacity(cap);
    let full = if pairs.len() == 64 { u64::MAX } else { (1u64 << pairs.len()) - 1 };
    while out.len() < cap {
        let mask = rng.gen::<u64>() & full;
        if !seen.insert(mask) {
            continue;
        }
        let g = from_mask(n, &pairs, mask);
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

/// Erdős–Rényi graph conditioned on connectivity by resampling.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = pairs(n);
    loop {
        let edges: Vec<_> = pairs.iter().copied().filter(|_| rng.gen_bool(p)).collect();
        let g = Graph::from_edges(n, &edges).expect("pairs are in range");
        if g.is_connected() {
            return g;
        }
    }
}

/// Random tree plus `extra` random chords; always connected.
pub fn random_sparse(n: usize, extra: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    let pairs = pairs(n);
    let chords = extra.min(pairs.len());
    edges.extend(sample(&mut rng, pairs.len(), chords).into_iter().map(|i| pairs[i]));
    Graph::from_edges(n, &edges).expect("pairs are in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_counts() {
        // Labelled connected graphs: 1, 1, 4, 38, 728.
        let counts: Vec<usize> = (1..=5).map(|n| all_connected(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
    }

    #[test]
    fn samples_are_connected_distinct_and_seeded() {
        let a = connected_sample(7, 200, 3);
        assert_eq!(a.len(), 200);
        assert!(a.iter().all(Graph::is_connected));
        let mut edges: Vec<_> = a.iter().map(|g| g.edges().to_vec()).collect();
        edges.sort();
        edges.dedup();
        assert_eq!(edges.len(), 200);
        let b = connected_sample(7, 200, 3);
        assert!(a.iter().zip(&b).all(|(x, y)| x.edges() == y.edges()));
    }

    #[test]
    fn random_families_are_connected() {
        for seed in 0..20 {
            assert!(random_connected(12, 0.3, seed).is_connected());
            assert!(random_sparse(30, 10, seed).is_connected());
        }
    }
}
