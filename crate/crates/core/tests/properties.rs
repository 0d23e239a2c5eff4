use proptest::prelude::*;

use cutcraft::driver::tree_leaves;
use cutcraft::generate::random_connected;
use cutcraft::graph::{cut_size, is_connected_subset};
use cutcraft::treedec::heuristic_decompose;
use cutcraft::{dp, oracle, Graph, Problem};

/// Spanning tree from Kruskal over a shuffled edge order, as parent pointers
/// rooted at vertex 0.
fn random_spanning_tree(g: &Graph, order: &[usize]) -> Vec<Option<usize>> {
    let n = g.n();
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut [usize], x: usize) -> usize {
        if uf[x] != x {
            uf[x] = find(uf, uf[x]);
        }
        uf[x]
    }
    let mut adj = vec![Vec::new(); n];
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    edges.sort_by_key(|e| order[(e.0 * 31 + e.1) % order.len()]);
    for (u, v) in edges {
        let (a, b) = (find(&mut uf, u), find(&mut uf, v));
        if a != b {
            uf[a] = b;
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                stack.push(w);
            }
        }
    }
    parent
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn spanning_tree_interior_is_a_connected_cut(
        n in 3usize..=12,
        p in 0.2f64..0.8,
        seed in any::<u64>(),
        order in prop::collection::vec(any::<usize>(), 1..64),
    ) {
        let g = random_connected(n, p, seed);
        let parent = random_spanning_tree(&g, &order);
        let leaves = tree_leaves(&parent);
        let mut side = vec![true; n];
        for &v in &leaves {
            side[v] = false;
        }
        prop_assert!(is_connected_subset(&g, &side));
        prop_assert!(cut_size(&g, &side) >= leaves.len());
    }

    #[test]
    fn partition_dp_matches_brute_force(n in 2usize..=9, p in 0.2f64..0.9, seed in any::<u64>()) {
        let g = random_connected(n, p, seed);
        let td = heuristic_decompose(&g);
        for problem in [Problem::Cmc, Problem::Mmc] {
            prop_assert_eq!(dp::solve(&g, &td, problem).unwrap().optimum, oracle::optimum(&g, problem));
        }
    }
}
