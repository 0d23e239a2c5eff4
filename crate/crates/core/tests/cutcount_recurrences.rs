//! The Cut & Count tables against direct enumeration of consistent cuts.

use std::collections::BTreeSet;

use cutcraft::cutcount::{odd_cells, sample_weights};
use cutcraft::graph::named;
use cutcraft::treedec::{heuristic_decompose, to_nice, NiceTreeDecomposition, NodeKind};
use cutcraft::Graph;

/// Vertices and edges introduced in the subtree of every node.
fn subtree_contents(nice: &NiceTreeDecomposition) -> Vec<(BTreeSet<usize>, Vec<(usize, usize)>)> {
    let mut out: Vec<(BTreeSet<usize>, Vec<(usize, usize)>)> = Vec::new();
    for node in &nice.nodes {
        let mut verts: BTreeSet<usize> = node.bag.iter().copied().collect();
        let mut edges = Vec::new();
        for &c in &node.children {
            verts.extend(out[c].0.iter().copied());
            edges.extend(out[c].1.iter().copied());
        }
        if let NodeKind::IntroduceEdge(u, v) = node.kind {
            edges.push((u, v));
        }
        out.push((verts, edges));
    }
    out
}

/// Odd-parity cells by enumerating every class assignment of the subtree.
fn brute_cells(
    nice: &NiceTreeDecomposition,
    weights: &[u64],
    minimal: bool,
) -> Vec<BTreeSet<(Vec<u8>, usize, usize)>> {
    let classes: &[u8] = if minimal { &[0, 1, 2, 3] } else { &[0, 1, 2] };
    let s = nice.s_anchor;
    subtree_contents(nice)
        .into_iter()
        .zip(&nice.nodes)
        .map(|((verts, edges), node)| {
            let verts: Vec<usize> = verts.into_iter().collect();
            let free: Vec<usize> = verts.iter().copied().filter(|v| !nice.anchors.contains(v)).collect();
            let mut class = vec![0u8; weights.len()];
            for &a in &nice.anchors {
                class[a] = if Some(a) == s { 0 } else { 2 };
            }
            let mut parity = std::collections::BTreeMap::<(Vec<u8>, usize, usize), bool>::new();
            let total = classes.len().pow(free.len() as u32);
            for mut code in 0..total {
                for &v in &free {
                    class[v] = classes[code % classes.len()];
                    code /= classes.len();
                }
                let mut size = 0;
                let consistent = edges.iter().all(|&(u, v)| {
                    let (a, b) = (class[u], class[v]);
                    if (a < 2) != (b < 2) {
                        size += 1;
                        true
                    } else {
                        a == b
                    }
                });
                if !consistent {
                    continue;
                }
                let weight: u64 = verts.iter().filter(|&&v| class[v] < 2).map(|&v| weights[v]).sum();
                let key: Vec<u8> = node.bag.iter().map(|&v| class[v]).collect();
                *parity.entry((key, size, weight as usize)).or_default() ^= true;
            }
            parity.into_iter().filter(|&(_, odd)| odd).map(|(cell, _)| cell).collect()
        })
        .collect()
}

fn check(g: &Graph, anchors: &[usize], minimal: bool, seed: u64) {
    let td = heuristic_decompose(g);
    let nice = to_nice(g, &td, anchors).unwrap();
    let weights = sample_weights(g.n(), seed, 0);
    let fast = odd_cells(g, &nice, &weights, minimal).unwrap();
    let slow = brute_cells(&nice, &weights, minimal);
    for (i, (f, s)) in fast.iter().zip(&slow).enumerate() {
        assert_eq!(f, s, "node {i} ({:?}), anchors {anchors:?}, minimal {minimal}", nice.nodes[i].kind);
    }
}

#[test]
fn connected_mode_matches_enumeration() {
    for (seed, g) in [named::cycle(5), named::grid(2, 3), named::star(4), named::complete(4)].iter().enumerate() {
        for s in 0..g.n() {
            check(g, &[s], false, seed as u64);
        }
    }
}

#[test]
fn minimal_mode_matches_enumeration() {
    for (seed, g) in [named::cycle(5), named::grid(2, 3), named::complete_bipartite(2, 3)].iter().enumerate() {
        for t in 1..g.n() {
            check(g, &[0, t], true, seed as u64 + 10);
        }
    }
}

#[test]
fn anchored_pair_in_connected_mode() {
    let g = named::grid(2, 3);
    check(&g, &[5, 0], false, 99);
}
