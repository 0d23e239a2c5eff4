//! Exhaustive subset enumeration, the reference every other solver is tested against.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::report::{Algorithm, Problem, SolveReport};

pub const DEFAULT_LIMIT: usize = 22;

/// Connectivity of the vertex set `mask` via bit-parallel flood fill.
pub(crate) fn mask_connected(mask: u64, adj: &[u64]) -> bool {
    if mask == 0 {
        return true;
    }
    let mut reach = mask & mask.wrapping_neg();
    let mut frontier = reach;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        next &= mask & !reach;
        reach |= next;
        frontier = next;
    }
    reach == mask
}

fn mask_cut(mask: u64, adj: &[u64]) -> u32 {
    let mut total = 0;
    let mut f = mask;
    while f != 0 {
        let v = f.trailing_zeros() as usize;
        f &= f - 1;
        total += (adj[v] & !mask).count_ones();
    }
    total
}

/// Best feasible cut by enumerating subsets in increasing integer order
/// (bit `v` set means `v` in S). Ties keep the first subset found.
///
/// Returns `(optimum, S mask)` or `None` when nothing is feasible.
pub fn best_cut_mask(g: &Graph, problem: Problem) -> Option<(u64, u64)> {
    let n = g.n();
    assert!(n <= 63);
    let adj = g.adjacency_masks();
    let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let (required, forbidden) = match problem.anchors() {
        Some((s, t)) => (1u64 << s, 1u64 << t),
        None => (0, 0),
    };
    // S and its complement give the same unanchored minimal cut; the member
    // without vertex n-1 is always the smaller integer, so half the range suffices.
    let end = if problem == Problem::Mmc && n > 0 {
        1u64 << (n - 1)
    } else {
        1u64 << n
    };
    let minimal = problem.is_minimal();
    let mut best: Option<(u64, u64)> = None;
    for mask in 0..end {
        if mask & required != required || mask & forbidden != 0 {
            continue;
        }
        if minimal && (mask == 0 || mask == full) {
            continue;
        }
        let size = mask_cut(mask, &adj) as u64;
        if best.is_some_and(|(b, _)| size <= b) {
            continue;
        }
        if !mask_connected(mask, &adj) {
            continue;
        }
        if minimal && !mask_connected(full & !mask, &adj) {
            continue;
        }
        best = Some((size, mask));
    }
    best
}

/// Brute-force solver, refusing graphs above `limit` vertices.
pub fn solve(g: &Graph, problem: Problem, limit: usize) -> Result<SolveReport> {
    if g.n() > limit.min(63) {
        return Err(Error::TooLarge { n: g.n(), limit });
    }
    g.require_connected()?;
    problem.check_anchors(g.n())?;
    let best = best_cut_mask(g, problem);
    let side = best.map(|(_, mask)| (0..g.n()).map(|v| mask >> v & 1 == 1).collect::<Vec<_>>());
    Ok(SolveReport::new(
        problem,
        Algorithm::Oracle,
        g,
        best.map(|(b, _)| b),
        side.as_deref(),
    ))
}

/// Optimum only, with the default limit lifted.
pub fn optimum(g: &Graph, problem: Problem) -> Option<u64> {
    best_cut_mask(g, problem).map(|(b, _)| b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::report::verify_report;

    #[test]
    fn small_known_values() {
        let p3 = named::path(3);
        let r = solve(&p3, Problem::Cmc, DEFAULT_LIMIT).unwrap();
        assert_eq!(r.optimum, Some(2));
        assert_eq!(r.witness, Some(vec![2]));
        assert_eq!(optimum(&p3, Problem::Mmc), Some(1));
        assert_eq!(optimum(&named::cycle(4), Problem::Cmc), Some(2));
        assert_eq!(optimum(&named::cycle(4), Problem::Mmc), Some(2));
        assert_eq!(optimum(&named::complete(4), Problem::Cmc), Some(4));
        assert_eq!(optimum(&named::complete(4), Problem::Mmc), Some(4));
        assert_eq!(optimum(&named::star(3), Problem::Cmc), Some(3));
        assert_eq!(optimum(&named::star(3), Problem::Mmc), Some(1));
    }

    #[test]
    fn degenerate_graphs() {
        let k1 = Graph::empty(1);
        assert_eq!(optimum(&k1, Problem::Cmc), Some(0));
        assert_eq!(optimum(&k1, Problem::Mmc), None);
        let k2 = named::complete(2);
        assert_eq!(optimum(&k2, Problem::Mmc), Some(1));
    }

    #[test]
    fn anchored_and_limits() {
        let p3 = named::path(3);
        let r = solve(&p3, Problem::MmcSt { s: 0, t: 2 }, DEFAULT_LIMIT).unwrap();
        assert_eq!(r.optimum, Some(1));
        verify_report(&p3, &r).unwrap();
        assert!(matches!(
            solve(&named::path(30), Problem::Cmc, DEFAULT_LIMIT),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn mmc_witness_matches_full_enumeration() {
        // Full scan over every mask, ties to the first.
        let g = named::petersen();
        let adj = g.adjacency_masks();
        let full = (1u64 << g.n()) - 1;
        let mut best: Option<(u64, u64)> = None;
        for mask in 1..full {
            let ok = mask_connected(mask, &adj) && mask_connected(full & !mask, &adj);
            let size = mask_cut(mask, &adj) as u64;
            if ok && best.map_or(true, |(b, _)| size > b) {
                best = Some((size, mask));
            }
        }
        assert_eq!(best_cut_mask(&g, Problem::Mmc), best);
    }
}
