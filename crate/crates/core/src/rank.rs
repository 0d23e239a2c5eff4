//! Rank-based pruning of weighted partition families.
//!
//! A family is replaced by a subfamily whose rows are linearly independent
//! over GF(2) in the matrix `M[p][c] = 1 iff every block of p lies on one side
//! of cut c` (cuts pin element 0 to side 0). Rows are taken greedily by
//! decreasing weight, which keeps the best completion weight of every
//! partition unchanged while bounding the family size by `2^(k-1)`.

use rustc_hash::FxHashMap;

use crate::budget::Deadline;
use crate::dp::{self, Key, Table};
use crate::error::Result;
use crate::graph::Graph;
use crate::partition::{all_partitions, Partition};
use crate::report::{Problem, SolveReport};
use crate::treedec::TreeDecomposition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPartition {
    pub partition: Partition,
    pub weight: u64,
}

/// Column bitsets: `colors[i]` has bit `c` set when element `i` is on side 1 of cut `c`.
fn cut_colors(k: usize) -> Vec<Vec<u64>> {
    let cols = 1usize << k.saturating_sub(1);
    let words = cols.div_ceil(64);
    let mut colors = vec![vec![0u64; words]; k];
    for (i, color) in colors.iter_mut().enumerate().skip(1) {
        for c in 0..cols {
            if c >> (i - 1) & 1 == 1 {
                color[c / 64] |= 1 << (c % 64);
            }
        }
    }
    colors
}

fn row_of(labels: &[u8], colors: &[Vec<u64>], cols: usize) -> Vec<u64> {
    let words = colors[0].len();
    let mut row = vec![u64::MAX; words];
    if cols % 64 != 0 {
        row[words - 1] = (1u64 << (cols % 64)) - 1;
    }
    for (i, &l) in labels.iter().enumerate() {
        let l = l as usize;
        if l == i {
            continue;
        }
        for w in 0..words {
            row[w] &= !(colors[i][w] ^ colors[l][w]);
        }
    }
    row
}

/// Indices (into `labels`) of a maximum-weight row basis. Rows must all have
/// the same ground-set size.
fn basis_indices(items: &[(&[u8], u64)]) -> Vec<usize> {
    let Some(&(first, _)) = items.first() else {
        return Vec::new();
    };
    let k = first.len();
    if k == 0 {
        let best = (0..items.len()).max_by_key(|&i| (items[i].1, std::cmp::Reverse(i))).unwrap();
        return vec![best];
    }
    let cols = 1usize << (k - 1);
    let colors = cut_colors(k);
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by(|&a, &b| items[b].1.cmp(&items[a].1).then_with(|| items[a].0.cmp(items[b].0)));
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut kept = Vec::new();
    for idx in order {
        if basis.len() == cols {
            break;
        }
        let mut row = row_of(items[idx].0, &colors, cols);
        for (pivot, b) in &basis {
            if row[pivot / 64] >> (pivot % 64) & 1 == 1 {
                for (x, y) in row.iter_mut().zip(b) {
                    *x ^= y;
                }
            }
        }
        if let Some(w) = row.iter().position(|&x| x != 0) {
            let pivot = w * 64 + row[w].trailing_zeros() as usize;
            basis.push((pivot, row));
            kept.push(idx);
        }
    }
    kept.sort_unstable();
    kept
}

/// Representative subfamily of at most `2^(k-1)` partitions.
pub fn reduce(family: &[WeightedPartition]) -> Vec<WeightedPartition> {
    let items: Vec<(&[u8], u64)> = family.iter().map(|w| (w.partition.labels(), w.weight)).collect();
    basis_indices(&items).into_iter().map(|i| family[i].clone()).collect()
}

/// Best weight of a member `p` with `p ⊔ q` a single block.
pub fn best_completion(family: &[WeightedPartition], q: &Partition) -> Option<u64> {
    family
        .iter()
        .filter(|w| w.partition.join(q).block_count() <= 1)
        .map(|w| w.weight)
        .max()
}

/// Whether `sub` keeps the best completion weight of `family` for every partition.
pub fn represents(sub: &[WeightedPartition], family: &[WeightedPartition]) -> bool {
    let Some(k) = family.first().map(|w| w.partition.len()) else {
        return sub.is_empty();
    };
    all_partitions(k).iter().all(|q| best_completion(sub, q) == best_completion(family, q))
}

/// Prunes a DP table group-wise: S partitions for fixed everything else,
/// then (when the complement is tracked) T partitions likewise.
pub(crate) fn reduce_table(table: &mut Table, k: usize, minimal: bool) {
    reduce_side(table, k, true);
    if minimal {
        reduce_side(table, k, false);
    }
}

fn reduce_side(table: &mut Table, k: usize, side_s: bool) {
    let mut groups: FxHashMap<(u32, u64, u8), Vec<Key>> = FxHashMap::default();
    for key in table.keys() {
        let mut other = 0u64;
        for i in 0..k {
            if key.in_s(i) != side_s {
                other |= 0xF << (4 * i);
            }
        }
        groups.entry((key.sides, key.labels & other, key.flags)).or_default().push(*key);
    }
    for (_, mut keys) in groups {
        if keys.len() <= 1 {
            continue;
        }
        keys.sort_unstable();
        let positions: Vec<usize> = (0..k).filter(|&i| keys[0].in_s(i) == side_s).collect();
        if positions.len() <= 1 {
            continue;
        }
        let locals: Vec<Vec<u8>> = keys
            .iter()
            .map(|key| {
                let ids: Vec<usize> = positions.iter().map(|&i| key.label(i)).collect();
                Partition::from_block_ids(&ids).labels().to_vec()
            })
            .collect();
        let items: Vec<(&[u8], u64)> =
            locals.iter().zip(&keys).map(|(l, key)| (l.as_slice(), table[key].value as u64)).collect();
        let keep = basis_indices(&items);
        let mut keep_iter = keep.into_iter().peekable();
        for (i, key) in keys.iter().enumerate() {
            if keep_iter.peek() == Some(&i) {
                keep_iter.next();
            } else {
                table.remove(key);
            }
        }
    }
}

pub fn solve(g: &Graph, td: &TreeDecomposition, problem: Problem) -> Result<SolveReport> {
    dp::solve_with(g, td, problem, true, Deadline::none())
}

pub fn solve_mmc_st(g: &Graph, td: &TreeDecomposition, s: usize, t: usize) -> Result<SolveReport> {
    solve(g, td, Problem::MmcSt { s, t })
}

pub fn solve_cmc_st(g: &Graph, td: &TreeDecomposition, s: usize, t: usize) -> Result<SolveReport> {
    solve(g, td, Problem::CmcSt { s, t })
}

pub fn solve_mmc(g: &Graph, td: &TreeDecomposition) -> Result<SolveReport> {
    solve(g, td, Problem::Mmc)
}

pub fn solve_cmc(g: &Graph, td: &TreeDecomposition) -> Result<SolveReport> {
    solve(g, td, Problem::Cmc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::oracle;
    use crate::treedec::heuristic_decompose;

    fn wp(blocks: &[Vec<usize>], k: usize, weight: u64) -> WeightedPartition {
        WeightedPartition { partition: Partition::from_blocks(k, blocks), weight }
    }

    #[test]
    fn all_partitions_of_three_reduce_to_four() {
        let family: Vec<_> = all_partitions(3)
            .into_iter()
            .enumerate()
            .map(|(i, p)| WeightedPartition { partition: p, weight: i as u64 })
            .collect();
        let sub = reduce(&family);
        assert!(sub.len() <= 4);
        assert!(represents(&sub, &family));
    }

    #[test]
    fn empty_ground_set_keeps_heaviest() {
        let family = vec![wp(&[], 0, 3), wp(&[], 0, 9), wp(&[], 0, 5)];
        assert_eq!(reduce(&family), vec![wp(&[], 0, 9)]);
    }

    #[test]
    fn heavier_duplicate_wins() {
        let family = vec![wp(&[vec![0, 1]], 2, 1), wp(&[vec![0, 1]], 2, 4)];
        let sub = reduce(&family);
        assert_eq!(sub, vec![wp(&[vec![0, 1]], 2, 4)]);
    }

    #[test]
    fn solver_matches_oracle() {
        for g in [named::petersen(), named::grid(3, 4), named::complete(5), named::cycle(7)] {
            let td = heuristic_decompose(&g);
            for problem in [Problem::Cmc, Problem::Mmc, Problem::MmcSt { s: 0, t: 4 }] {
                let r = solve(&g, &td, problem).unwrap();
                assert_eq!(r.optimum, oracle::optimum(&g, problem), "{problem}");
            }
        }
    }
}
