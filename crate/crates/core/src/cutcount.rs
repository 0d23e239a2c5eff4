//! Monte Carlo Cut & Count over nice tree decompositions.
//!
//! Each vertex gets a random weight in `1..=2n`. For every bag assignment of
//! vertices to left/right copies of S (and of T when the complement must be
//! connected), the DP counts modulo 2 the consistent cuts of each cut size
//! and total S weight. Disconnected partial solutions admit an even number
//! of consistent cuts once the anchor is pinned to the left copy, so an odd
//! count certifies a feasible solution. Answers are one-sided: a reported
//! size is always achievable, but the optimum may be missed.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use crate::budget::Deadline;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::report::{Algorithm, Problem, SolveReport};
use crate::treedec::{to_nice, NiceTreeDecomposition, NodeKind, TreeDecomposition};

/// Bag positions are packed two bits each into a `u32`.
pub const MAX_BAG: usize = 16;

const SL: u32 = 0;
const SR: u32 = 1;
const TL: u32 = 2;
const TR: u32 = 3;

pub fn default_repeats(n: usize) -> u32 {
    let log = usize::BITS - n.max(1).saturating_sub(1).leading_zeros();
    10.max(log)
}

/// Weights for one repetition, uniform in `1..=2n`.
pub fn sample_weights(n: usize, seed: u64, repetition: u32) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(repetition as u64);
    (0..n).map(|_| rng.gen_range(1..=2 * n.max(1) as u64)).collect()
}

type Bits = Vec<u64>;

fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let (ws, bs) = (shift / 64, shift % 64);
    for (j, &x) in src.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let k = j + ws;
        if k >= dst.len() {
            break;
        }
        dst[k] ^= x << bs;
        if bs > 0 && k + 1 < dst.len() {
            dst[k + 1] ^= x >> (64 - bs);
        }
    }
}

fn shifted(src: &[u64], shift: usize, bits: usize) -> Bits {
    let mut out = vec![0; src.len()];
    xor_shifted(&mut out, src, shift);
    clear_from(&mut out, bits);
    out
}

fn clear_from(v: &mut [u64], bits: usize) {
    let w = bits / 64;
    if w < v.len() {
        v[w] &= (1u64 << (bits % 64)) - 1;
        for x in &mut v[w + 1..] {
            *x = 0;
        }
    }
}

fn clear_below(v: &mut [u64], bits: usize) {
    let w = bits / 64;
    let len = v.len();
    for x in v.iter_mut().take(w.min(len)) {
        *x = 0;
    }
    if w < v.len() {
        v[w] &= !((1u64 << (bits % 64)) - 1);
    }
}

fn class_at(key: u32, i: usize) -> u32 {
    key >> (2 * i) & 3
}

struct Counter<'a> {
    g: &'a Graph,
    nice: &'a NiceTreeDecomposition,
    weights: &'a [u64],
    minimal: bool,
    stride: usize,
    bits: usize,
    words: usize,
    /// Edges introduced inside each node's subtree.
    edges_below: Vec<usize>,
    deadline: Deadline,
}

type CountTable = FxHashMap<u32, Bits>;

impl<'a> Counter<'a> {
    fn new(g: &'a Graph, nice: &'a NiceTreeDecomposition, weights: &'a [u64], minimal: bool) -> Self {
        let total: u64 = weights.iter().sum();
        let stride = total as usize + 1;
        let bits = (g.m() + 1) * stride;
        let mut edges_below = vec![0; nice.nodes.len()];
        for (i, node) in nice.nodes.iter().enumerate() {
            let own = matches!(node.kind, NodeKind::IntroduceEdge(..)) as usize;
            edges_below[i] = own + node.children.iter().map(|&c| edges_below[c]).sum::<usize>();
        }
        Counter {
            g,
            nice,
            weights,
            minimal,
            stride,
            bits,
            words: bits.div_ceil(64),
            edges_below,
            deadline: Deadline::none(),
        }
    }

    fn classes(&self) -> &'static [u32] {
        if self.minimal {
            &[SL, SR, TL, TR]
        } else {
            &[SL, SR, TL]
        }
    }

    fn in_s(c: u32) -> bool {
        c < 2
    }

    fn add(table: &mut CountTable, key: u32, bits: Bits) {
        match table.get_mut(&key) {
            Some(cur) => {
                for (x, y) in cur.iter_mut().zip(&bits) {
                    *x ^= y;
                }
            }
            None => {
                table.insert(key, bits);
            }
        }
    }

    fn s_weight(&self, bag: &[usize], key: u32) -> usize {
        bag.iter()
            .enumerate()
            .filter(|&(i, _)| Self::in_s(class_at(key, i)))
            .map(|(_, &v)| self.weights[v] as usize)
            .sum()
    }

    /// Runs bottom-up. Cells whose size cannot reach `floor` even if every
    /// remaining edge were cut are dropped. With `keep`, every table is returned.
    fn run(&self, floor: usize, keep: bool) -> Result<(CountTable, Vec<CountTable>)> {
        let mut tables: Vec<Option<CountTable>> = Vec::with_capacity(self.nice.nodes.len());
        let mut kept = Vec::new();
        for (i, node) in self.nice.nodes.iter().enumerate() {
            if i % 32 == 0 {
                self.deadline.check()?;
            }
            let take = |c: usize, tables: &mut Vec<Option<CountTable>>| -> CountTable {
                if keep {
                    tables[c].clone().unwrap()
                } else {
                    tables[c].take().unwrap()
                }
            };
            let mut table = match node.kind {
                NodeKind::Leaf => self.leaf(&node.bag),
                NodeKind::IntroduceVertex(v) => {
                    let child = take(node.children[0], &mut tables);
                    self.introduce_vertex(child, &node.bag, v)
                }
                NodeKind::IntroduceEdge(u, v) => {
                    let child = take(node.children[0], &mut tables);
                    let pu = node.bag.binary_search(&u).unwrap();
                    let pv = node.bag.binary_search(&v).unwrap();
                    self.introduce_edge(child, pu, pv)
                }
                NodeKind::Forget(v) => {
                    let child_bag = &self.nice.nodes[node.children[0]].bag;
                    let p = child_bag.binary_search(&v).unwrap();
                    let child = take(node.children[0], &mut tables);
                    self.forget(child, p)
                }
                NodeKind::Join => {
                    let a = take(node.children[0], &mut tables);
                    let b = take(node.children[1], &mut tables);
                    self.join(a, b, &node.bag)
                }
            };
            let remaining = self.g.m() - self.edges_below[i];
            if floor > remaining {
                let cut = (floor - remaining) * self.stride;
                table.retain(|_, bits| {
                    clear_below(bits, cut);
                    bits.iter().any(|&x| x != 0)
                });
            }
            if keep {
                kept.push(table.clone());
            }
            tables.push(Some(table));
        }
        let root = tables.pop().unwrap().unwrap();
        Ok((root, kept))
    }

    fn leaf(&self, bag: &[usize]) -> CountTable {
        let mut key = 0u32;
        let mut weight = 0usize;
        for (i, &v) in bag.iter().enumerate() {
            if Some(v) == self.nice.s_anchor {
                key |= SL << (2 * i);
                weight += self.weights[v] as usize;
            } else {
                key |= TL << (2 * i);
            }
        }
        let mut bits = vec![0; self.words];
        bits[weight / 64] |= 1 << (weight % 64);
        let mut t = CountTable::default();
        t.insert(key, bits);
        t
    }

    fn introduce_vertex(&self, child: CountTable, bag: &[usize], v: usize) -> CountTable {
        let p = bag.binary_search(&v).unwrap();
        let mut out = CountTable::default();
        let low_mask = (1u32 << (2 * p)) - 1;
        for (key, bits) in child {
            let low = key & low_mask;
            let high = (key >> (2 * p)) << (2 * p + 2);
            for &c in self.classes() {
                let k = low | high | c << (2 * p);
                let b = if Self::in_s(c) {
                    shifted(&bits, self.weights[v] as usize, self.bits)
                } else {
                    bits.clone()
                };
                if b.iter().any(|&x| x != 0) {
                    Self::add(&mut out, k, b);
                }
            }
        }
        out
    }

    fn introduce_edge(&self, child: CountTable, pu: usize, pv: usize) -> CountTable {
        let mut out = CountTable::default();
        for (key, bits) in child {
            let (a, b) = (class_at(key, pu), class_at(key, pv));
            if Self::in_s(a) != Self::in_s(b) {
                let moved = shifted(&bits, self.stride, self.bits);
                if moved.iter().any(|&x| x != 0) {
                    out.insert(key, moved);
                }
            } else if a == b {
                out.insert(key, bits);
            }
        }
        out
    }

    fn forget(&self, child: CountTable, p: usize) -> CountTable {
        let mut out = CountTable::default();
        let low_mask = (1u32 << (2 * p)) - 1;
        for (key, bits) in child {
            let k = (key & low_mask) | (key >> (2 * p + 2)) << (2 * p);
            Self::add(&mut out, k, bits);
        }
        out.retain(|_, b| b.iter().any(|&x| x != 0));
        out
    }

    fn join(&self, a: CountTable, b: CountTable, bag: &[usize]) -> CountTable {
        let mut out = CountTable::default();
        let mut keys: Vec<u32> = a.keys().copied().filter(|k| b.contains_key(k)).collect();
        keys.sort_unstable();
        for key in keys {
            let (x, y) = (&a[&key], &b[&key]);
            let overlap = self.s_weight(bag, key);
            let mut acc = vec![0u64; self.words];
            for (w, &word) in x.iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let bit = w * 64 + word.trailing_zeros() as usize;
                    word &= word - 1;
                    xor_shifted(&mut acc, y, bit - overlap);
                }
            }
            clear_from(&mut acc, self.bits);
            if acc.iter().any(|&x| x != 0) {
                out.insert(key, acc);
            }
        }
        out
    }

    /// Sizes with an odd count at the root.
    fn odd_sizes(&self, root: &CountTable) -> Vec<usize> {
        let mut key = 0u32;
        for (i, &v) in self.nice.nodes[self.nice.root()].bag.iter().enumerate() {
            if Some(v) != self.nice.s_anchor {
                key |= TL << (2 * i);
            }
        }
        let Some(bits) = root.get(&key) else { return Vec::new() };
        (0..=self.g.m())
            .filter(|&l| (l * self.stride..(l + 1) * self.stride).any(|b| bits[b / 64] >> (b % 64) & 1 == 1))
            .collect()
    }
}

/// Anchor pairs covering every solution exactly once.
fn anchor_runs(g: &Graph, problem: Problem) -> Vec<Vec<usize>> {
    match problem {
        Problem::CmcSt { s, t } | Problem::MmcSt { s, t } => vec![vec![s, t]],
        Problem::Cmc => (0..g.n()).map(|s| vec![s]).collect(),
        // Complementing S maps a solution to one with vertex 0 on the other side.
        Problem::Mmc => (1..g.n()).map(|t| vec![0, t]).collect(),
    }
}

struct Prepared {
    nices: Vec<NiceTreeDecomposition>,
    minimal: bool,
}

fn prepare(g: &Graph, td: &TreeDecomposition, problem: Problem) -> Result<Prepared> {
    problem.check_anchors(g.n())?;
    let nices = anchor_runs(g, problem)
        .into_iter()
        .map(|a| to_nice(g, td, &a))
        .collect::<Result<Vec<_>>>()?;
    if let Some(max) = nices.iter().map(|x| x.max_bag()).max() {
        if max > MAX_BAG {
            return Err(Error::WidthExceeded { size: max, max: MAX_BAG });
        }
    }
    Ok(Prepared { nices, minimal: problem.is_minimal() })
}

/// Largest size certified by one repetition, ignoring sizes below `floor`.
fn best_in_repetition(
    g: &Graph,
    prep: &Prepared,
    weights: &[u64],
    floor: usize,
    deadline: Deadline,
) -> Result<Option<usize>> {
    let mut best: Option<usize> = None;
    for nice in &prep.nices {
        let mut counter = Counter::new(g, nice, weights, prep.minimal);
        counter.deadline = deadline;
        let lo = best.map_or(floor, |b| floor.max(b + 1));
        let (root, _) = counter.run(lo, false)?;
        if let Some(&top) = counter.odd_sizes(&root).iter().filter(|&&l| l >= lo).max() {
            best = Some(top);
        }
    }
    Ok(best)
}

/// Whether a feasible cut of size at least `k` is certified within `repeats`
/// repetitions. Never answers yes wrongly.
pub fn decide(g: &Graph, td: &TreeDecomposition, problem: Problem, k: usize, repeats: u32, seed: u64) -> Result<bool> {
    if problem == Problem::Cmc && k == 0 {
        return Ok(true);
    }
    let prep = prepare(g, td, problem)?;
    for r in 0..repeats {
        let weights = sample_weights(g.n(), seed, r);
        if best_in_repetition(g, &prep, &weights, k, Deadline::none())?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn solve(g: &Graph, td: &TreeDecomposition, problem: Problem, repeats: u32, seed: u64) -> Result<SolveReport> {
    solve_with(g, td, problem, repeats, seed, Deadline::none())
}

/// Largest certified size over all repetitions. Later repetitions only look
/// for sizes above the best found so far.
pub fn solve_with(
    g: &Graph,
    td: &TreeDecomposition,
    problem: Problem,
    repeats: u32,
    seed: u64,
    deadline: Deadline,
) -> Result<SolveReport> {
    let prep = prepare(g, td, problem)?;
    let mut best: Option<usize> = if problem == Problem::Cmc { Some(0) } else { None };
    for r in 0..repeats {
        let weights = sample_weights(g.n(), seed, r);
        let floor = best.map_or(0, |b| b + 1);
        if let Some(found) = best_in_repetition(g, &prep, &weights, floor, deadline)? {
            best = Some(found);
        }
    }
    let mut report = SolveReport::new(problem, Algorithm::CutCount, g, best.map(|b| b as u64), None);
    report.seed = Some(seed);
    report.repeats = Some(repeats);
    Ok(report)
}

/// Odd cells `(classes over the bag, cut size, S weight)` of every node, for
/// checking the recurrences against direct enumeration. Class codes: 0/1 are
/// the left/right copies of S, 2/3 those of the complement.
pub fn odd_cells(
    g: &Graph,
    nice: &NiceTreeDecomposition,
    weights: &[u64],
    minimal: bool,
) -> Result<Vec<BTreeSet<(Vec<u8>, usize, usize)>>> {
    let counter = Counter::new(g, nice, weights, minimal);
    let (_, tables) = counter.run(0, true)?;
    Ok(tables
        .iter()
        .zip(&nice.nodes)
        .map(|(t, node)| {
            let mut cells = BTreeSet::new();
            for (&key, bits) in t {
                let classes: Vec<u8> = (0..node.bag.len()).map(|i| class_at(key, i) as u8).collect();
                for b in 0..counter.bits {
                    if bits[b / 64] >> (b % 64) & 1 == 1 {
                        cells.insert((classes.clone(), b / counter.stride, b % counter.stride));
                    }
                }
            }
            cells
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::oracle;
    use crate::treedec::heuristic_decompose;

    #[test]
    fn repeats_default() {
        assert_eq!(default_repeats(8), 10);
        assert_eq!(default_repeats(5000), 13);
    }

    #[test]
    fn weights_are_reproducible_and_in_range() {
        let a = sample_weights(9, 42, 3);
        assert_eq!(a, sample_weights(9, 42, 3));
        assert_ne!(a, sample_weights(9, 42, 4));
        assert!(a.iter().all(|&w| (1..=18).contains(&w)));
    }

    #[test]
    fn finds_optimum_on_small_graphs() {
        for g in [named::cycle(5), named::petersen(), named::grid(2, 4), named::star(4)] {
            let td = heuristic_decompose(&g);
            for problem in [Problem::Cmc, Problem::Mmc] {
                let r = solve(&g, &td, problem, 10, 1).unwrap();
                assert_eq!(r.optimum, oracle::optimum(&g, problem), "{problem}");
            }
        }
    }

    #[test]
    fn decisions_are_one_sided() {
        let g = named::petersen();
        let td = heuristic_decompose(&g);
        let opt = oracle::optimum(&g, Problem::Mmc).unwrap() as usize;
        assert!(decide(&g, &td, Problem::Mmc, opt, 10, 3).unwrap());
        assert!(!decide(&g, &td, Problem::Mmc, opt + 1, 10, 3).unwrap());
    }
}
