//! Dynamic programming over nice tree decompositions, with bag states made
//! of a side assignment plus a connectivity partition of each tracked side.
//!
//! Unanchored variants carry a "closed" flag per side, set when the last
//! bag vertex of a side component is forgotten; after that no vertex of the
//! side may appear again, so the side ends up with exactly one component.

use rustc_hash::FxHashMap;

use crate::budget::Deadline;
use crate::error::{Error, Result};
use crate::graph::{cut_size, Graph};
use crate::rank;
use crate::report::{Algorithm, Problem, SolveReport};
use crate::treedec::{to_nice, NiceTreeDecomposition, NodeKind, TreeDecomposition};

/// Largest bag the packed state encoding supports.
pub const MAX_BAG: usize = 16;

pub(crate) const S_CLOSED: u8 = 1;
pub(crate) const T_CLOSED: u8 = 2;

/// Bag state. Bit `i` of `sides` puts bag position `i` in S. Nibble `i` of
/// `labels` is the smallest position in the same block as `i`; positions of
/// an untracked side are their own label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Key {
    pub sides: u32,
    pub labels: u64,
    pub flags: u8,
}

impl Key {
    pub fn label(&self, i: usize) -> usize {
        (self.labels >> (4 * i) & 0xF) as usize
    }

    pub fn in_s(&self, i: usize) -> bool {
        self.sides >> i & 1 == 1
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum Back {
    Start,
    One(Key),
    Two(Key, Key),
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Cell {
    pub value: u32,
    pub back: Back,
}

pub(crate) type Table = FxHashMap<Key, Cell>;

fn offer(table: &mut Table, key: Key, value: u32, back: Back) {
    match table.get_mut(&key) {
        Some(c) if c.value >= value => {}
        Some(c) => *c = Cell { value, back },
        None => {
            table.insert(key, Cell { value, back });
        }
    }
}

fn pack(labels: &[usize]) -> u64 {
    labels.iter().enumerate().fold(0, |acc, (i, &l)| acc | (l as u64) << (4 * i))
}

/// Canonical labels from arbitrary block ids.
fn canonical(ids: &[usize]) -> u64 {
    let labels: Vec<usize> =
        (0..ids.len()).map(|i| (0..=i).find(|&j| ids[j] == ids[i]).unwrap()).collect();
    pack(&labels)
}

pub(crate) struct Engine<'a> {
    pub g: &'a Graph,
    pub nice: &'a NiceTreeDecomposition,
    /// Track connectivity of the complement side as well.
    pub minimal: bool,
    pub reduce: bool,
    pub deadline: Deadline,
}

pub(crate) struct Run {
    pub tables: Vec<Table>,
    pub peak: usize,
}

impl Engine<'_> {
    fn tracked(&self, in_s: bool) -> bool {
        in_s || self.minimal
    }

    pub fn run(&self) -> Result<Run> {
        let max = self.nice.max_bag();
        if max > MAX_BAG {
            return Err(Error::WidthExceeded { size: max, max: MAX_BAG });
        }
        let mut tables: Vec<Table> = Vec::with_capacity(self.nice.nodes.len());
        let mut peak = 0;
        for (i, node) in self.nice.nodes.iter().enumerate() {
            if i % 32 == 0 {
                self.deadline.check()?;
            }
            let mut table = match node.kind {
                NodeKind::Leaf => self.leaf(&node.bag),
                NodeKind::IntroduceVertex(v) => {
                    let p = node.bag.binary_search(&v).unwrap();
                    self.introduce_vertex(&tables[node.children[0]], p, node.bag.len() - 1)
                }
                NodeKind::IntroduceEdge(u, v) => {
                    let pu = node.bag.binary_search(&u).unwrap();
                    let pv = node.bag.binary_search(&v).unwrap();
                    self.introduce_edge(&tables[node.children[0]], pu, pv)
                }
                NodeKind::Forget(v) => {
                    let child = &self.nice.nodes[node.children[0]];
                    let p = child.bag.binary_search(&v).unwrap();
                    self.forget(&tables[node.children[0]], p, child.bag.len())
                }
                NodeKind::Join => {
                    self.join(&tables[node.children[0]], &tables[node.children[1]], node.bag.len())
                }
            };
            if self.reduce {
                rank::reduce_table(&mut table, node.bag.len(), self.minimal);
            }
            peak = peak.max(table.len());
            tables.push(table);
        }
        Ok(Run { tables, peak })
    }

    fn leaf(&self, bag: &[usize]) -> Table {
        let mut t = Table::default();
        let labels: Vec<usize> = (0..bag.len()).collect();
        let sides = match self.nice.anchors.as_slice() {
            [] => 0,
            _ => self.anchor_sides(bag),
        };
        t.insert(Key { sides, labels: pack(&labels), flags: 0 }, Cell { value: 0, back: Back::Start });
        t
    }

    /// Side bits of the anchors within `bag`: the first anchor is in S.
    fn anchor_sides(&self, bag: &[usize]) -> u32 {
        let s = self.nice.s_anchor.expect("anchored decomposition");
        1 << bag.binary_search(&s).unwrap()
    }

    fn introduce_vertex(&self, child: &Table, p: usize, k: usize) -> Table {
        let mut out = Table::default();
        for (key, cell) in child {
            let low = key.sides & ((1 << p) - 1);
            let high = (key.sides >> p) << (p + 1);
            let mut ids: Vec<usize> = (0..k)
                .map(|i| key.label(i))
                .map(|l| if l >= p { l + 1 } else { l })
                .collect();
            ids.insert(p, p);
            let labels = pack(&ids);
            for in_s in [true, false] {
                let closed = if in_s { S_CLOSED } else { T_CLOSED };
                if self.tracked(in_s) && key.flags & closed != 0 {
                    continue;
                }
                let sides = low | high | if in_s { 1 << p } else { 0 };
                offer(&mut out, Key { sides, labels, flags: key.flags }, cell.value, Back::One(*key));
            }
        }
        out
    }

    fn introduce_edge(&self, child: &Table, pu: usize, pv: usize) -> Table {
        let mut out = Table::default();
        for (key, cell) in child {
            let (su, sv) = (key.in_s(pu), key.in_s(pv));
            if su != sv {
                offer(&mut out, *key, cell.value + 1, Back::One(*key));
                continue;
            }
            let mut next = *key;
            if self.tracked(su) {
                let (a, b) = (key.label(pu), key.label(pv));
                if a != b {
                    let (lo, hi) = (a.min(b), a.max(b));
                    for i in 0..16 {
                        if (next.labels >> (4 * i) & 0xF) as usize == hi && (key.sides >> i & 1 == 1) == su {
                            next.labels = next.labels & !(0xF << (4 * i)) | (lo as u64) << (4 * i);
                        }
                    }
                }
            }
            offer(&mut out, next, cell.value, Back::One(*key));
        }
        out
    }

    fn forget(&self, child: &Table, p: usize, k: usize) -> Table {
        let mut out = Table::default();
        for (key, cell) in child {
            let in_s = key.in_s(p);
            let mut ids: Vec<usize> = (0..k).map(|i| key.label(i)).collect();
            let mut flags = key.flags;
            if self.tracked(in_s) {
                let mates: Vec<usize> =
                    (0..k).filter(|&i| i != p && ids[i] == ids[p] && key.in_s(i) == in_s).collect();
                if mates.is_empty() {
                    let same_side = (0..k).any(|i| i != p && key.in_s(i) == in_s);
                    let closed = if in_s { S_CLOSED } else { T_CLOSED };
                    if same_side || flags & closed != 0 {
                        continue;
                    }
                    flags |= closed;
                }
            }
            ids.remove(p);
            let low = key.sides & ((1 << p) - 1);
            let high = (key.sides >> (p + 1)) << p;
            offer(
                &mut out,
                Key { sides: low | high, labels: canonical(&ids), flags },
                cell.value,
                Back::One(*key),
            );
        }
        out
    }

    fn join(&self, left: &Table, right: &Table, k: usize) -> Table {
        let mut by_sides: FxHashMap<u32, Vec<(&Key, &Cell)>> = FxHashMap::default();
        for (key, cell) in right {
            by_sides.entry(key.sides).or_default().push((key, cell));
        }
        for list in by_sides.values_mut() {
            list.sort_by_key(|(key, _)| **key);
        }
        let mut left_sorted: Vec<(&Key, &Cell)> = left.iter().collect();
        left_sorted.sort_by_key(|(key, _)| **key);
        let mut out = Table::default();
        let mut parent = [0usize; 16];
        for (a, ca) in left_sorted {
            let Some(list) = by_sides.get(&a.sides) else { continue };
            for &(b, cb) in list {
                if a.flags & b.flags != 0 {
                    continue;
                }
                for (i, slot) in parent.iter_mut().enumerate().take(k) {
                    *slot = i;
                }
                fn find(p: &mut [usize; 16], x: usize) -> usize {
                    let mut r = x;
                    while p[r] != r {
                        r = p[r];
                    }
                    r
                }
                for i in 0..k {
                    for l in [a.label(i), b.label(i)] {
                        let (x, y) = (find(&mut parent, i), find(&mut parent, l));
                        if x != y {
                            parent[x.max(y)] = x.min(y);
                        }
                    }
                }
                let ids: Vec<usize> = (0..k).map(|i| find(&mut parent, i)).collect();
                offer(
                    &mut out,
                    Key { sides: a.sides, labels: canonical(&ids), flags: a.flags | b.flags },
                    ca.value + cb.value,
                    Back::Two(*a, *b),
                );
            }
        }
        out
    }

    /// Best root state: `(value, key)` or `None` when nothing is feasible.
    pub fn best_root(&self, root: &Table) -> Option<(u32, Key)> {
        let mut keys: Vec<(&Key, &Cell)> = root.iter().collect();
        keys.sort_by_key(|(k, _)| **k);
        let mut best: Option<(u32, Key)> = None;
        for (key, cell) in keys {
            let ok = if self.nice.anchors.is_empty() {
                if self.minimal {
                    key.flags == S_CLOSED | T_CLOSED
                } else {
                    true
                }
            } else {
                key.flags == 0 && key.labels == pack(&[0, 1])
            };
            if ok && best.map_or(true, |(v, _)| cell.value > v) {
                best = Some((cell.value, *key));
            }
        }
        best
    }

    /// Side vector recovered by walking back-pointers from `root_key`.
    pub fn witness(&self, tables: &[Table], root_key: Key) -> Vec<bool> {
        let mut side = vec![false; self.g.n()];
        if let Some(s) = self.nice.s_anchor {
            side[s] = true;
        }
        let mut stack = vec![(self.nice.root(), root_key)];
        while let Some((x, key)) = stack.pop() {
            let node = &self.nice.nodes[x];
            if let NodeKind::IntroduceVertex(v) = node.kind {
                side[v] = key.in_s(node.bag.binary_search(&v).unwrap());
            }
            match tables[x][&key].back {
                Back::Start => {}
                Back::One(k) => stack.push((node.children[0], k)),
                Back::Two(a, b) => {
                    stack.push((node.children[0], a));
                    stack.push((node.children[1], b));
                }
            }
        }
        side
    }
}

/// Shared driver for the partition DP and its rank-reduced variant.
pub(crate) fn solve_with(
    g: &Graph,
    td: &TreeDecomposition,
    problem: Problem,
    reduce: bool,
    deadline: Deadline,
) -> Result<SolveReport> {
    problem.check_anchors(g.n())?;
    let algorithm = if reduce { Algorithm::RankBased } else { Algorithm::DpPartition };
    let nice = match problem.anchors() {
        Some((s, t)) => to_nice(g, td, &[s, t])?,
        None => to_nice(g, td, &[])?,
    };
    let engine = Engine { g, nice: &nice, minimal: problem.is_minimal(), reduce, deadline };
    let run = engine.run()?;
    let best = engine.best_root(&run.tables[nice.root()]);
    let side = best.map(|(_, key)| engine.witness(&run.tables, key));
    if let (Some((v, _)), Some(side)) = (best, &side) {
        debug_assert_eq!(cut_size(g, side), v as usize);
        debug_assert!(problem.is_feasible(g, side));
    }
    let mut report = SolveReport::new(problem, algorithm, g, best.map(|(v, _)| v as u64), side.as_deref());
    report.peak_cells = run.peak as u64;
    Ok(report)
}

pub fn solve(g: &Graph, td: &TreeDecomposition, problem: Problem) -> Result<SolveReport> {
    solve_with(g, td, problem, false, Deadline::none())
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
    use crate::report::verify_report;
    use crate::treedec::heuristic_decompose;

    fn check(g: &Graph) {
        let td = heuristic_decompose(g);
        for problem in [Problem::Cmc, Problem::Mmc] {
            let r = solve(g, &td, problem).unwrap();
            assert_eq!(r.optimum, oracle::optimum(g, problem), "{problem} on {g:?}");
            verify_report(g, &r).unwrap();
        }
        for s in 0..g.n() {
            for t in 0..g.n() {
                if s == t {
                    continue;
                }
                for problem in [Problem::CmcSt { s, t }, Problem::MmcSt { s, t }] {
                    let r = solve(g, &td, problem).unwrap();
                    assert_eq!(r.optimum, oracle::optimum(g, problem), "{problem} {s} {t}");
                    verify_report(g, &r).unwrap();
                }
            }
        }
    }

    #[test]
    fn agrees_with_oracle_on_named_graphs() {
        check(&named::path(4));
        check(&named::cycle(5));
        check(&named::complete(4));
        check(&named::star(4));
        check(&named::grid(2, 3));
        check(&named::complete_bipartite(2, 3));
    }

    #[test]
    fn petersen_and_grid() {
        for g in [named::petersen(), named::grid(3, 4)] {
            let td = heuristic_decompose(&g);
            for problem in [Problem::Cmc, Problem::Mmc] {
                let r = solve(&g, &td, problem).unwrap();
                assert_eq!(r.optimum, oracle::optimum(&g, problem));
            }
        }
    }

    #[test]
    fn unanchored_equals_best_anchored() {
        let g = named::grid(2, 4);
        let td = heuristic_decompose(&g);
        let mut best_mmc = None;
        let mut best_cmc = Some(0);
        for s in 0..g.n() {
            for t in 0..g.n() {
                if s != t {
                    best_mmc = best_mmc.max(solve_mmc_st(&g, &td, s, t).unwrap().optimum);
                    best_cmc = best_cmc.max(solve_cmc_st(&g, &td, s, t).unwrap().optimum);
                }
            }
        }
        assert_eq!(solve_mmc(&g, &td).unwrap().optimum, best_mmc);
        assert_eq!(solve_cmc(&g, &td).unwrap().optimum, best_cmc);
    }

    #[test]
    fn single_vertex() {
        let g = Graph::empty(1);
        let td = heuristic_decompose(&g);
        assert_eq!(solve_cmc(&g, &td).unwrap().optimum, Some(0));
        assert_eq!(solve_mmc(&g, &td).unwrap().optimum, None);
    }
}
