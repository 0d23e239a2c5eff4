//! Solvers parameterized by twin-cover.
//!
//! Removing a twin-cover `X` leaves disjoint cliques whose vertices share
//! their neighbourhood in `X` (the clique's type). For every guess of
//! `X' = S ∩ X` only the number of S vertices per clique matters, and
//! connectivity depends only on which types contribute vertices to each
//! side. A DP over types keeps the component partition of `X'` (and of
//! `X \ X'` for minimal cuts) as its state.

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::graph::{cut_size, is_minimal_cut, Graph};
use crate::partition::Partition;
use crate::report::{Algorithm, Problem, SolveReport};

/// Largest twin-cover the branching search will look for.
pub const MAX_BUDGET: usize = 16;

/// Closed neighbourhoods coincide.
pub fn true_twins(g: &Graph, u: usize, v: usize) -> bool {
    if !g.has_edge(u, v) || g.degree(u) != g.degree(v) {
        return false;
    }
    g.neighbors(u).iter().all(|&w| w == v || g.has_edge(v, w))
}

pub fn is_twin_cover(g: &Graph, cover: &[usize]) -> bool {
    let mut inside = vec![false; g.n()];
    for &v in cover {
        inside[v] = true;
    }
    g.edges().iter().all(|&(u, v)| inside[u] || inside[v] || true_twins(g, u, v))
}

/// Minimum twin-cover by iterative deepening over the non-twin edges.
pub fn min_twin_cover(g: &Graph, budget: usize) -> Result<Vec<usize>> {
    let edges: Vec<(usize, usize)> =
        g.edges().iter().copied().filter(|&(u, v)| !true_twins(g, u, v)).collect();
    fn branch(edges: &[(usize, usize)], chosen: &mut Vec<usize>, inside: &mut [bool], k: usize) -> bool {
        let Some(&(u, v)) = edges.iter().find(|&&(u, v)| !inside[u] && !inside[v]) else {
            return true;
        };
        if k == 0 {
            return false;
        }
        for w in [u, v] {
            inside[w] = true;
            chosen.push(w);
            if branch(edges, chosen, inside, k - 1) {
                return true;
            }
            chosen.pop();
            inside[w] = false;
        }
        false
    }
    for k in 0..=budget.min(MAX_BUDGET) {
        let mut chosen = Vec::new();
        let mut inside = vec![false; g.n()];
        if branch(&edges, &mut chosen, &mut inside, k) {
            chosen.sort_unstable();
            return Ok(chosen);
        }
    }
    Err(Error::BudgetExceeded { budget })
}

/// Size of the edge set cut inside a clique of `z` vertices with `p` in S, plus
/// its edges to `a` cover vertices outside S and `b` cover vertices in S.
pub fn clique_cut_contribution(z: usize, p: usize, a: usize, b: usize) -> usize {
    p * (z - p) + p * a + (z - p) * b
}

#[derive(Clone, Debug)]
pub struct CliqueClass {
    /// Neighbourhood in the cover, sorted.
    pub cover_neighbors: Vec<usize>,
    /// The cliques of this type, each sorted.
    pub cliques: Vec<Vec<usize>>,
}

/// Cliques of `G - X` grouped by type, both sorted.
pub fn clique_types(g: &Graph, cover: &[usize]) -> Vec<CliqueClass> {
    let mut inside = vec![false; g.n()];
    for &v in cover {
        inside[v] = true;
    }
    let mut seen = inside.clone();
    let mut groups: std::collections::BTreeMap<Vec<usize>, Vec<Vec<usize>>> = Default::default();
    for v in 0..g.n() {
        if seen[v] {
            continue;
        }
        let mut clique = vec![v];
        seen[v] = true;
        let mut i = 0;
        while i < clique.len() {
            for &w in g.neighbors(clique[i]) {
                if !seen[w] {
                    seen[w] = true;
                    clique.push(w);
                }
            }
            i += 1;
        }
        clique.sort_unstable();
        let ty: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| inside[w]).collect();
        groups.entry(ty).or_default().push(clique);
    }
    groups
        .into_iter()
        .map(|(cover_neighbors, cliques)| CliqueClass { cover_neighbors, cliques })
        .collect()
}

/// How many vertices of each clique go to S, per type.
type Counts = Vec<Vec<usize>>;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Use {
    SOnly,
    TOnly,
    Both,
}

struct Ctx<'a> {
    g: &'a Graph,
    cover: &'a [usize],
    types: &'a [CliqueClass],
    minimal: bool,
}

/// Per-type choice: best value and clique counts for one usage pattern.
type Choice = Option<(usize, Vec<usize>)>;

impl Ctx<'_> {
    fn side_of(&self, in_s: &[bool]) -> impl Fn(usize) -> bool + '_ {
        let pos: FxHashMap<usize, usize> = self.cover.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let flags = in_s.to_vec();
        move |v| flags[pos[&v]]
    }

    /// Best per-type contributions for the three usage patterns.
    fn type_options(&self, ty: &CliqueClass, in_s: &dyn Fn(usize) -> bool) -> [Choice; 3] {
        let b = ty.cover_neighbors.iter().filter(|&&x| in_s(x)).count();
        let a = ty.cover_neighbors.len() - b;
        let s_ok = b > 0;
        let t_ok = a > 0 || !self.minimal;
        // dp[hasS][hasT] = (value, counts)
        let mut dp: [[Choice; 2]; 2] = Default::default();
        dp[0][0] = Some((0, Vec::new()));
        for clique in &ty.cliques {
            let z = clique.len();
            let mut next: [[Choice; 2]; 2] = Default::default();
            for hs in 0..2 {
                for ht in 0..2 {
                    let Some((val, counts)) = &dp[hs][ht] else { continue };
                    for p in 0..=z {
                        let has_s = p > 0;
                        let has_t = p < z;
                        if (has_s && !s_ok) || (has_t && !t_ok) {
                            continue;
                        }
                        let v = val + clique_cut_contribution(z, p, a, b);
                        let (ns, nt) = (hs | has_s as usize, ht | has_t as usize);
                        if next[ns][nt].as_ref().map_or(true, |(best, _)| v > *best) {
                            let mut c = counts.clone();
                            c.push(p);
                            next[ns][nt] = Some((v, c));
                        }
                    }
                }
            }
            dp = next;
        }
        if self.minimal {
            [dp[1][0].clone(), dp[0][1].clone(), dp[1][1].clone()]
        } else {
            // The complement is unconstrained: fold T usage away.
            let pick = |x: &Choice, y: &Choice| match (x, y) {
                (Some(a), Some(b)) => Some(if b.0 > a.0 { b.clone() } else { a.clone() }),
                (a, b) => a.clone().or(b.clone()),
            };
            [pick(&dp[1][0], &dp[1][1]), dp[0][1].clone(), None]
        }
    }

    /// Best cut with `S ∩ X` given by `in_s` (not all false, and for minimal
    /// cuts not all true).
    fn guess(&self, in_s: &[bool]) -> Option<(usize, Counts)> {
        let k = self.cover.len();
        let side = self.side_of(in_s);
        let s_idx: Vec<usize> = (0..k).filter(|&i| in_s[i]).collect();
        let t_idx: Vec<usize> = (0..k).filter(|&i| !in_s[i]).collect();
        let local = |idx: &[usize]| -> Partition {
            let sub: Vec<usize> = idx.iter().map(|&i| self.cover[i]).collect();
            let mut ids: Vec<usize> = (0..sub.len()).collect();
            for i in 0..sub.len() {
                for j in 0..i {
                    if self.g.has_edge(sub[i], sub[j]) {
                        let (from, to) = (ids[i].max(ids[j]), ids[i].min(ids[j]));
                        for x in ids.iter_mut() {
                            if *x == from {
                                *x = to;
                            }
                        }
                    }
                }
            }
            Partition::from_block_ids(&ids)
        };
        let base: usize = self
            .g
            .edges()
            .iter()
            .filter(|&&(u, v)| {
                let (iu, iv) = (self.cover.binary_search(&u), self.cover.binary_search(&v));
                matches!((iu, iv), (Ok(x), Ok(y)) if in_s[x] != in_s[y])
            })
            .count();
        let merge = |p: &Partition, idx: &[usize], members: &[usize]| -> Partition {
            let hit: Vec<usize> = idx
                .iter()
                .enumerate()
                .filter(|&(_, &i)| members.binary_search(&self.cover[i]).is_ok())
                .map(|(j, _)| j)
                .collect();
            let mut ids: Vec<usize> = p.labels().iter().map(|&l| l as usize).collect();
            if let Some(&first) = hit.first() {
                let target = ids[first];
                let olds: Vec<usize> = hit.iter().map(|&j| ids[j]).collect();
                for x in ids.iter_mut() {
                    if olds.contains(x) {
                        *x = target;
                    }
                }
            }
            Partition::from_block_ids(&ids)
        };
        type State = (Partition, Partition);
        let mut states: FxHashMap<State, (usize, Counts)> = FxHashMap::default();
        let t_start = if self.minimal { local(&t_idx) } else { Partition::singletons(0) };
        states.insert((local(&s_idx), t_start), (base, Vec::new()));
        for ty in self.types {
            let options = self.type_options(ty, &side);
            let mut next: FxHashMap<State, (usize, Counts)> = FxHashMap::default();
            let mut sorted: Vec<_> = states.into_iter().collect();
            sorted.sort_by(|a, b| a.0.cmp(&b.0));
            for ((ps, pt), (val, counts)) in sorted {
                for (mode, opt) in [Use::SOnly, Use::TOnly, Use::Both].into_iter().zip(&options) {
                    let Some((gain, pick)) = opt else { continue };
                    let mut ns = ps.clone();
                    let mut nt = pt.clone();
                    if mode != Use::TOnly {
                        ns = merge(&ns, &s_idx, &ty.cover_neighbors);
                    }
                    if self.minimal && mode != Use::SOnly {
                        nt = merge(&nt, &t_idx, &ty.cover_neighbors);
                    }
                    let v = val + gain;
                    let entry = next.get(&(ns.clone(), nt.clone()));
                    if entry.map_or(true, |(best, _)| v > *best) {
                        let mut c = counts.clone();
                        c.push(pick.clone());
                        next.insert((ns, nt), (v, c));
                    }
                }
            }
            states = next;
        }
        states
            .into_iter()
            .filter(|((ps, pt), _)| ps.block_count() <= 1 && pt.block_count() <= 1)
            .map(|(_, v)| v)
            .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)))
    }

    fn materialize(&self, in_s: &[bool], counts: &Counts) -> Vec<bool> {
        let mut side = vec![false; self.g.n()];
        for (i, &v) in self.cover.iter().enumerate() {
            side[v] = in_s[i];
        }
        for (ty, per) in self.types.iter().zip(counts) {
            for (clique, &p) in ty.cliques.iter().zip(per) {
                for &v in &clique[..p] {
                    side[v] = true;
                }
            }
        }
        side
    }

    /// S strictly inside one clique (and, when `flip`, T inside one clique).
    fn inside_one_clique(&self, problem: Problem, flip: bool) -> Option<(usize, Vec<bool>)> {
        let mut best: Option<(usize, Vec<bool>)> = None;
        for ty in self.types {
            for clique in &ty.cliques {
                for p in 1..=clique.len() {
                    let mut side = vec![flip; self.g.n()];
                    for &v in &clique[..p] {
                        side[v] = !flip;
                    }
                    if !problem.is_feasible(self.g, &side) {
                        continue;
                    }
                    let size = cut_size(self.g, &side);
                    if best.as_ref().map_or(true, |(b, _)| size > *b) {
                        best = Some((size, side));
                    }
                }
            }
        }
        best
    }
}

/// Solves CMC or MMC given a twin-cover `cover` of `g`.
pub fn solve(g: &Graph, cover: &[usize], problem: Problem) -> Result<SolveReport> {
    if !matches!(problem, Problem::Cmc | Problem::Mmc) {
        return Err(Error::Report("twin-cover solver handles cmc and mmc".into()));
    }
    g.require_connected()?;
    let mut cover = cover.to_vec();
    cover.sort_unstable();
    cover.dedup();
    if !is_twin_cover(g, &cover) {
        return Err(Error::Report("given set is not a twin-cover".into()));
    }
    let types = clique_types(g, &cover);
    let ctx = Ctx { g, cover: &cover, types: &types, minimal: problem.is_minimal() };
    let k = cover.len();
    let mut best: Option<(usize, Vec<bool>)> = match problem {
        Problem::Cmc => Some((0, vec![false; g.n()])),
        _ => None,
    };
    let mut consider = |cand: Option<(usize, Vec<bool>)>| {
        if let Some((v, side)) = cand {
            if best.as_ref().map_or(true, |(b, _)| v > *b) {
                best = Some((v, side));
            }
        }
    };
    consider(ctx.inside_one_clique(problem, false));
    if problem.is_minimal() {
        consider(ctx.inside_one_clique(problem, true));
    }
    assert!(k < 64);
    for mask in 1u64..(1 << k) {
        if problem.is_minimal() && mask == (1 << k) - 1 {
            continue;
        }
        let in_s: Vec<bool> = (0..k).map(|i| mask >> i & 1 == 1).collect();
        if let Some((v, counts)) = ctx.guess(&in_s) {
            consider(Some((v, ctx.materialize(&in_s, &counts))));
        }
    }
    if let Some((v, side)) = &best {
        debug_assert_eq!(cut_size(g, side), *v);
        debug_assert!(!problem.is_minimal() || is_minimal_cut(g, side));
    }
    Ok(SolveReport::new(
        problem,
        Algorithm::TwinCover,
        g,
        best.as_ref().map(|(v, _)| *v as u64),
        best.as_ref().map(|(_, s)| s.as_slice()),
    ))
}

pub fn solve_cmc(g: &Graph, cover: &[usize]) -> Result<SolveReport> {
    solve(g, cover, Problem::Cmc)
}

pub fn solve_mmc(g: &Graph, cover: &[usize]) -> Result<SolveReport> {
    solve(g, cover, Problem::Mmc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::oracle;
    use crate::report::verify_report;

    #[test]
    fn cover_sizes() {
        assert_eq!(min_twin_cover(&named::complete(6), 4).unwrap(), Vec::<usize>::new());
        assert_eq!(min_twin_cover(&named::star(5), 4).unwrap(), vec![0]);
        assert_eq!(min_twin_cover(&named::cycle(5), 4).unwrap().len(), 3);
        assert!(matches!(min_twin_cover(&named::petersen(), 3), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn contribution_formula() {
        assert_eq!(clique_cut_contribution(4, 2, 1, 1), 4 + 2 + 2);
        assert_eq!(clique_cut_contribution(3, 0, 5, 2), 6);
    }

    #[test]
    fn agrees_with_oracle() {
        let graphs = [
            named::complete(5),
            named::star(4),
            named::path(5),
            named::cycle(6),
            named::complete_bipartite(2, 3),
            named::petersen(),
        ];
        for g in graphs {
            let cover = min_twin_cover(&g, MAX_BUDGET).unwrap();
            for problem in [Problem::Cmc, Problem::Mmc] {
                let r = solve(&g, &cover, problem).unwrap();
                assert_eq!(r.optimum, oracle::optimum(&g, problem), "{problem} {g:?}");
                verify_report(&g, &r).unwrap();
            }
        }
    }

    #[test]
    fn empty_cover_on_p5_keeps_complement_connected() {
        // With nothing of S in the cover, the complement can still split.
        let g = named::path(5);
        let all: Vec<usize> = (0..5).collect();
        let r = solve(&g, &all, Problem::Mmc).unwrap();
        assert_eq!(r.optimum, Some(1));
    }
}
