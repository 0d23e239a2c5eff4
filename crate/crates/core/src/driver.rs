//! Algorithm routing: automatic selection, a single entry point over every
//! solver, and the solution-size decision driver.

use std::time::Instant;

use crate::budget::Deadline;
use crate::cliquewidth::{self, CwExpr};
use crate::cutcount;
use crate::dp;
use crate::error::{Error, Result};
use crate::graph::{cut_size, Graph};
use crate::oracle;
use crate::report::{Algorithm, Problem, SolveReport};
use crate::treedec::{greedy_path_decomposition, heuristic_decompose, TreeDecomposition};
use crate::twincover;

pub const AUTO_ORACLE_MAX_N: usize = 18;
pub const AUTO_TWIN_COVER_MAX: usize = 8;
pub const AUTO_PARTITION_MAX_WIDTH: usize = 7;
pub const AUTO_RANK_MAX_WIDTH: usize = 14;
/// Widest expression the clique-width route searches for on its own.
pub const AUTO_CLIQUE_WIDTH: usize = 4;

/// Spanning tree grown greedily from a maximum-degree vertex: the tree leaf
/// with the most vertices still outside the tree is expanded next, and all
/// of them are attached to it as leaves. Returns parent pointers.
pub fn leafy_spanning_tree(g: &Graph) -> Vec<Option<usize>> {
    let n = g.n();
    let mut parent = vec![None; n];
    if n == 0 {
        return parent;
    }
    let root = (0..n).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).unwrap();
    let mut in_tree = vec![false; n];
    let mut expanded = vec![false; n];
    in_tree[root] = true;
    let fresh = |v: usize, in_tree: &[bool]| g.neighbors(v).iter().filter(|&&w| !in_tree[w]).count();
    let mut next = Some(root);
    while let Some(v) = next {
        expanded[v] = true;
        for &w in g.neighbors(v) {
            if !in_tree[w] {
                in_tree[w] = true;
                parent[w] = Some(v);
            }
        }
        next = (0..n)
            .filter(|&u| in_tree[u] && !expanded[u])
            .map(|u| (fresh(u, &in_tree), u))
            .filter(|&(c, _)| c > 0)
            .max_by_key(|&(c, u)| (c, std::cmp::Reverse(u)))
            .map(|(_, u)| u);
    }
    parent
}

/// Vertices of tree degree one.
pub fn tree_leaves(parent: &[Option<usize>]) -> Vec<usize> {
    let mut degree = vec![0usize; parent.len()];
    for (v, p) in parent.iter().enumerate() {
        if let Some(p) = *p {
            degree[v] += 1;
            degree[p] += 1;
        }
    }
    (0..parent.len()).filter(|&v| degree[v] == 1).collect()
}

#[derive(Clone, Debug)]
pub enum WinWin {
    /// The internal vertices of a spanning tree with at least `k` leaves.
    Yes { side: Vec<bool>, leaves: usize },
    /// No such tree was found; solve exactly on this decomposition instead.
    Fallback(TreeDecomposition),
}

/// Either a connected cut with at least `k` edges read off a leafy spanning
/// tree, or a path-like decomposition for an exact solver.
pub fn win_win(g: &Graph, k: usize) -> Result<WinWin> {
    g.require_connected()?;
    let parent = leafy_spanning_tree(g);
    let leaves = tree_leaves(&parent);
    if g.n() >= 3 && leaves.len() >= k {
        let mut side = vec![true; g.n()];
        for &v in &leaves {
            side[v] = false;
        }
        return Ok(WinWin::Yes { side, leaves: leaves.len() });
    }
    let path = greedy_path_decomposition(g);
    let tree = heuristic_decompose(g);
    Ok(WinWin::Fallback(if tree.width() < path.width() { tree } else { path }))
}

/// Answer to "is there a feasible cut with at least `k` edges?".
#[derive(Clone, Debug)]
pub struct Decision {
    pub yes: bool,
    /// On yes, carries a witness whose size is recorded in `optimum`.
    pub report: SolveReport,
}

/// Solution-size driver. Connected cuts try the spanning-tree certificate
/// first; everything else goes to the rank-reduced DP on a heuristic
/// decomposition.
pub fn solve_k(g: &Graph, k: usize, problem: Problem) -> Result<Decision> {
    g.require_connected()?;
    problem.check_anchors(g.n())?;
    let td = if problem == Problem::Cmc {
        match win_win(g, k)? {
            WinWin::Yes { side, .. } => {
                let size = cut_size(g, &side) as u64;
                let report = SolveReport::new(problem, Algorithm::WinWin, g, Some(size), Some(&side));
                return Ok(Decision { yes: true, report });
            }
            WinWin::Fallback(td) => td,
        }
    } else {
        heuristic_decompose(g)
    };
    let report = dp::solve_with(g, &td, problem, true, Deadline::none())?;
    let yes = report.optimum.is_some_and(|v| v >= k as u64);
    Ok(Decision { yes, report })
}

/// Route chosen by [`auto_select`], with the artefact it computed on the way.
#[derive(Clone, Debug)]
pub enum Route {
    Oracle,
    TwinCover(Vec<usize>),
    Decomposition(Algorithm, TreeDecomposition),
}

impl Route {
    pub fn algorithm(&self) -> Algorithm {
        match self {
            Route::Oracle => Algorithm::Oracle,
            Route::TwinCover(_) => Algorithm::TwinCover,
            Route::Decomposition(a, _) => *a,
        }
    }
}

/// Picks the cheapest applicable exact route: brute force for tiny graphs,
/// then a small twin-cover, then the partition DP, the rank-reduced DP and
/// finally Cut & Count by heuristic width.
pub fn auto_route(g: &Graph, problem: Problem) -> Route {
    if g.n() <= AUTO_ORACLE_MAX_N {
        return Route::Oracle;
    }
    if problem.anchors().is_none() {
        if let Ok(cover) = twincover::min_twin_cover(g, AUTO_TWIN_COVER_MAX) {
            return Route::TwinCover(cover);
        }
    }
    let td = heuristic_decompose(g);
    let width = td.width();
    let algorithm = if width <= AUTO_PARTITION_MAX_WIDTH {
        Algorithm::DpPartition
    } else if width <= AUTO_RANK_MAX_WIDTH {
        Algorithm::RankBased
    } else {
        Algorithm::CutCount
    };
    Route::Decomposition(algorithm, td)
}

pub fn auto_select(g: &Graph, problem: Problem) -> Algorithm {
    auto_route(g, problem).algorithm()
}

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    /// `None` picks automatically.
    pub algorithm: Option<Algorithm>,
    pub decomposition: Option<TreeDecomposition>,
    pub expression: Option<CwExpr>,
    pub repeats: Option<u32>,
    pub seed: u64,
    pub deadline: Deadline,
    /// Record wall-clock time in the report; off keeps reports reproducible.
    pub timing: bool,
}

/// Solves `problem` on `g` with the requested (or automatically chosen) algorithm.
pub fn solve(g: &Graph, problem: Problem, opts: &SolveOptions) -> Result<SolveReport> {
    let start = Instant::now();
    g.require_connected()?;
    problem.check_anchors(g.n())?;
    let route = match opts.algorithm {
        None => match &opts.decomposition {
            Some(td) if g.n() > AUTO_ORACLE_MAX_N => {
                let algorithm = if td.width() <= AUTO_PARTITION_MAX_WIDTH {
                    Algorithm::DpPartition
                } else {
                    Algorithm::RankBased
                };
                Route::Decomposition(algorithm, td.clone())
            }
            _ => auto_route(g, problem),
        },
        Some(Algorithm::Oracle) => Route::Oracle,
        Some(Algorithm::TwinCover) => Route::TwinCover(twincover::min_twin_cover(g, twincover::MAX_BUDGET)?),
        Some(a @ (Algorithm::DpPartition | Algorithm::RankBased | Algorithm::CutCount)) => {
            Route::Decomposition(a, opts.decomposition.clone().unwrap_or_else(|| heuristic_decompose(g)))
        }
        Some(Algorithm::CliqueWidth) => {
            let expr = match &opts.expression {
                Some(e) => e.clone(),
                None => cliquewidth::find_expression(g, AUTO_CLIQUE_WIDTH).ok_or_else(|| {
                    Error::Expression(format!("no expression of width ≤ {AUTO_CLIQUE_WIDTH} found"))
                })?,
            };
            opts.deadline.check()?;
            let mut report = cliquewidth::solve(g, &expr, problem)?;
            finish(&mut report, start, opts.timing);
            return Ok(report);
        }
        Some(Algorithm::WinWin) => {
            return Err(Error::Report("winwin answers decisions only; pass --k".into()));
        }
    };
    opts.deadline.check()?;
    let mut report = match route {
        Route::Oracle => oracle::solve(g, problem, oracle::DEFAULT_LIMIT)?,
        Route::TwinCover(cover) => twincover::solve(g, &cover, problem)?,
        Route::Decomposition(algorithm, td) => match algorithm {
            Algorithm::DpPartition => dp::solve_with(g, &td, problem, false, opts.deadline)?,
            Algorithm::RankBased => dp::solve_with(g, &td, problem, true, opts.deadline)?,
            _ => {
                let repeats = opts.repeats.unwrap_or_else(|| cutcount::default_repeats(g.n()));
                cutcount::solve_with(g, &td, problem, repeats, opts.seed, opts.deadline)?
            }
        },
    };
    finish(&mut report, start, opts.timing);
    Ok(report)
}

fn finish(report: &mut SolveReport, start: Instant, timing: bool) {
    report.elapsed_ms = if timing { start.elapsed().as_millis() as u64 } else { 0 };
}
