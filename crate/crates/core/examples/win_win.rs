//! Solution-size decisions: leafy spanning trees first, exact DP otherwise.

use cutcraft::driver::{solve_k, win_win, WinWin};
use cutcraft::graph::named;
use cutcraft::{Problem, Result};

pub fn run() -> Result<()> {
    for (name, g, k) in [("star", named::star(9), 5), ("path", named::path(10), 3), ("grid", named::grid(4, 4), 9)] {
        let branch = match win_win(&g, k)? {
            WinWin::Yes { leaves, .. } => format!("spanning tree with {leaves} leaves"),
            WinWin::Fallback(td) => format!("decomposition of width {}", td.width()),
        };
        let decision = solve_k(&g, k, Problem::Cmc)?;
        println!("{name}, k={k}: {branch}; answer {} via {}", decision.yes, decision.report.algorithm);
    }
    Ok(())
}

fn main() -> Result<()> {
    run()
}
