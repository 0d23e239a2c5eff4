//! Brute force and the partition DP side by side on a few named graphs.

use cutcraft::graph::named;
use cutcraft::report::verify_report;
use cutcraft::treedec::heuristic_decompose;
use cutcraft::{dp, oracle, Problem, Result};

pub fn run() -> Result<()> {
    let graphs = [
        ("petersen", named::petersen()),
        ("grid 3x4", named::grid(3, 4)),
        ("K3,4", named::complete_bipartite(3, 4)),
    ];
    for (name, g) in &graphs {
        let td = heuristic_decompose(g);
        for problem in [Problem::Cmc, Problem::Mmc] {
            let exact = oracle::solve(g, problem, oracle::DEFAULT_LIMIT)?;
            let fast = dp::solve(g, &td, problem)?;
            verify_report(g, &fast)?;
            assert_eq!(exact.optimum, fast.optimum);
            println!("{name:>9} {problem}: {:?} (tree width {})", fast.optimum, td.width());
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    run()
}
