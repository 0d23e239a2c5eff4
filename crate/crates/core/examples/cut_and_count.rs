//! Randomized Cut & Count: per-repetition success and the repeated solver.

use cutcraft::graph::named;
use cutcraft::treedec::heuristic_decompose;
use cutcraft::{cutcount, oracle, Problem, Result};

pub fn run() -> Result<()> {
    let g = named::grid(3, 4);
    let td = heuristic_decompose(&g);
    for problem in [Problem::Cmc, Problem::Mmc] {
        let opt = oracle::optimum(&g, problem).expect("grid has feasible cuts") as usize;
        let hits = (0..20).filter(|&seed| cutcount::decide(&g, &td, problem, opt, 1, seed).unwrap()).count();
        let never = (0..20).all(|seed| !cutcount::decide(&g, &td, problem, opt + 1, 1, seed).unwrap());
        let report = cutcount::solve(&g, &td, problem, 15, 7)?;
        println!(
            "{problem}: optimum {opt}, single repetition certified it {hits}/20 times, \
             never above: {never}, 15 repetitions found {:?}",
            report.optimum
        );
    }
    Ok(())
}

fn main() -> Result<()> {
    run()
}
