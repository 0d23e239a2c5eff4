//! Parsing a clique-width expression and solving along it.

use cutcraft::cliquewidth::{decomposition_tree, evaluate, find_expression, parse_cw, solve, write_cw};
use cutcraft::graph::named;
use cutcraft::{oracle, Problem, Result};

pub fn run() -> Result<()> {
    // A 4-cycle: two independent pairs joined completely.
    let text = "(join 1 2 (union (intro 1 1) (intro 3 1) (intro 2 2) (intro 4 2)))";
    let expr = parse_cw(text)?;
    let g = evaluate(&expr)?;
    println!("{} builds {} vertices, {} edges", write_cw(&expr), g.n(), g.m());

    let grid = named::grid(2, 5);
    let found = find_expression(&grid, 4).expect("ladders have small clique-width");
    let tree = decomposition_tree(&grid, &found)?;
    println!("ladder: expression width {}, module-width {}", found.width(), tree.module_width());
    for problem in [Problem::Cmc, Problem::Mmc] {
        let r = solve(&grid, &found, problem)?;
        assert_eq!(r.optimum, oracle::optimum(&grid, problem));
        println!("{problem}: {:?}", r.optimum);
    }
    Ok(())
}

fn main() -> Result<()> {
    run()
}
