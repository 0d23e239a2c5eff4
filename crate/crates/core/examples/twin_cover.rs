//! Twin-cover solver on a dense graph where tree-width is large.

use cutcraft::graph::named;
use cutcraft::report::verify_report;
use cutcraft::twincover::{clique_types, min_twin_cover, solve};
use cutcraft::{Graph, Problem, Result};

pub fn run() -> Result<()> {
    // Two cliques of 12 sharing two hub vertices.
    let mut edges = named::complete(12).edges().to_vec();
    edges.extend(named::complete(12).edges().iter().map(|&(u, v)| (u + 12, v + 12)));
    for hub in [24, 25] {
        edges.extend((0..24).map(|v| (v, hub)));
    }
    let g = Graph::from_edges(26, &edges)?;
    let cover = min_twin_cover(&g, 8)?;
    println!("twin-cover {:?}, {} clique types", cover, clique_types(&g, &cover).len());
    for problem in [Problem::Cmc, Problem::Mmc] {
        let report = solve(&g, &cover, problem)?;
        verify_report(&g, &report)?;
        println!("{problem}: {:?}", report.optimum);
    }
    Ok(())
}

fn main() -> Result<()> {
    run()
}
