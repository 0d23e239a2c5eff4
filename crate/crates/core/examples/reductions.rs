//! The four hardness constructions with certificate-derived witness cuts.

use cutcraft::graph::{cut_size, is_connected_subset, is_minimal_cut, named};
use cutcraft::reductions::*;
use cutcraft::Result;

pub fn run() -> Result<()> {
    let formula = MonotoneFormula::parse(3, "+1 2 3; -1 2")?;
    let inst = gen_pm3sat_cmc(&formula, 9, false)?;
    let assignment = formula.satisfying_assignment().expect("satisfiable");
    let side = pm3sat_witness(&inst, &assignment);
    assert!(is_connected_subset(&inst.graph, &side));
    println!(
        "pm3sat: {} vertices, bipartite {}, threshold {:?}, witness {}",
        inst.graph.n(),
        is_bipartite(&inst.graph),
        inst.threshold,
        cut_size(&inst.graph, &side)
    );

    let inst = gen_x3c_cmc(6, &[[0, 1, 2], [3, 4, 5], [0, 3, 4]], None, false)?;
    let side = x3c_witness(&inst, &[0, 1]);
    println!(
        "x3c: {} vertices, split {}, threshold {:?}, witness {}",
        inst.graph.n(),
        is_split(&inst.graph),
        inst.threshold,
        cut_size(&inst.graph, &side)
    );

    let cube = named::complete(4);
    let sub = gen_subdivision_mmc(&cube)?;
    let side = subdivision_witness(&cube, &sub, &[true, true, false, false]);
    assert!(is_minimal_cut(&sub.graph, &side));
    println!("subdivision: {} vertices, witness {}", sub.graph.n(), cut_size(&sub.graph, &side));

    let tri = named::complete(3);
    let split = gen_maxcut_mmc_split(&tri, None, false)?;
    let side = maxcut_split_witness(&tri, &split, &[true, false, false]);
    println!(
        "maxcut-split: {} vertices, threshold {}, witness {}",
        split.graph.n(),
        split.threshold_for(2),
        cut_size(&split.graph, &side)
    );
    Ok(())
}

fn main() -> Result<()> {
    run()
}
