//! Min-fill decomposition of a grid and its nice form with two anchors.

use cutcraft::graph::named;
use cutcraft::treedec::{heuristic_decompose, to_nice, validate, write_td, NodeKind};
use cutcraft::Result;

pub fn run() -> Result<()> {
    let g = named::grid(3, 5);
    let td = heuristic_decompose(&g);
    validate(&g, &td).expect("heuristic output is valid");
    print!("{}", write_td(&td));

    let nice = to_nice(&g, &td, &[0, 14])?;
    let count = |f: fn(&NodeKind) -> bool| nice.nodes.iter().filter(|x| f(&x.kind)).count();
    println!(
        "nice: {} nodes, width {}, {} joins, {} edge introductions",
        nice.nodes.len(),
        nice.width(),
        count(|k| matches!(k, NodeKind::Join)),
        count(|k| matches!(k, NodeKind::IntroduceEdge(..))),
    );
    Ok(())
}

fn main() -> Result<()> {
    run()
}
