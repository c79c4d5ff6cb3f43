//! Exact and heuristic decompositions, nice conversion and PACE output.

use fmdel::instances::gen_grid;
use fmdel::treedecomp::{emit_td, exact_tw, minfill_td, to_nice, validate_td, NiceKind};

fn main() -> fmdel::Result<()> {
    let g = gen_grid(4, 5)?;
    let (tw, exact) = exact_tw(&g)?;
    let heuristic = minfill_td(&g);
    validate_td(&g, &exact)?;
    validate_td(&g, &heuristic)?;
    println!("4x5 grid: treewidth {tw}, min-fill width {}", heuristic.width());

    let nice = to_nice(&exact)?;
    nice.validate(&g)?;
    let joins = nice.count(|k| matches!(k, NiceKind::Join));
    println!("nice decomposition: {} nodes, {joins} joins, width {}", nice.nodes.len(), nice.width());
    print!("{}", emit_td(&exact));
    Ok(())
}
