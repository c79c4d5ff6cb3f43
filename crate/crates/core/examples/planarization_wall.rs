//! Walls are planar; adding a few chords between far-apart vertices makes
//! them non-planar, and the solver finds how many vertices to remove.

use fmdel::family::Family;
use fmdel::instances::gen_wall;
use fmdel::solver::{solve_auto, SolveOptions};

fn main() -> fmdel::Result<()> {
    let family = Family::planarization();
    for r in [3, 5] {
        let w = gen_wall(r, 0)?;
        let sol = solve_auto(&w.graph, &family, &SolveOptions::default())?;
        println!("{r}-wall: {} vertices, planarization number {}", w.graph.n(), sol.opt);

        let mut g = w.graph.clone();
        let c = &w.corners;
        g.add_edge(c[0], c[3]);
        g.add_edge(c[1], c[2]);
        let sol = solve_auto(&g, &family, &SolveOptions::default())?;
        println!("  with both corner diagonals: {} (deleted {:?})", sol.opt, sol.deletion_set.unwrap_or_default());
    }
    Ok(())
}
