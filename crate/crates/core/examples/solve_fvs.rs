//! Minimum feedback vertex set of a random partial 3-tree.
//!
//!     cargo run --release --example solve_fvs -- 120 7

use fmdel::family::Family;
use fmdel::instances::gen_partial_ktree;
use fmdel::solver::{solve, verify_deletion_set, SolveOptions};
use fmdel::treedecomp::to_nice;

fn main() -> fmdel::Result<()> {
    let mut args = std::env::args().skip(1);
    let n = args.next().and_then(|s| s.parse().ok()).unwrap_or(80);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    let (g, td) = gen_partial_ktree(n, 3, seed)?;
    let family = Family::feedback_vertex_set();
    let sol = solve(&g, &family, &to_nice(&td)?, &SolveOptions::default())?;
    let set = sol.deletion_set.clone().unwrap_or_default();

    println!("graph: {} vertices, {} edges, width {}", g.n(), g.m(), sol.width);
    println!("minimum feedback vertex set: {}", sol.opt);
    println!("deleted: {set:?}");
    println!("remainder is a forest: {}", verify_deletion_set(&g, &family, &set)?);
    println!("peak states per node: {}, table inserts: {}", sol.stats.states_max, sol.stats.table_inserts);
    Ok(())
}
