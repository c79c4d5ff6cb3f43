//! Solver against brute force on random small graphs, for several families.

use fmdel::cli::crosscheck_instance;
use fmdel::family::Family;
use fmdel::solver::{oracle_solve, solve, SolveOptions};
use fmdel::treedecomp::to_nice;

fn main() -> fmdel::Result<()> {
    let count = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    for name in ["vertex-cover", "fvs", "K4", "C4", "planarization"] {
        let family = Family::preset(name)?;
        let mut agree = 0;
        for i in 0..count {
            let (g, td) = crosscheck_instance(42, i, 9)?;
            let sol = solve(&g, &family, &to_nice(&td)?, &SolveOptions::default())?;
            if sol.opt == oracle_solve(&g, &family)?.0 {
                agree += 1;
            }
        }
        println!("{:<14} {agree}/{count}", family.descriptor());
    }
    Ok(())
}
