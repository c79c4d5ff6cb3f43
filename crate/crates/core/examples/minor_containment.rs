//! Minor tests, minor models and topological minors.

use fmdel::containment::{ext, find_minor, has_btm, is_planar};
use fmdel::{BoundariedGraph, Graph};

fn main() -> fmdel::Result<()> {
    let petersen = Graph::petersen();
    for (name, h) in [("K5", Graph::complete(5)), ("K3,3", Graph::complete_bipartite(3, 3))] {
        match find_minor(&petersen, &h)? {
            Some(model) => {
                model.validate(&petersen, &h)?;
                println!("Petersen has a {name} minor, branch sets {:?}", model.branch_sets);
            }
            None => println!("Petersen has no {name} minor"),
        }
    }
    println!("Petersen planar: {}", is_planar(&petersen));

    // K5 is a minor of Petersen but not a topological minor: every graph in
    // ext(K5) would have to appear as a subdivision, and Petersen is cubic.
    let host = BoundariedGraph::unboundaried(petersen);
    let k5 = BoundariedGraph::unboundaried(Graph::complete(5));
    let e = ext(&k5)?;
    let hits = e.iter().filter(|x| has_btm(&host, x).unwrap_or(false)).count();
    println!("ext(K5) has {} graphs; {} occur as topological minors of Petersen", e.len(), hits);
    println!("K5 itself is a topological minor: {}", has_btm(&host, &k5)?);
    Ok(())
}
