//! Folios of boundaried paths: long paths all look alike at small detail.

use fmdel::folio::{folio, folio_closure, folio_signature, pattern_universe};
use fmdel::BoundariedGraph;

fn path(internal: usize) -> BoundariedGraph {
    let mut edges = Vec::new();
    let mut prev = 0;
    for i in 0..internal {
        edges.push((prev, 2 + i));
        prev = 2 + i;
    }
    edges.push((prev, 1));
    BoundariedGraph::from_edges(2, internal, &edges).expect("valid path")
}

fn main() -> fmdel::Result<()> {
    let d = 3;
    let u = pattern_universe(2, d)?;
    println!("{} patterns with two boundary vertices and detail <= {d}", u.len());
    for k in 1..=5 {
        let g = path(k);
        let f = folio(&g, d)?;
        println!("path with {k} internal: {} patterns, signature {}", f.len(), &folio_signature(&g, d)?.to_hex()[..16]);
    }
    let g = path(2);
    println!("closure method agrees at d = 2: {}", folio(&g, 2)? == folio_closure(&g, 2)?);
    Ok(())
}
