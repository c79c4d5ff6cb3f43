//! Nested cycles and disjoint rails inside a wall.
//!
//!     cargo run --example railed_annulus -- 3 8

use fmdel::instances::{gen_wall, railed_annulus, required_height, annulus::DEFAULT_Z};

fn main() -> fmdel::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>());
    let x = args.next().and_then(Result::ok).unwrap_or(3);
    let y = args.next().and_then(Result::ok).unwrap_or(8);
    let r = required_height(x, y, DEFAULT_Z);
    let w = gen_wall(r, 0)?;
    let a = railed_annulus(&w, x, y)?;
    a.audit(&w, DEFAULT_Z)?;
    println!("{r}-wall, {} layers, {} central vertices", w.layer_count(), w.central.len());
    for (i, c) in a.cycles.iter().enumerate() {
        println!("cycle {}: {} vertices", i + 1, c.len());
    }
    for (j, p) in a.rails.iter().enumerate() {
        println!("rail {}: {} -> {} ({} vertices)", j + 1, p[0], p[p.len() - 1], p.len());
    }
    Ok(())
}
