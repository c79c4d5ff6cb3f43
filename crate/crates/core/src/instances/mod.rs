//! Instance generators: grids, random graphs, partial k-trees and walls.

pub mod annulus;
pub mod embed;
pub mod wall;

pub use annulus::{railed_annulus, railed_annulus_with_z, required_height, RailedAnnulus};
pub use wall::{gen_wall, Brick, Wall, WallMeta};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::treedecomp::TreeDecomposition;

/// Fraction of k-tree edges [`gen_partial_ktree`] tries to remove.
pub const DEFAULT_DROP: f64 = 0.3;

/// The `(a × b)`-grid, vertex `(i, j)` numbered `i * b + j`.
pub fn gen_grid(a: usize, b: usize) -> Result<Graph> {
    if a == 0 || b == 0 {
        return Err(Error::Invalid("grid dimensions must be positive".into()));
    }
    let mut g = Graph::new(a * b);
    for i in 0..a {
        for j in 0..b {
            if j + 1 < b {
                g.add_edge(i * b + j, i * b + j + 1);
            }
            if i + 1 < a {
                g.add_edge(i * b + j, (i + 1) * b + j);
            }
        }
    }
    Ok(g)
}

/// Erdős–Rényi graph `G(n, p)`.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Invalid(format!("edge probability {p} is outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

pub fn gen_partial_ktree(n: usize, k: usize, seed: u64) -> Result<(Graph, TreeDecomposition)> {
    gen_partial_ktree_with_drop(n, k, DEFAULT_DROP, seed)
}

/// A random k-tree on `n` vertices with a fraction of its edges removed
/// (never disconnecting the graph), and the width-`k` decomposition whose
/// bags are the k-tree's `(k+1)`-cliques.
pub fn gen_partial_ktree_with_drop(n: usize, k: usize, drop: f64, seed: u64) -> Result<(Graph, TreeDecomposition)> {
    if k == 0 || n < k + 1 {
        return Err(Error::Invalid(format!("partial k-tree needs k >= 1 and n >= k + 1, got n={n}, k={k}")));
    }
    if !(0.0..=1.0).contains(&drop) {
        return Err(Error::Invalid(format!("drop fraction {drop} is outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(&mut rng);
    let mut g = Graph::new(n);
    let mut bags: Vec<Vec<usize>> = vec![(0..=k).collect()];
    let mut tree = Vec::new();
    for a in 0..=k {
        for b in a + 1..=k {
            g.add_edge(a, b);
        }
    }
    for v in k + 1..n {
        let parent = rng.gen_range(0..bags.len());
        let mut bag = bags[parent].clone();
        let out = rng.gen_range(0..bag.len());
        bag.remove(out);
        for &u in &bag {
            g.add_edge(u, v);
        }
        bag.push(v);
        bags.push(bag);
        tree.push((parent, bags.len() - 1));
    }
    let mut edges = g.edges();
    edges.shuffle(&mut rng);
    let target = (edges.len() as f64 * drop).round() as usize;
    let mut removed = 0;
    for (u, v) in edges {
        if removed == target {
            break;
        }
        g.remove_edge(u, v);
        if g.is_connected() {
            removed += 1;
        } else {
            g.add_edge(u, v);
        }
    }
    let mut relabeled = Graph::new(n);
    for (u, v) in g.edges() {
        relabeled.add_edge(label[u], label[v]);
    }
    let bags = bags.into_iter().map(|b| b.into_iter().map(|v| label[v]).collect()).collect();
    Ok((relabeled, TreeDecomposition::new(n, bags, tree)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treedecomp::{check_td, exact_tw};

    #[test]
    fn grids() {
        assert_eq!(gen_grid(1, 1).unwrap(), Graph::new(1));
        assert_eq!(gen_grid(2, 2).unwrap().m(), 4);
        assert_eq!(gen_grid(2, 2).unwrap().min_degree(), 2);
        assert_eq!(exact_tw(&gen_grid(4, 4).unwrap()).unwrap().0, 4);
    }

    #[test]
    fn partial_ktrees() {
        let (g, td) = gen_partial_ktree(5, 1, 3).unwrap();
        assert!(g.is_connected() && g.is_forest());
        assert_eq!(td.width(), 1);
        for seed in 0..100 {
            let (g, td) = gen_partial_ktree(30, 3, seed).unwrap();
            assert!(check_td(&g, &td).is_empty());
            assert_eq!(td.width(), 3);
        }
        assert_eq!(gen_partial_ktree(40, 2, 9).unwrap(), gen_partial_ktree(40, 2, 9).unwrap());
        assert!(gen_partial_ktree(3, 3, 0).is_err());
    }

    #[test]
    fn gnp_is_seeded() {
        assert_eq!(gen_gnp(12, 0.4, 5).unwrap(), gen_gnp(12, 0.4, 5).unwrap());
        assert_eq!(gen_gnp(6, 1.0, 0).unwrap().m(), 15);
    }
}
