//! Walls built from grids, with bricks, layers, pegs and corners.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::containment::is_planar;
use crate::error::{Error, Result};
use crate::graph::Graph;

use super::embed::faces;

#[derive(Clone, Debug, Serialize)]
pub struct Brick {
    pub cycle: Vec<usize>,
    pub internal: bool,
}

/// A subdivided elementary wall. Original vertices come first and keep
/// their grid coordinates; subdivision vertices follow.
#[derive(Clone, Debug, Serialize)]
pub struct Wall {
    pub r: usize,
    pub subdivide: usize,
    #[serde(skip)]
    pub graph: Graph,
    /// Grid coordinate `(x, y)` of each original vertex.
    pub coords: Vec<(usize, usize)>,
    #[serde(skip)]
    pub positions: Vec<(f64, f64)>,
    pub perimeter: Vec<usize>,
    pub bricks: Vec<Brick>,
    pub layers: Vec<Vec<usize>>,
    pub pegs: Vec<usize>,
    pub corners: Vec<usize>,
    pub central: Vec<usize>,
}

/// Summary written next to generated wall instances.
#[derive(Clone, Debug, Serialize)]
pub struct WallMeta {
    pub r: usize,
    pub subdivide: usize,
    pub vertices: usize,
    pub edges: usize,
    pub bricks: usize,
    pub internal_bricks: usize,
    pub layers: usize,
    pub pegs: Vec<usize>,
    pub corners: Vec<usize>,
    pub central: Vec<usize>,
}

/// The elementary `r`-wall: grid coordinates and edges.
fn elementary(r: usize) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let mut id: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut adj: BTreeMap<(usize, usize), BTreeSet<(usize, usize)>> = BTreeMap::new();
    for x in 1..=2 * r {
        for y in 1..=r {
            adj.entry((x, y)).or_default();
            if x < 2 * r {
                adj.entry((x, y)).or_default().insert((x + 1, y));
                adj.entry((x + 1, y)).or_default().insert((x, y));
            }
            if y < r && (x + y) % 2 == 0 {
                adj.entry((x, y)).or_default().insert((x, y + 1));
                adj.entry((x, y + 1)).or_default().insert((x, y));
            }
        }
    }
    loop {
        let leaves: Vec<(usize, usize)> = adj.iter().filter(|(_, nb)| nb.len() <= 1).map(|(&p, _)| p).collect();
        if leaves.is_empty() {
            break;
        }
        for p in leaves {
            if let Some(nb) = adj.remove(&p) {
                for q in nb {
                    if let Some(s) = adj.get_mut(&q) {
                        s.remove(&p);
                    }
                }
            }
        }
    }
    // Order vertices by row, then column.
    let mut coords: Vec<(usize, usize)> = adj.keys().copied().collect();
    coords.sort_by_key(|&(x, y)| (y, x));
    for (i, &p) in coords.iter().enumerate() {
        id.insert(p, i);
    }
    let mut edges = Vec::new();
    for (p, nb) in &adj {
        for q in nb {
            if id[p] < id[q] {
                edges.push((id[p], id[q]));
            }
        }
    }
    edges.sort_unstable();
    (coords, edges)
}

/// Builds the elementary `r`-wall (`r` odd, at least 3) with `subdivide`
/// extra vertices on every edge.
pub fn gen_wall(r: usize, subdivide: usize) -> Result<Wall> {
    if r < 3 || r.is_multiple_of(2) {
        return Err(Error::Invalid(format!("wall height must be odd and at least 3, got {r}")));
    }
    let (coords, edges) = elementary(r);
    let n0 = coords.len();
    let mut positions: Vec<(f64, f64)> = coords.iter().map(|&(x, y)| (x as f64, y as f64)).collect();
    let mut g = Graph::new(n0);
    for &(u, v) in &edges {
        let mut prev = u;
        for k in 1..=subdivide {
            let w = g.add_vertex();
            let f = k as f64 / (subdivide + 1) as f64;
            let (pu, pv) = (positions[u], positions[v]);
            positions.push((pu.0 + f * (pv.0 - pu.0), pu.1 + f * (pv.1 - pu.1)));
            g.add_edge(prev, w);
            prev = w;
        }
        g.add_edge(prev, v);
    }
    let (perimeter, inner) = faces(&g, &positions);
    let on_perimeter: BTreeSet<usize> = perimeter.iter().copied().collect();
    let bricks = inner
        .into_iter()
        .map(|cycle| {
            let internal = cycle.iter().all(|v| !on_perimeter.contains(v));
            Brick { cycle, internal }
        })
        .collect();
    let rounds = (r - 1) / 2;
    let (layers, removed) = peel(&g, &positions, rounds);
    let in_layer: BTreeSet<usize> = layers.iter().flatten().copied().collect();
    // Branch vertices strictly inside the last layer.
    let central = (0..g.n())
        .filter(|&v| g.degree(v) == 3 && !in_layer.contains(&v))
        .filter(|&v| removed[v].is_none() || removed[v] == Some(rounds - 1))
        .collect();
    let id_of = |p: (usize, usize)| coords.iter().position(|&q| q == p);
    let pegs: Vec<usize> = perimeter.iter().copied().filter(|&v| v < n0 && elementary_degree(&edges, v) == 2).collect();
    let mut pegs = pegs;
    pegs.sort_unstable();
    let mut corners: Vec<usize> = [(1, 1), (2, r), (2 * r - 1, 1), (2 * r, r)].into_iter().filter_map(id_of).collect();
    corners.sort_unstable();
    Ok(Wall { r, subdivide, graph: g, coords, positions, perimeter, bricks, layers, pegs, corners, central })
}

fn elementary_degree(edges: &[(usize, usize)], v: usize) -> usize {
    edges.iter().filter(|&&(a, b)| a == v || b == v).count()
}

/// Peels perimeters: each round records the outer cycle, removes it, and
/// prunes degree-one vertices. Returns the cycles and, for each vertex, the
/// round in which it was removed (`None` if it survives every round).
pub(crate) fn peel(g: &Graph, pos: &[(f64, f64)], rounds: usize) -> (Vec<Vec<usize>>, Vec<Option<usize>>) {
    let mut removed_at: Vec<Option<usize>> = vec![None; g.n()];
    let mut cycles = Vec::new();
    for round in 0..rounds {
        let live: Vec<usize> = (0..g.n()).filter(|&v| removed_at[v].is_none()).collect();
        let sub = g.induced(&live);
        if sub.m() == 0 {
            break;
        }
        let sub_pos: Vec<(f64, f64)> = live.iter().map(|&v| pos[v]).collect();
        let (outer, _) = faces(&sub, &sub_pos);
        let cycle: Vec<usize> = outer.iter().map(|&i| live[i]).collect();
        for &v in &cycle {
            removed_at[v] = Some(round);
        }
        loop {
            let mut changed = false;
            for v in 0..g.n() {
                if removed_at[v].is_some() {
                    continue;
                }
                let deg = g.neighbors(v).iter().filter(|&&u| removed_at[u].is_none()).count();
                if deg <= 1 {
                    removed_at[v] = Some(round);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        cycles.push(cycle);
    }
    (cycles, removed_at)
}

impl Wall {
    pub fn brick_count(&self) -> usize {
        self.bricks.len()
    }

    pub fn internal_brick_count(&self) -> usize {
        self.bricks.iter().filter(|b| b.internal).count()
    }

    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    pub fn meta(&self) -> WallMeta {
        WallMeta {
            r: self.r,
            subdivide: self.subdivide,
            vertices: self.graph.n(),
            edges: self.graph.m(),
            bricks: self.brick_count(),
            internal_bricks: self.internal_brick_count(),
            layers: self.layer_count(),
            pegs: self.pegs.clone(),
            corners: self.corners.clone(),
            central: self.central.clone(),
        }
    }

    /// Vertices of the central `q`-subwall: what remains after peeling
    /// `(r - q) / 2` layers.
    pub fn central_subwall(&self, q: usize) -> Result<Vec<usize>> {
        if q < 3 || q.is_multiple_of(2) || q > self.r {
            return Err(Error::Invalid(format!("subwall height must be odd in 3..={}, got {q}", self.r)));
        }
        let (_, removed) = peel(&self.graph, &self.positions, (self.r - q) / 2);
        Ok((0..self.graph.n()).filter(|&v| removed[v].is_none()).collect())
    }

    /// Checks the structural invariants, returning the first failure.
    pub fn check(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Validation(m));
        let r = self.r;
        if !is_planar(&self.graph) {
            return fail("wall is not planar".into());
        }
        if self.graph.max_degree() > 3 {
            return fail("wall has a vertex of degree above three".into());
        }
        if self.brick_count() != (r - 1) * (r - 1) {
            return fail(format!("{} bricks, expected {}", self.brick_count(), (r - 1) * (r - 1)));
        }
        if self.internal_brick_count() != (r - 3) * (r - 3) {
            return fail(format!("{} internal bricks, expected {}", self.internal_brick_count(), (r - 3) * (r - 3)));
        }
        if self.layer_count() != (r - 1) / 2 {
            return fail(format!("{} layers, expected {}", self.layer_count(), (r - 1) / 2));
        }
        let mut seen = BTreeSet::new();
        for layer in &self.layers {
            if !is_cycle(&self.graph, layer) {
                return fail("a layer is not a cycle".into());
            }
            for &v in layer {
                if !seen.insert(v) {
                    return fail(format!("vertex {v} lies on two layers"));
                }
            }
        }
        if self.layers.first() != Some(&self.perimeter) {
            return fail("first layer differs from the perimeter".into());
        }
        let per: BTreeSet<usize> = self.perimeter.iter().copied().collect();
        if !self.corners.iter().all(|c| self.pegs.contains(c)) || !self.pegs.iter().all(|p| per.contains(p)) {
            return fail("corners, pegs and perimeter are not nested".into());
        }
        if self.central.len() != 2 {
            return fail(format!("{} central vertices, expected 2", self.central.len()));
        }
        for b in &self.bricks {
            if !is_cycle(&self.graph, &b.cycle) {
                return fail("a brick is not a cycle".into());
            }
        }
        // Bricks keep the 3-branch vertices of the elementary wall's bricks.
        let base = gen_wall(r, 0)?;
        let branch = |w: &Wall| -> BTreeSet<Vec<usize>> {
            w.bricks
                .iter()
                .map(|b| {
                    let mut s: Vec<usize> = b.cycle.iter().copied().filter(|&v| w.graph.degree(v) == 3).collect();
                    s.sort_unstable();
                    s
                })
                .collect()
        };
        if branch(self) != branch(&base) {
            return fail("brick branch vertices differ from the elementary wall".into());
        }
        Ok(())
    }
}

/// Whether `cycle` lists the vertices of a cycle of `g` in order.
pub fn is_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 3 {
        return false;
    }
    let distinct: BTreeSet<usize> = cycle.iter().copied().collect();
    distinct.len() == k && (0..k).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % k]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_walls() {
        let w = gen_wall(3, 0).unwrap();
        assert_eq!((w.brick_count(), w.internal_brick_count(), w.layer_count()), (4, 0, 1));
        assert_eq!(w.graph.n(), 2 * 3 * 3 - 2);
        w.check().unwrap();
        let w5 = gen_wall(5, 1).unwrap();
        w5.check().unwrap();
        assert_eq!((w5.brick_count(), w5.layer_count()), (16, 2));
        let w5b = gen_wall(5, 0).unwrap();
        assert_eq!(w5.graph.m(), 2 * w5b.graph.m());
    }

    #[test]
    fn rejects_even_height() {
        assert!(gen_wall(4, 0).is_err());
        assert!(gen_wall(1, 0).is_err());
    }

    #[test]
    fn layers_disjoint_r7() {
        let w = gen_wall(7, 0).unwrap();
        let mut all = BTreeSet::new();
        for l in &w.layers {
            for &v in l {
                assert!(all.insert(v));
            }
        }
        assert_eq!(w.layers.len(), 3);
    }
}
