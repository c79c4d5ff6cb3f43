//! Railed annuli inside walls.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

use super::wall::{is_cycle, peel, Wall};

pub const DEFAULT_Z: usize = 3;

/// Nested cycles `C_1..C_x` (outermost first) crossed by disjoint rails.
#[derive(Clone, Debug, Serialize)]
pub struct RailedAnnulus {
    pub cycles: Vec<Vec<usize>>,
    pub rails: Vec<Vec<usize>>,
}

fn odd_ceil_quarter(quarters: usize) -> usize {
    let v = quarters.div_ceil(4);
    if v.is_multiple_of(2) {
        v + 1
    } else {
        v
    }
}

/// Smallest wall height for which an `(x, y)`-railed annulus is
/// guaranteed: `odd(2x + max(z, y/4 - 1))`.
pub fn required_height(x: usize, y: usize, z: usize) -> usize {
    let quarters = 8 * x + (4 * z).max(y.saturating_sub(4));
    odd_ceil_quarter(quarters)
}

/// Vertical and horizontal paths of the elementary wall, mapped into the
/// subdivided wall as vertex sequences.
fn wall_paths(w: &Wall) -> Vec<Vec<usize>> {
    let r = w.r;
    let id = |p: (usize, usize)| w.coords.iter().position(|&q| q == p);
    let mut out = Vec::new();
    for i in (1..2 * r).step_by(2) {
        let mut pts = vec![(i, 1)];
        for y in 2..r {
            if y % 2 == 0 {
                pts.extend([(i, y), (i + 1, y)]);
            } else {
                pts.extend([(i + 1, y), (i, y)]);
            }
        }
        pts.push((i + 1, r));
        out.push(pts);
    }
    for j in 2..r {
        out.push((1..=2 * r).map(|x| (x, j)).collect());
    }
    out.into_iter()
        .filter_map(|pts| {
            let ids: Vec<usize> = pts.iter().filter_map(|&p| id(p)).collect();
            expand(w, &ids)
        })
        .collect()
}

/// Replaces each elementary edge of a path by its subdivision path.
fn expand(w: &Wall, ids: &[usize]) -> Option<Vec<usize>> {
    let g = &w.graph;
    let mut out = vec![*ids.first()?];
    for win in ids.windows(2) {
        let (a, b) = (win[0], win[1]);
        // Walk from a towards b through subdivision vertices.
        let n0 = w.coords.len();
        let mut found = None;
        for &s in g.neighbors(a) {
            let mut seg = vec![s];
            let (mut prev, mut cur) = (a, s);
            while cur >= n0 {
                let next = *g.neighbors(cur).iter().find(|&&x| x != prev)?;
                prev = cur;
                cur = next;
                seg.push(cur);
            }
            if cur == b {
                found = Some(seg);
                break;
            }
        }
        out.extend(found?);
    }
    Some(out)
}

/// Builds an `(x, y)`-railed annulus whose cycles are the first `x` layers
/// of `w`, with central subwall height `z`.
pub fn railed_annulus(w: &Wall, x: usize, y: usize) -> Result<RailedAnnulus> {
    railed_annulus_with_z(w, x, y, DEFAULT_Z)
}

pub fn railed_annulus_with_z(w: &Wall, x: usize, y: usize, z: usize) -> Result<RailedAnnulus> {
    if x < 3 || x.is_multiple_of(2) || z < 3 || z.is_multiple_of(2) {
        return Err(Error::Invalid(format!("x and z must be odd and at least 3, got x={x}, z={z}")));
    }
    if y < 1 {
        return Err(Error::Invalid("y must be at least 1".into()));
    }
    let need = required_height(x, y, z);
    if w.r < need {
        return Err(Error::Invalid(format!(
            "wall height {} is below the required odd(2x + max(z, y/4 - 1)) = {need}",
            w.r
        )));
    }
    let cycles: Vec<Vec<usize>> = w.layers.iter().take(x).cloned().collect();
    if cycles.len() < x {
        return Err(Error::Invalid(format!("wall has only {} layers", w.layers.len())));
    }
    let (_, removed) = peel(&w.graph, &w.positions, x);
    let inner_cycle: BTreeSet<usize> = cycles[x - 1].iter().copied().collect();
    let outer: BTreeSet<usize> = cycles[0].iter().copied().collect();
    // Candidate rails: each wall path, from either end, cut at the first
    // vertex of C_x after leaving C_1.
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for p in wall_paths(w) {
        for dir in [false, true] {
            let seq: Vec<usize> = if dir { p.iter().rev().copied().collect() } else { p.clone() };
            if !outer.contains(&seq[0]) {
                continue;
            }
            // Start at the last vertex of the initial run on C_1.
            let start = seq.iter().take_while(|v| outer.contains(v)).count() - 1;
            let Some(end) = seq[start..].iter().position(|v| inner_cycle.contains(v)) else { continue };
            let rail = seq[start..=start + end].to_vec();
            if audit_rail(w, &cycles, &removed, x, &rail).is_ok() {
                candidates.push(rail);
            }
        }
    }
    candidates.sort_by_key(|c| (c.len(), c.clone()));
    let mut used = BTreeSet::new();
    let mut rails = Vec::new();
    for c in candidates {
        if rails.len() == y {
            break;
        }
        if c.iter().all(|v| !used.contains(v)) {
            used.extend(c.iter().copied());
            rails.push(c);
        }
    }
    if rails.len() < y {
        return Err(Error::Validation(format!("found only {} disjoint rails, need {y}", rails.len())));
    }
    let ann = RailedAnnulus { cycles, rails };
    ann.audit(w, z)?;
    Ok(ann)
}

/// A rail lies in the annulus and meets every cycle in a nonempty path.
fn audit_rail(w: &Wall, cycles: &[Vec<usize>], removed: &[Option<usize>], x: usize, rail: &[usize]) -> Result<()> {
    let g = &w.graph;
    for win in rail.windows(2) {
        if !g.has_edge(win[0], win[1]) {
            return Err(Error::Validation("rail is not a path".into()));
        }
    }
    let distinct: BTreeSet<usize> = rail.iter().copied().collect();
    if distinct.len() != rail.len() {
        return Err(Error::Validation("rail repeats a vertex".into()));
    }
    // Strictly inside C_x: survives x peels, or pruned during the last one
    // without lying on C_x.
    let on_cx: BTreeSet<usize> = cycles[x - 1].iter().copied().collect();
    if rail.iter().any(|&v| removed[v].is_none() || (removed[v] == Some(x - 1) && !on_cx.contains(&v))) {
        return Err(Error::Validation("rail leaves the annulus".into()));
    }
    for (i, c) in cycles.iter().enumerate() {
        let on: BTreeSet<usize> = c.iter().copied().collect();
        let idx: Vec<usize> = (0..rail.len()).filter(|&k| on.contains(&rail[k])).collect();
        if idx.is_empty() {
            return Err(Error::Validation(format!("rail misses cycle {}", i + 1)));
        }
        if idx.windows(2).any(|p| p[1] != p[0] + 1) {
            return Err(Error::Validation(format!("rail meets cycle {} in a disconnected set", i + 1)));
        }
        let k = c.len();
        let cyc_edge = |a: usize, b: usize| {
            (0..k).any(|j| (c[j] == a && c[(j + 1) % k] == b) || (c[j] == b && c[(j + 1) % k] == a))
        };
        if idx.windows(2).any(|p| !cyc_edge(rail[p[0]], rail[p[1]])) {
            return Err(Error::Validation(format!("rail uses a chord of cycle {}", i + 1)));
        }
    }
    Ok(())
}

impl RailedAnnulus {
    /// Full invariant audit: cycles nested layers starting at the
    /// perimeter, rails pairwise disjoint, every `C_i ∩ P_j` a nonempty path,
    /// and the central `z`-subwall strictly inside the last cycle.
    pub fn audit(&self, w: &Wall, z: usize) -> Result<()> {
        let x = self.cycles.len();
        let fail = |m: &str| Err(Error::Validation(m.into()));
        if x < 3 || self.cycles[0] != w.perimeter {
            return fail("first cycle must be the wall perimeter");
        }
        let mut seen = BTreeSet::new();
        for c in &self.cycles {
            if !is_cycle(&w.graph, c) {
                return fail("annulus cycle is not a cycle");
            }
            if !c.iter().all(|&v| seen.insert(v)) {
                return fail("annulus cycles intersect");
            }
        }
        // Nesting: after i peels the next outer cycle is C_{i+1}.
        let (peeled, removed) = peel(&w.graph, &w.positions, x);
        if peeled != self.cycles {
            return fail("cycles are not the nested layers of the wall");
        }
        let mut used = BTreeSet::new();
        for rail in &self.rails {
            audit_rail(w, &self.cycles, &removed, x, rail)?;
            if !rail.iter().all(|&v| used.insert(v)) {
                return fail("rails intersect");
            }
        }
        let on_cx: BTreeSet<usize> = self.cycles[x - 1].iter().copied().collect();
        for v in w.central_subwall(z)? {
            let inside = removed[v].is_none() || (removed[v] == Some(x - 1) && !on_cx.contains(&v));
            if !inside {
                return fail("central subwall is not inside the last cycle");
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::gen_wall;

    #[test]
    fn required_heights() {
        assert_eq!(required_height(3, 8, 3), 9);
        assert_eq!(required_height(3, 20, 3), 11);
        assert_eq!(required_height(5, 8, 3), 13);
    }

    #[test]
    fn three_by_eight() {
        let w = gen_wall(required_height(3, 8, 3), 0).unwrap();
        let a = railed_annulus(&w, 3, 8).unwrap();
        assert_eq!(a.cycles.len(), 3);
        assert_eq!(a.rails.len(), 8);
    }

    #[test]
    fn rejects_bad_parameters() {
        let w = gen_wall(9, 0).unwrap();
        assert!(railed_annulus(&w, 1, 4).is_err());
        assert!(railed_annulus(&w, 5, 8).is_err());
    }
}
