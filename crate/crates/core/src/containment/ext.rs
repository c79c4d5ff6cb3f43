//! The set of topological-minor-minimal boundaried graphs that contain a
//! given boundaried graph as a minor.

use std::collections::{HashMap, VecDeque};

use crate::canon::{canonical_form_with_cap, CanonicalForm, MAX_CANON_VERTICES};
use crate::containment::tm::has_btm;
use crate::error::{Error, Result};
use crate::graph::{BoundariedGraph, Graph};

/// Default detail limit for [`ext`]. Large enough for `K5`.
pub const DEFAULT_EXT_DETAIL_CAP: usize = 10;

pub fn ext(h: &BoundariedGraph) -> Result<Vec<BoundariedGraph>> {
    ext_with_cap(h, DEFAULT_EXT_DETAIL_CAP)
}

/// Candidates are generated from `h` by repeatedly splitting a vertex `v`
/// into two adjacent vertices `v` and `x` that share out its neighbours;
/// internal `v` keeps at least two of them and `x` always takes at least two.
/// The minimal candidates (none contains another as a topological minor)
/// are returned sorted by canonical form.
pub fn ext_with_cap(h: &BoundariedGraph, cap: usize) -> Result<Vec<BoundariedGraph>> {
    if h.detail() > cap {
        return Err(Error::Budget(format!("ext input has detail {} (cap {cap})", h.detail())));
    }
    let bound = 3 * h.detail();
    let form = |g: &BoundariedGraph| canonical_form_with_cap(g, MAX_CANON_VERTICES);
    let start = h.normalized();
    let mut found: HashMap<CanonicalForm, BoundariedGraph> = HashMap::new();
    found.insert(form(&start)?, start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(g) = queue.pop_front() {
        for split in splits(&g) {
            if split.detail() > bound || split.n() > MAX_CANON_VERTICES {
                continue;
            }
            let f = form(&split)?;
            if let std::collections::hash_map::Entry::Vacant(e) = found.entry(f) {
                e.insert(split.clone());
                queue.push_back(split);
            }
        }
    }
    let mut candidates: Vec<(CanonicalForm, BoundariedGraph)> = found.into_iter().collect();
    candidates.sort_by(|a, b| (a.1.n(), a.1.m(), &a.0).cmp(&(b.1.n(), b.1.m(), &b.0)));
    let mut minimal: Vec<(CanonicalForm, BoundariedGraph)> = Vec::new();
    for (f, g) in candidates {
        let mut dominated = false;
        for (_, smaller) in &minimal {
            if has_btm(&g, smaller)? {
                dominated = true;
                break;
            }
        }
        if !dominated {
            minimal.push((f, g));
        }
    }
    minimal.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(minimal.into_iter().map(|(_, g)| g).collect())
}

fn splits(g: &BoundariedGraph) -> Vec<BoundariedGraph> {
    let mut out = Vec::new();
    for v in 0..g.n() {
        let nb = g.graph().neighbors(v).to_vec();
        let d = nb.len();
        let boundary = g.is_boundary(v);
        if d < 2 || (!boundary && d < 4) || d > 20 {
            continue;
        }
        for mask in 0u32..(1 << d) {
            let moved = mask.count_ones() as usize;
            if moved < 2 || (!boundary && d - moved < 2) {
                continue;
            }
            let mut graph: Graph = g.graph().clone();
            let x = graph.add_vertex();
            graph.add_edge(v, x);
            for (i, &w) in nb.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    graph.remove_edge(v, w);
                    graph.add_edge(x, w);
                }
            }
            out.push(BoundariedGraph::new(graph, g.boundary().to_vec()).unwrap());
        }
    }
    out
}
