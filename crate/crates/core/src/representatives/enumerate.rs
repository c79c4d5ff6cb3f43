//! Exhaustive enumeration of boundaried graphs up to boundary-fixing
//! isomorphism, one internal vertex at a time.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::canon::{canonical_graph, CanonicalForm, MAX_CANON_VERTICES};
use crate::containment::is_f_minor_free;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::graph::{BoundariedGraph, Graph};

/// Default bound on the enumeration work estimate.
pub const DEFAULT_WORK_CAP: u128 = 400_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumerated {
    pub graph: BoundariedGraph,
    pub dead: bool,
}

/// Canonical forms of one level (fixed number of internal vertices).
#[derive(Clone, Debug, Default)]
pub struct Level {
    pub internal: usize,
    pub forms: Vec<CanonicalForm>,
    pub dead: Vec<bool>,
}

fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut r = 1u128;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Rough count of augmentation steps: unlabelled graphs at each level
/// (labelled count over internal permutations) times neighbourhood choices.
pub fn enumeration_estimate(t: usize, n_max: usize, m_max: usize) -> u128 {
    let mut work = 0u128;
    let mut fact = 1u128;
    for n in t..n_max {
        let k = n - t;
        if k > 0 {
            fact = fact.saturating_mul(k as u128);
        }
        let pairs = (n * n.saturating_sub(1) / 2) as u128;
        let labelled: u128 = (0..=m_max.min(pairs as usize)).map(|e| binom(pairs, e as u128)).fold(0, u128::saturating_add);
        let level = labelled / fact + 1;
        work = work.saturating_add(level.saturating_mul(1u128 << n.min(100)));
    }
    work
}

/// All boundaried graphs with boundary `0..t`, at most `n_max` vertices and
/// at most `m_max` edges, grouped by number of internal vertices.
///
/// With `family`, graphs containing a member as a minor are tagged dead and
/// not extended further (every extension is dead as well).
pub fn enumerate_levels(t: usize, n_max: usize, m_max: usize, family: Option<&Family>) -> Result<Vec<Level>> {
    let est = enumeration_estimate(t, n_max, m_max);
    if est > DEFAULT_WORK_CAP {
        return Err(Error::Budget(format!(
            "enumeration (t={t}, n_max={n_max}, m_max={m_max}) estimated at {est} steps (cap {DEFAULT_WORK_CAP})"
        )));
    }
    if n_max < t {
        return Ok(Vec::new());
    }
    let pairs: Vec<(usize, usize)> = (0..t).flat_map(|u| (u + 1..t).map(move |v| (u, v))).collect();
    let mut base = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        if mask.count_ones() as usize > m_max {
            continue;
        }
        let edges: Vec<(usize, usize)> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        base.push(BoundariedGraph::from_edges(t, 0, &edges)?);
    }
    let mut levels = vec![finish_level(0, base.into_iter().map(|g| (g, false)).collect(), family)?];
    while t + levels.len() <= n_max {
        let prev = levels.last().unwrap();
        let k = prev.internal;
        let parents: Vec<(usize, bool)> = (0..prev.forms.len()).map(|i| (i, prev.dead[i])).collect();
        let children: Vec<HashMap<CanonicalForm, bool>> = parents
            .par_chunks(256)
            .map(|chunk| {
                let mut local: HashMap<CanonicalForm, bool> = HashMap::new();
                for &(i, dead) in chunk {
                    if dead && family.is_some() {
                        continue;
                    }
                    let g = prev.forms[i].decode().expect("stored forms decode");
                    let n = g.n();
                    let room = m_max - g.m();
                    for mask in 0u64..(1u64 << n) {
                        if mask.count_ones() as usize > room {
                            continue;
                        }
                        let mut h: Graph = g.graph().clone();
                        let x = h.add_vertex();
                        for v in 0..n {
                            if mask >> v & 1 == 1 {
                                h.add_edge(x, v);
                            }
                        }
                        let hb = BoundariedGraph::new(h, (0..t).collect()).unwrap();
                        let (_, f) = canonical_graph(&hb, MAX_CANON_VERTICES).expect("within canonical limits");
                        local.entry(f).or_insert(dead);
                    }
                }
                local
            })
            .collect();
        let mut merged: HashMap<CanonicalForm, bool> = HashMap::new();
        for part in children {
            for (f, d) in part {
                merged.entry(f).or_insert(d);
            }
        }
        let next: Vec<(BoundariedGraph, bool)> =
            merged.into_iter().map(|(f, d)| (f.decode().expect("forms decode"), d)).collect();
        let level = finish_level(k + 1, next, family)?;
        if level.forms.is_empty() {
            break;
        }
        levels.push(level);
    }
    Ok(levels)
}

fn finish_level(internal: usize, graphs: Vec<(BoundariedGraph, bool)>, family: Option<&Family>) -> Result<Level> {
    let tagged: Vec<(CanonicalForm, bool)> = graphs
        .into_par_iter()
        .map(|(g, dead)| {
            let f = canonical_graph(&g, MAX_CANON_VERTICES)?.1;
            let dead = match family {
                Some(fam) => dead || !is_f_minor_free(g.graph(), fam.patterns())?,
                None => false,
            };
            Ok((f, dead))
        })
        .collect::<Result<_>>()?;
    let mut tagged = tagged;
    tagged.sort_by(|a, b| a.0.cmp(&b.0));
    let (forms, dead) = tagged.into_iter().unzip();
    Ok(Level { internal, forms, dead })
}

/// Flattened form of [`enumerate_levels`] with decoded graphs.
pub fn enumerate_boundaried(t: usize, n_max: usize, m_max: usize, family: Option<&Family>) -> Result<Vec<Enumerated>> {
    let mut out = Vec::new();
    for level in enumerate_levels(t, n_max, m_max, family)? {
        for (f, dead) in level.forms.iter().zip(level.dead) {
            out.push(Enumerated { graph: f.decode()?, dead });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_enumerations() {
        let e = enumerate_boundaried(0, 1, 0, None).unwrap();
        assert_eq!(e.len(), 2);
        let e = enumerate_boundaried(1, 2, 1, None).unwrap();
        assert_eq!(e.len(), 3);
        let e = enumerate_boundaried(2, 2, 1, Some(&Family::vertex_cover())).unwrap();
        assert_eq!(e.len(), 2);
        let dead: Vec<_> = e.iter().filter(|x| x.dead).collect();
        assert_eq!(dead.len(), 1);
        assert_eq!(dead[0].graph.m(), 1);
    }

    #[test]
    fn unlabelled_graph_counts() {
        // graphs on n vertices: 1, 1, 2, 4, 11, 34, 156
        let levels = enumerate_levels(0, 6, 15, None).unwrap();
        let counts: Vec<usize> = levels.iter().map(|l| l.forms.len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn forests_only_survive_fvs_pruning() {
        // unlabelled forests on n vertices: 1, 1, 2, 3, 6, 10
        let levels = enumerate_levels(0, 5, 10, Some(&Family::feedback_vertex_set())).unwrap();
        let live: Vec<usize> = levels.iter().map(|l| l.dead.iter().filter(|d| !**d).count()).collect();
        assert_eq!(live, vec![1, 1, 2, 3, 6, 10]);
    }

    #[test]
    fn estimate_guards_huge_requests() {
        assert!(matches!(enumerate_levels(4, 14, 40, None), Err(Error::Budget(_))));
    }
}
