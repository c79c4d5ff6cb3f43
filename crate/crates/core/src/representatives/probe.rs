//! Empirical check of whether two boundaried graphs behave the same under
//! gluing, with respect to containing a family member as a minor.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::containment::has_minor;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::graph::{BoundariedGraph, Graph};
use crate::representatives::enumerate::enumerate_levels;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProbeConfig {
    /// Number of random partners; zero means every partner within the cap.
    pub bank_size: usize,
    /// Largest number of internal vertices of a partner.
    pub bank_cap: usize,
    pub seed: u64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig { bank_size: 50, bank_cap: 5, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Gluing `partner` makes `family[pattern]` a minor on exactly one side.
    Distinguished { partner: BoundariedGraph, pattern: usize },
    /// No tested partner separates the graphs. This is not a proof of
    /// equivalence.
    IndistinguishableAtCap { partners: usize },
}

/// Gluing partners compatible with `template` (same boundary graph).
pub fn partner_bank(template: &BoundariedGraph, cfg: &ProbeConfig) -> Result<Vec<BoundariedGraph>> {
    let t = template.t();
    let bedges = template.boundary_edges();
    let mut bank = vec![BoundariedGraph::from_edges(t, 0, &bedges)?];
    if cfg.bank_size == 0 {
        let all_pairs = (t + cfg.bank_cap) * (t + cfg.bank_cap).saturating_sub(1) / 2;
        for level in enumerate_levels(t, t + cfg.bank_cap, all_pairs, None)?.iter().skip(1) {
            for f in &level.forms {
                let g = f.decode()?;
                if g.boundary_edges() == bedges {
                    bank.push(g);
                }
            }
        }
        return Ok(bank);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    while bank.len() < cfg.bank_size {
        let k = rng.gen_range(1..=cfg.bank_cap.max(1));
        let p: f64 = rng.gen_range(0.05..0.6);
        let n = t + k;
        let mut g = Graph::new(n);
        for &(i, j) in &bedges {
            g.add_edge(i, j);
        }
        for v in t..n {
            for u in 0..v {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        bank.push(BoundariedGraph::new(g, (0..t).collect())?);
    }
    Ok(bank)
}

/// Glues the partner onto `g1` and `g2` and compares minor containment.
///
/// Gluing here is the plain union with boundary identification, so the two
/// graphs need not agree on their boundary edges; partners carry only the
/// boundary edges common to both.
pub fn probe_equivalence(g1: &BoundariedGraph, g2: &BoundariedGraph, family: &Family, cfg: &ProbeConfig) -> Result<Verdict> {
    if g1.t() != g2.t() {
        return Err(Error::Incompatible(format!("boundary sizes differ ({} vs {})", g1.t(), g2.t())));
    }
    let common: Vec<(usize, usize)> =
        g1.boundary_edges().into_iter().filter(|e| g2.boundary_edges().contains(e)).collect();
    let template = BoundariedGraph::from_edges(g1.t(), 0, &common)?;
    let bank = partner_bank(&template, cfg)?;
    probe_with_bank(g1, g2, family, &bank)
}

/// Same as [`probe_equivalence`] with a caller-supplied partner bank.
pub fn probe_with_bank(
    g1: &BoundariedGraph,
    g2: &BoundariedGraph,
    family: &Family,
    bank: &[BoundariedGraph],
) -> Result<Verdict> {
    for k in bank {
        let a = union_glue(k, g1)?;
        let b = union_glue(k, g2)?;
        for (i, h) in family.patterns().iter().enumerate() {
            if has_minor(&a, h)? != has_minor(&b, h)? {
                return Ok(Verdict::Distinguished { partner: k.clone(), pattern: i });
            }
        }
    }
    Ok(Verdict::IndistinguishableAtCap { partners: bank.len() })
}

/// Union of two boundaried graphs with boundary positions identified; for
/// compatible inputs this is the ordinary glue.
pub fn union_glue(a: &BoundariedGraph, b: &BoundariedGraph) -> Result<Graph> {
    if a.t() != b.t() {
        return Err(Error::Incompatible(format!("boundary sizes differ ({} vs {})", a.t(), b.t())));
    }
    let mut g = a.graph().clone();
    let mut map = vec![0usize; b.n()];
    for (v, slot) in map.iter_mut().enumerate() {
        *slot = match b.position(v) {
            Some(p) => a.boundary()[p],
            None => g.add_vertex(),
        };
    }
    for (u, v) in b.graph().edges() {
        g.add_edge(map[u], map[v]);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(k: usize) -> BoundariedGraph {
        let mut edges = Vec::new();
        let mut prev = 0;
        for i in 0..k {
            edges.push((prev, 2 + i));
            prev = 2 + i;
        }
        edges.push((prev, 1));
        BoundariedGraph::from_edges(2, k, &edges).unwrap()
    }

    #[test]
    fn identical_graphs_are_indistinguishable() {
        let g = path(2);
        let v = probe_equivalence(&g, &g, &Family::feedback_vertex_set(), &ProbeConfig::default()).unwrap();
        assert!(matches!(v, Verdict::IndistinguishableAtCap { .. }));
    }

    #[test]
    fn edge_versus_non_edge() {
        let e = BoundariedGraph::from_edges(2, 0, &[(0, 1)]).unwrap();
        let none = BoundariedGraph::from_edges(2, 0, &[]).unwrap();
        let k = path(1);
        assert!(has_minor(&union_glue(&k, &e).unwrap(), &Graph::complete(3)).unwrap());
        assert!(!has_minor(&union_glue(&k, &none).unwrap(), &Graph::complete(3)).unwrap());
        let cfg = ProbeConfig { bank_size: 0, bank_cap: 1, seed: 0 };
        match probe_equivalence(&e, &none, &Family::feedback_vertex_set(), &cfg).unwrap() {
            Verdict::Distinguished { partner, .. } => {
                assert_eq!(partner.canonical_form().unwrap(), k.canonical_form().unwrap())
            }
            other => panic!("expected a distinguishing partner, got {other:?}"),
        }
    }

    #[test]
    fn edge_is_distinguished_from_nothing_by_a_path() {
        // compare b1 - b2 realised through an internal vertex with no connection
        let p = path(1);
        let none = BoundariedGraph::from_edges(2, 1, &[]).unwrap();
        let v = probe_equivalence(&p, &none, &Family::feedback_vertex_set(), &ProbeConfig::default()).unwrap();
        match v {
            Verdict::Distinguished { partner, pattern } => {
                assert_eq!(pattern, 0);
                assert!(has_minor(&partner.glue(&p).unwrap(), &Graph::complete(3)).unwrap());
            }
            other => panic!("expected a distinguishing partner, got {other:?}"),
        }
    }

    #[test]
    fn long_paths_indistinguishable_exhaustively() {
        let cfg = ProbeConfig { bank_size: 0, bank_cap: 4, seed: 0 };
        let v = probe_equivalence(&path(3), &path(5), &Family::feedback_vertex_set(), &cfg).unwrap();
        assert!(matches!(v, Verdict::IndistinguishableAtCap { .. }));
    }
}
