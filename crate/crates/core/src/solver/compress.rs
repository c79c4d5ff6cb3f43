//! State compression: replace a state graph by the representative of its
//! folio class.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::canon::{canonical_graph, CanonicalForm, DEFAULT_CANON_CAP};
use crate::containment::is_f_minor_free;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::folio::universe::check_feasible;
use crate::folio::{FolioSignature, UniverseLimits};
use crate::graph::{BoundariedGraph, Graph};
use crate::representatives::{Caps, RepEntry, RepresentativeTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Compression {
    /// Folio-class representatives, with sound local reductions when the
    /// pattern universe for the boundary size is out of range.
    Folio,
    /// States keyed by the canonical state graph only.
    Off,
}

/// Identity of a state graph up to isomorphism fixing the boundary.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StateKey {
    Canon(CanonicalForm),
    /// Inline encoding, used when the graph exceeds the canonicalization cap.
    Raw(String),
}

/// A live compressed state graph.
#[derive(Clone, Debug)]
pub struct Compressed {
    pub graph: BoundariedGraph,
    pub key: StateKey,
    /// Sorted folio members, when the class is known.
    pub members: Option<Arc<Vec<usize>>>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CompressStats {
    pub compress_calls: u64,
    pub compress_hits: u64,
    pub table_inserts: u64,
    pub dead: u64,
    pub fallback: u64,
}

pub struct Compressor {
    family: Family,
    d: usize,
    mode: Compression,
    canon_cap: usize,
    limits: UniverseLimits,
    min_degree: usize,
    connected: bool,
    tables: BTreeMap<usize, RepresentativeTable>,
    cache: HashMap<StateKey, Option<Compressed>>,
    pub stats: CompressStats,
}

impl Compressor {
    pub fn new(family: &Family, d: usize, mode: Compression) -> Self {
        let min_degree = family.patterns().iter().map(Graph::min_degree).min().unwrap_or(0);
        let connected = family.patterns().iter().all(Graph::is_connected);
        Compressor {
            family: family.clone(),
            d,
            mode,
            canon_cap: DEFAULT_CANON_CAP,
            limits: UniverseLimits::default(),
            min_degree,
            connected,
            tables: BTreeMap::new(),
            cache: HashMap::new(),
            stats: CompressStats::default(),
        }
    }

    pub fn with_canon_cap(mut self, cap: usize) -> Self {
        self.canon_cap = cap;
        self
    }

    /// Narrows the boundary sizes that get folio compression.
    pub fn with_limits(mut self, limits: UniverseLimits) -> Self {
        self.limits = limits;
        self
    }

    /// Seeds the online table for one boundary size with a prebuilt table.
    pub fn with_table(mut self, table: RepresentativeTable) -> Self {
        self.tables.insert(table.t(), table);
        self
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn mode(&self) -> Compression {
        self.mode
    }

    pub fn tables(&self) -> impl Iterator<Item = &RepresentativeTable> {
        self.tables.values()
    }

    /// Whether states with `t` boundary vertices get folio compression.
    pub fn folio_feasible(&self, t: usize) -> bool {
        self.mode == Compression::Folio && check_feasible(t, self.d, &self.limits).is_ok()
    }

    /// `None` when the graph contains a forbidden minor.
    pub fn compress(&mut self, g: &BoundariedGraph) -> Result<Option<Compressed>> {
        self.stats.compress_calls += 1;
        let g = match self.mode {
            Compression::Folio => self.reduce(g),
            Compression::Off => g.clone(),
        };
        let (cg, key) = key_of(&g, self.canon_cap)?;
        if let Some(hit) = self.cache.get(&key) {
            self.stats.compress_hits += 1;
            return Ok(hit.clone());
        }
        let out = self.compress_miss(cg, key.clone())?;
        if out.is_none() {
            self.stats.dead += 1;
        }
        if let Some(c) = &out {
            self.cache.entry(c.key.clone()).or_insert_with(|| Some(c.clone()));
        }
        self.cache.insert(key, out.clone());
        Ok(out)
    }

    fn compress_miss(&mut self, cg: BoundariedGraph, key: StateKey) -> Result<Option<Compressed>> {
        if !is_f_minor_free(cg.graph(), self.family.patterns())? {
            return Ok(None);
        }
        let t = cg.t();
        if !self.folio_feasible(t) || matches!(key, StateKey::Raw(_)) {
            if self.mode == Compression::Folio {
                self.stats.fallback += 1;
            }
            return Ok(Some(Compressed { graph: cg, key, members: None }));
        }
        let (family, d, cap) = (self.family.clone(), self.d, self.canon_cap);
        let table = self
            .tables
            .entry(t)
            .or_insert_with(|| RepresentativeTable::new(t, d, family, Caps { n_max: 0, m_max: 0 }));
        let (sig, members) = table.classify(&cg)?;
        debug_assert!(!sig.is_dead());
        if let Some(e) = table.get(&sig) {
            if e.members != members {
                return Err(Error::Validation(format!("digest collision on signature {sig}")));
            }
            let rep = e.rep.clone();
            let (rep, rkey) = key_of(&rep, cap)?;
            return Ok(Some(Compressed { graph: rep, key: rkey, members: Some(Arc::new(members)) }));
        }
        let shrunk = shrink(table, &cg, &sig)?;
        let (rep, rkey) = key_of(&shrunk, cap)?;
        let n = cg.n();
        table.insert(sig, RepEntry { members: members.clone(), rep: rep.clone(), population: 0, max_member_n: n });
        self.stats.table_inserts += 1;
        Ok(Some(Compressed { graph: rep, key: rkey, members: Some(Arc::new(members)) }))
    }

    /// Local reductions that preserve minor containment after any gluing:
    /// internal vertices of degree below the family's minimum degree are
    /// removed (degree two is suppressed when every pattern has minimum
    /// degree three), as are boundary-free components when every pattern is
    /// connected. The caller has not yet checked the graph for minors, so
    /// removed components are only those that are themselves minor-free.
    pub fn reduce(&self, g: &BoundariedGraph) -> BoundariedGraph {
        let mut graph = g.graph().clone();
        let boundary = g.boundary().to_vec();
        let mut is_b = vec![false; graph.n()];
        for &b in &boundary {
            is_b[b] = true;
        }
        let mut removed = vec![false; graph.n()];
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..graph.n() {
                if removed[v] || is_b[v] {
                    continue;
                }
                let deg = graph.degree(v);
                let drop = (deg == 0 && self.min_degree >= 1) || (deg == 1 && self.min_degree >= 2);
                if drop {
                    for u in graph.neighbors(v).to_vec() {
                        graph.remove_edge(u, v);
                    }
                    removed[v] = true;
                    changed = true;
                } else if deg == 2 && self.min_degree >= 3 {
                    let (a, b) = (graph.neighbors(v)[0], graph.neighbors(v)[1]);
                    graph.remove_edge(v, a);
                    graph.remove_edge(v, b);
                    graph.add_edge(a, b);
                    removed[v] = true;
                    changed = true;
                }
            }
        }
        if self.connected {
            let live: Vec<usize> = (0..graph.n()).filter(|&v| !removed[v]).collect();
            let sub = graph.induced(&live);
            for comp in sub.components() {
                if comp.iter().any(|&i| is_b[live[i]]) {
                    continue;
                }
                let cg = sub.induced(&comp);
                if is_f_minor_free(&cg, self.family.patterns()).unwrap_or(false) {
                    for &i in &comp {
                        removed[live[i]] = true;
                    }
                }
            }
        }
        if !removed.iter().any(|&r| r) {
            return g.clone();
        }
        let keep: Vec<usize> = (0..graph.n()).filter(|&v| !removed[v]).collect();
        let mut index = vec![usize::MAX; graph.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let h = graph.induced(&keep);
        BoundariedGraph::new(h, boundary.iter().map(|&b| index[b]).collect()).expect("boundary survives reduction")
    }
}

fn key_of(g: &BoundariedGraph, cap: usize) -> Result<(BoundariedGraph, StateKey)> {
    match canonical_graph(g, cap) {
        Ok((cg, form)) => Ok((cg, StateKey::Canon(form))),
        Err(Error::CanonicalizationTooLarge { .. }) => Ok((g.clone(), StateKey::Raw(g.to_inline()))),
        Err(e) => Err(e),
    }
}

/// Greedily removes vertices and edges while the signature is unchanged.
fn shrink(table: &RepresentativeTable, g: &BoundariedGraph, sig: &FolioSignature) -> Result<BoundariedGraph> {
    let mut cur = g.clone();
    'outer: loop {
        for cand in shrink_moves(&cur) {
            if table.classify(&cand)?.0 == *sig {
                cur = cand;
                continue 'outer;
            }
        }
        return Ok(cur);
    }
}

/// Candidate one-step reductions, vertex-removing moves first.
fn shrink_moves(g: &BoundariedGraph) -> Vec<BoundariedGraph> {
    let mut out = Vec::new();
    let internal = g.internal_vertices();
    for &v in &internal {
        let mut removed = vec![false; g.n()];
        removed[v] = true;
        out.push(crate::folio::universe::delete_vertices(g, &removed));
    }
    for (u, v) in g.graph().edges() {
        let (keep, gone) = match (g.is_boundary(u), g.is_boundary(v)) {
            (true, true) => continue,
            (false, _) => (v, u),
            (true, false) => (u, v),
        };
        let mut h = g.graph().clone();
        for w in g.graph().neighbors(gone).to_vec() {
            h.remove_edge(gone, w);
            if w != keep {
                h.add_edge(keep, w);
            }
        }
        let mut removed = vec![false; g.n()];
        removed[gone] = true;
        let bg = BoundariedGraph::new(h, g.boundary().to_vec()).expect("boundary unchanged");
        out.push(crate::folio::universe::delete_vertices(&bg, &removed));
    }
    for (u, v) in g.graph().edges() {
        if g.is_boundary(u) && g.is_boundary(v) {
            continue;
        }
        let mut h = g.graph().clone();
        h.remove_edge(u, v);
        out.push(BoundariedGraph::new(h, g.boundary().to_vec()).expect("boundary unchanged"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn long_path_maps_to_short_path() {
        let fam = Family::feedback_vertex_set();
        let mut c = Compressor::new(&fam, 3, Compression::Folio);
        let long = BoundariedGraph::from_edges(2, 5, &[(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)]).unwrap();
        let short = BoundariedGraph::from_edges(2, 3, &[(0, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let a = c.compress(&long).unwrap().unwrap();
        let b = c.compress(&short).unwrap().unwrap();
        assert_eq!(a.key, b.key);
        assert!(a.graph.n() <= 5);
    }

    #[test]
    fn triangle_is_dead() {
        let fam = Family::feedback_vertex_set();
        let mut c = Compressor::new(&fam, 3, Compression::Folio);
        let tri = BoundariedGraph::from_edges(1, 2, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(c.compress(&tri).unwrap().is_none());
        let mut off = Compressor::new(&fam, 3, Compression::Off);
        assert!(off.compress(&tri).unwrap().is_none());
    }

    #[test]
    fn representative_is_stable() {
        let fam = Family::feedback_vertex_set();
        let mut c = Compressor::new(&fam, 3, Compression::Folio);
        let g = BoundariedGraph::from_edges(2, 1, &[(0, 2), (2, 1)]).unwrap();
        let a = c.compress(&g).unwrap().unwrap();
        let b = c.compress(&a.graph).unwrap().unwrap();
        assert_eq!(a.key, b.key);
    }

    #[test]
    fn reduction_suppresses_degree_two_for_k4() {
        let fam = Family::preset("K4").unwrap();
        let c = Compressor::new(&fam, 6, Compression::Folio);
        let g = BoundariedGraph::from_edges(2, 3, &[(0, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let r = c.reduce(&g);
        assert_eq!(r.n(), 2);
        assert_eq!(r.m(), 1);
    }
}
