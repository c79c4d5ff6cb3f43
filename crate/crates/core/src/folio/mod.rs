//! Folios: the boundaried topological minors of bounded detail contained in
//! a boundaried graph, and the signatures derived from them.

pub mod universe;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::canon::{canonical_form_with_cap, CanonicalForm};
use crate::containment::has_btm;
use crate::error::{Error, Result};
use crate::graph::BoundariedGraph;

pub use universe::{pattern_universe, pattern_universe_with_limits, PatternUniverse, UniverseLimits, CACHE_DIR_ENV};

/// Subset of a pattern universe, stored as a bit set over pattern indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Folio {
    t: usize,
    d: usize,
    bits: Vec<u64>,
}

impl Folio {
    pub fn empty(t: usize, d: usize, universe_len: usize) -> Self {
        Folio { t, d, bits: vec![0; universe_len.div_ceil(64)] }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Member indices in increasing (canonical) order.
    pub fn members(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in self.bits.iter().enumerate() {
            let mut b = word;
            while b != 0 {
                out.push(w * 64 + b.trailing_zeros() as usize);
                b &= b - 1;
            }
        }
        out
    }

    pub fn is_subset(&self, other: &Folio) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &Folio) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    pub fn bits(&self) -> &[u64] {
        &self.bits
    }
}

/// Enumerate-and-test: every universe pattern is checked with [`has_btm`],
/// skipping patterns with a child already known to be absent.
pub fn folio(g: &BoundariedGraph, d: usize) -> Result<Folio> {
    let u = pattern_universe(g.t(), d)?;
    folio_in(g, &u)
}

pub fn folio_in(g: &BoundariedGraph, u: &PatternUniverse) -> Result<Folio> {
    if g.t() != u.t() {
        return Err(Error::Incompatible(format!("graph has {} boundary vertices, universe {}", g.t(), u.t())));
    }
    let mut f = Folio::empty(u.t(), u.d(), u.len());
    let (gm, gi) = (g.m(), g.internal_count());
    for &p in u.by_size() {
        let pat = u.pattern(p);
        if pat.m() > gm || pat.internal_count() > gi {
            continue;
        }
        if !u.children(p).iter().all(|&c| f.contains(c)) {
            continue;
        }
        if has_btm(g, pat)? {
            f.insert(p);
        }
    }
    Ok(f)
}

/// Largest number of internal vertices [`folio_closure`] accepts.
pub const CLOSURE_INTERNAL_CAP: usize = 10;

/// Independent folio oracle: the downward closure of a graph under internal
/// vertex deletion, edge deletion and dissolution, memoised by canonical
/// form. One oracle can serve many graphs with the same `(t, d)`.
pub struct ClosureOracle {
    universe: Arc<PatternUniverse>,
    memo: HashMap<CanonicalForm, Arc<Folio>>,
}

impl ClosureOracle {
    pub fn new(t: usize, d: usize) -> Result<Self> {
        Ok(ClosureOracle { universe: pattern_universe(t, d)?, memo: HashMap::new() })
    }

    pub fn universe(&self) -> &PatternUniverse {
        &self.universe
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn folio(&mut self, g: &BoundariedGraph) -> Result<Folio> {
        if g.t() != self.universe.t() {
            return Err(Error::Incompatible("boundary size differs from the oracle's".into()));
        }
        if g.internal_count() > CLOSURE_INTERNAL_CAP {
            return Err(Error::Budget(format!(
                "closure oracle takes at most {CLOSURE_INTERNAL_CAP} internal vertices, got {}",
                g.internal_count()
            )));
        }
        Ok((*self.visit(g)?).clone())
    }

    fn visit(&mut self, g: &BoundariedGraph) -> Result<Arc<Folio>> {
        let form = canonical_form_with_cap(g, CLOSURE_INTERNAL_CAP)?;
        if let Some(f) = self.memo.get(&form) {
            return Ok(f.clone());
        }
        let u = self.universe.clone();
        let mut f = Folio::empty(u.t(), u.d(), u.len());
        if g.detail() <= u.d() {
            let i = u.index_of(&form).ok_or_else(|| Error::Validation("pattern missing from universe".into()))?;
            f.insert(i);
        }
        for child in universe::one_step_reductions(g) {
            let cf = self.visit(&child)?;
            f.union_with(&cf);
        }
        let f = Arc::new(f);
        self.memo.insert(form, f.clone());
        Ok(f)
    }
}

pub fn folio_closure(g: &BoundariedGraph, d: usize) -> Result<Folio> {
    ClosureOracle::new(g.t(), d)?.folio(g)
}

/// Fixed-width fingerprint of a folio together with the boundary graph.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FolioSignature {
    pub t: u8,
    pub d: u8,
    pub digest: [u8; 32],
}

impl FolioSignature {
    /// Reserved signature of the class of graphs that contain a forbidden minor.
    pub fn dead(t: usize, d: usize) -> Self {
        FolioSignature { t: t as u8, d: d as u8, digest: [0; 32] }
    }

    pub fn is_dead(&self) -> bool {
        self.digest == [0; 32]
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.digest)
    }

    pub fn from_hex(t: usize, d: usize, s: &str) -> Result<Self> {
        let bytes = hex::decode(s).map_err(|e| Error::Parse(format!("bad signature: {e}")))?;
        let digest: [u8; 32] = bytes.try_into().map_err(|_| Error::Parse("signature must be 32 bytes".into()))?;
        Ok(FolioSignature { t: t as u8, d: d as u8, digest })
    }
}

impl fmt::Debug for FolioSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FolioSignature(t={}, d={}, {})", self.t, self.d, self.to_hex())
    }
}

impl fmt::Display for FolioSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Digest of `(t, d)`, the boundary edges (position pairs) and the sorted
/// canonical forms of the folio's members.
pub fn signature_of(boundary_edges: &[(usize, usize)], folio: &Folio, u: &PatternUniverse) -> FolioSignature {
    let mut h = Sha256::new();
    h.update(b"fmdel-folio-1");
    h.update([folio.t() as u8, folio.d() as u8]);
    h.update((boundary_edges.len() as u32).to_le_bytes());
    for &(i, j) in boundary_edges {
        h.update([i as u8, j as u8]);
    }
    let members = folio.members();
    h.update((members.len() as u32).to_le_bytes());
    for i in members {
        let bytes = u.form(i).as_bytes();
        h.update((bytes.len() as u32).to_le_bytes());
        h.update(bytes);
    }
    let mut digest: [u8; 32] = h.finalize().into();
    if digest == [0; 32] {
        digest[31] = 1;
    }
    FolioSignature { t: folio.t() as u8, d: folio.d() as u8, digest }
}

pub fn folio_signature(g: &BoundariedGraph, d: usize) -> Result<FolioSignature> {
    let u = pattern_universe(g.t(), d)?;
    let f = folio_in(g, &u)?;
    Ok(signature_of(&g.boundary_edges(), &f, &u))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bg(t: usize, internal: usize, edges: &[(usize, usize)]) -> BoundariedGraph {
        BoundariedGraph::from_edges(t, internal, edges).unwrap()
    }

    /// Path b1 - x1 - .. - xk - b2.
    fn path(k: usize) -> BoundariedGraph {
        let mut edges = Vec::new();
        let mut prev = 0;
        for i in 0..k {
            edges.push((prev, 2 + i));
            prev = 2 + i;
        }
        edges.push((prev, 1));
        bg(2, k, &edges)
    }

    fn members_as_graphs(f: &Folio) -> Vec<BoundariedGraph> {
        let u = pattern_universe(f.t(), f.d()).unwrap();
        f.members().into_iter().map(|i| u.pattern(i).clone()).collect()
    }

    #[test]
    fn folio_examples() {
        assert_eq!(folio(&bg(2, 0, &[]), 1).unwrap().len(), 1);
        let edge = folio(&bg(2, 0, &[(0, 1)]), 1).unwrap();
        assert_eq!(edge.len(), 2);
        assert_eq!(edge, folio_closure(&bg(2, 0, &[(0, 1)]), 1).unwrap());
        let p = folio(&path(1), 1).unwrap();
        let got = members_as_graphs(&p);
        let expect = [
            bg(2, 0, &[]),
            bg(2, 1, &[]),
            bg(2, 0, &[(0, 1)]),
            bg(2, 1, &[(0, 2)]),
            bg(2, 1, &[(1, 2)]),
        ];
        assert_eq!(got.len(), expect.len());
        for e in &expect {
            assert!(got.iter().any(|g| g.canonical_form().unwrap() == e.canonical_form().unwrap()));
        }
        assert_eq!(p, folio_closure(&path(1), 1).unwrap());
    }

    #[test]
    fn closure_examples() {
        let lone = folio_closure(&bg(1, 0, &[]), 3).unwrap();
        assert_eq!(lone.len(), 1);
        let c4 = bg(2, 2, &[(0, 2), (2, 1), (1, 3), (3, 0)]);
        assert_eq!(folio_closure(&c4, 2).unwrap(), folio(&c4, 2).unwrap());
    }

    #[test]
    fn path_signatures() {
        assert_eq!(folio_signature(&path(3), 3).unwrap(), folio_signature(&path(3), 3).unwrap());
        assert_eq!(folio_signature(&path(3), 3).unwrap(), folio_signature(&path(5), 3).unwrap());
        assert_ne!(folio_signature(&path(1), 3).unwrap(), folio_signature(&path(2), 3).unwrap());
        assert_eq!(folio(&path(3), 3).unwrap(), folio_closure(&path(5), 3).unwrap());
    }

    #[test]
    fn signature_sees_boundary_edges() {
        // b1 - x - b2 plus edge b1 b2 versus b1 - x - b2 plus a second path
        let with_edge = bg(2, 1, &[(0, 2), (2, 1), (0, 1)]);
        let f = folio(&with_edge, 1).unwrap();
        let u = pattern_universe(2, 1).unwrap();
        let s1 = signature_of(&[(0, 1)], &f, &u);
        let s2 = signature_of(&[], &f, &u);
        assert_ne!(s1, s2);
        assert!(!s1.is_dead());
        assert!(FolioSignature::dead(2, 1).is_dead());
        assert_eq!(FolioSignature::from_hex(2, 1, &s1.to_hex()).unwrap(), s1);
    }
}
