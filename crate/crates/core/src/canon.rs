//! Canonical forms of boundaried graphs.
//!
//! Two boundaried graphs get the same form exactly when some isomorphism maps
//! boundary position `i` to boundary position `i` for every `i`. Boundary
//! vertices start as singleton colour classes; internal vertices are ordered
//! by colour refinement followed by an individualisation search over the
//! residual classes. Twins (vertices with equal neighbourhoods) are tried
//! only once per class, which keeps highly symmetric graphs such as many
//! isolated vertices cheap.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{BoundariedGraph, Graph};

/// Default limit on non-boundary vertices accepted by [`canonical_form`].
pub const DEFAULT_CANON_CAP: usize = 12;

/// Hard limit on total vertices (adjacency rows are single `u64` words).
pub const MAX_CANON_VERTICES: usize = 64;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let bytes = hex::decode(s).map_err(|e| Error::Parse(format!("bad canonical form: {e}")))?;
        let form = CanonicalForm(bytes);
        form.decode()?;
        Ok(form)
    }

    pub fn t(&self) -> usize {
        self.0[0] as usize
    }

    pub fn n(&self) -> usize {
        self.0[1] as usize
    }

    /// Rebuilds the boundaried graph in canonical vertex order (boundary `0..t`).
    pub fn decode(&self) -> Result<BoundariedGraph> {
        if self.0.len() < 2 {
            return Err(Error::Parse("canonical form too short".into()));
        }
        let (t, n) = (self.t(), self.n());
        let bits = n * n.saturating_sub(1) / 2;
        if t > n || self.0.len() != 2 + bits.div_ceil(8) {
            return Err(Error::Parse("canonical form has inconsistent length".into()));
        }
        let mut g = Graph::new(n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.0[2 + k / 8] & (0x80 >> (k % 8)) != 0 {
                    g.add_edge(i, j);
                }
                k += 1;
            }
        }
        BoundariedGraph::new(g, (0..t).collect())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

pub fn canonical_form(g: &BoundariedGraph) -> Result<CanonicalForm> {
    canonical_form_with_cap(g, DEFAULT_CANON_CAP)
}

pub fn canonical_form_with_cap(g: &BoundariedGraph, cap: usize) -> Result<CanonicalForm> {
    Ok(canonical_labeling(g, cap)?.0)
}

/// Canonical form together with the canonical order: `order[i]` is the vertex
/// of `g` placed at canonical position `i`.
pub fn canonical_labeling(g: &BoundariedGraph, cap: usize) -> Result<(CanonicalForm, Vec<usize>)> {
    let internal = g.internal_count();
    if internal > cap || g.n() > MAX_CANON_VERTICES {
        return Err(Error::CanonicalizationTooLarge { internal, cap });
    }
    let n = g.n();
    let mut adj = vec![0u64; n];
    for (u, v) in g.graph().edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let t = g.t() as u32;
    let colors: Vec<u32> = (0..n).map(|v| g.position(v).map_or(t, |p| p as u32)).collect();
    let mut search = Search { adj: &adj, n, t: g.t(), best: None };
    search.descend(colors);
    let (code, order) = search.best.expect("search visits at least one leaf");
    let mut bytes = Vec::with_capacity(code.len() + 2);
    bytes.push(g.t() as u8);
    bytes.push(n as u8);
    bytes.extend_from_slice(&code);
    Ok((CanonicalForm(bytes), order))
}

/// The graph relabelled into canonical order, plus its form.
pub fn canonical_graph(g: &BoundariedGraph, cap: usize) -> Result<(BoundariedGraph, CanonicalForm)> {
    let (form, _) = canonical_labeling(g, cap)?;
    let cg = form.decode()?;
    Ok((cg, form))
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    t: usize,
    best: Option<(Vec<u8>, Vec<usize>)>,
}

impl Search<'_> {
    fn descend(&mut self, colors: Vec<u32>) {
        let colors = refine(self.adj, colors);
        let n = self.n;
        // smallest non-singleton class
        let mut counts = vec![0u32; n + 1];
        for &c in &colors {
            counts[c as usize] += 1;
        }
        let target = (0..=n).find(|&c| counts[c] > 1);
        let Some(target) = target else {
            let mut order = vec![0usize; n];
            for (v, &c) in colors.iter().enumerate() {
                order[c as usize] = v;
            }
            let code = encode(self.adj, &order);
            let better = match &self.best {
                None => true,
                Some((b, _)) => code < *b,
            };
            if better {
                self.best = Some((code, order));
            }
            return;
        };
        debug_assert!(target >= self.t || self.t == 0 || counts[target] > 1);
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] as usize == target).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&u| are_twins(self.adj, u, v)) {
                continue;
            }
            tried.push(v);
            let next: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(w, &c)| if w == v { 2 * c } else { 2 * c + 1 })
                .collect();
            self.descend(next);
        }
    }
}

fn are_twins(adj: &[u64], u: usize, v: usize) -> bool {
    (adj[u] & !(1u64 << v)) == (adj[v] & !(1u64 << u))
}

/// Equitable refinement; colours of the result are `0..k` and preserve the
/// relative order of the input classes.
fn refine(adj: &[u64], colors: Vec<u32>) -> Vec<u32> {
    let n = adj.len();
    let mut colors = renumber(&colors);
    let mut classes = colors.iter().copied().max().map_or(0, |c| c + 1);
    loop {
        let mut sigs: Vec<(Vec<u32>, usize)> = (0..n)
            .map(|v| {
                let mut s = Vec::with_capacity(1 + adj[v].count_ones() as usize);
                s.push(colors[v]);
                let mut bits = adj[v];
                let mut nb = Vec::with_capacity(bits.count_ones() as usize);
                while bits != 0 {
                    let w = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    nb.push(colors[w]);
                }
                nb.sort_unstable();
                s.extend(nb);
                (s, v)
            })
            .collect();
        sigs.sort_unstable();
        let mut next = vec![0u32; n];
        let mut c = 0u32;
        for i in 0..n {
            if i > 0 && sigs[i].0 != sigs[i - 1].0 {
                c += 1;
            }
            next[sigs[i].1] = c;
        }
        let k = if n == 0 { 0 } else { c + 1 };
        colors = next;
        if k == classes {
            return colors;
        }
        classes = k;
    }
}

fn renumber(colors: &[u32]) -> Vec<u32> {
    let mut distinct: Vec<u32> = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    colors.iter().map(|c| distinct.binary_search(c).unwrap() as u32).collect()
}

fn encode(adj: &[u64], order: &[usize]) -> Vec<u8> {
    let n = order.len();
    let bits = n * n.saturating_sub(1) / 2;
    let mut out = vec![0u8; bits.div_ceil(8)];
    let mut k = 0;
    for i in 0..n {
        let row = adj[order[i]];
        for &w in &order[i + 1..] {
            if row & (1u64 << w) != 0 {
                out[k / 8] |= 0x80 >> (k % 8);
            }
            k += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Minimum encoding over every permutation of the internal vertices.
    fn brute_force_form(g: &BoundariedGraph) -> Vec<u8> {
        let internal = g.internal_vertices();
        let mut best: Option<Vec<u8>> = None;
        let mut perm = internal.clone();
        permute(&mut perm, 0, &mut |p| {
            let mut order: Vec<usize> = g.boundary().to_vec();
            order.extend_from_slice(p);
            let mut adj = vec![0u64; g.n()];
            for (u, v) in g.graph().edges() {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
            let code = encode(&adj, &order);
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        });
        best.unwrap()
    }

    fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute(v, k + 1, f);
            v.swap(k, i);
        }
    }

    fn relabel(g: &BoundariedGraph, rng: &mut ChaCha8Rng) -> BoundariedGraph {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(rng);
        let edges: Vec<_> = g.graph().edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        let boundary = g.boundary().iter().map(|&b| perm[b]).collect();
        BoundariedGraph::new(Graph::from_edges(g.n(), &edges).unwrap(), boundary).unwrap()
    }

    fn random_bg(rng: &mut ChaCha8Rng, t: usize, internal: usize, p: f64) -> BoundariedGraph {
        let n = t + internal;
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        BoundariedGraph::from_edges(t, internal, &edges).unwrap()
    }

    #[test]
    fn path_relabelings_agree() {
        let a = BoundariedGraph::new(Graph::from_edges(3, &[(0, 2), (2, 1)]).unwrap(), vec![0, 1]).unwrap();
        let b = BoundariedGraph::new(Graph::from_edges(3, &[(1, 0), (0, 2)]).unwrap(), vec![1, 2]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        let e = BoundariedGraph::from_edges(2, 0, &[(0, 1)]).unwrap();
        assert_ne!(canonical_form(&a).unwrap(), canonical_form(&e).unwrap());
    }

    #[test]
    fn boundary_order_matters() {
        // b1 - x with b2 isolated versus b2 - x with b1 isolated
        let a = BoundariedGraph::from_edges(2, 1, &[(0, 2)]).unwrap();
        let b = BoundariedGraph::from_edges(2, 1, &[(1, 2)]).unwrap();
        assert_ne!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn star_under_internal_permutations() {
        // centre x adjacent to b1, b2, b3, plus a pendant path of internal vertices
        let base = BoundariedGraph::from_edges(3, 3, &[(3, 0), (3, 1), (3, 2), (3, 4), (5, 4)]).unwrap();
        let expected = canonical_form(&base).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let g = relabel(&base, &mut rng);
            assert_eq!(brute_force_form(&g), brute_force_form(&base));
            assert_eq!(canonical_form(&g).unwrap(), expected);
        }
    }

    #[test]
    fn agrees_with_brute_force_isomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..400 {
            let t = rng.gen_range(0..4);
            let k = rng.gen_range(0..7);
            let p = rng.gen_range(0.1..0.7);
            let g = random_bg(&mut rng, t, k, p);
            let h = if rng.gen_bool(0.5) { relabel(&g, &mut rng) } else { random_bg(&mut rng, t, k, p) };
            let (fg, fh) = (canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
            assert_eq!(fg == fh, brute_force_form(&g) == brute_force_form(&h));
            assert_eq!(fg.decode().unwrap().canonical_form().unwrap(), fg);
        }
    }

    #[test]
    fn symmetric_graphs_are_cheap() {
        let g = BoundariedGraph::from_edges(1, 12, &[]).unwrap();
        assert!(canonical_form(&g).is_ok());
        let mut edges = Vec::new();
        for k in 0..4 {
            let b = 1 + 3 * k;
            edges.extend([(b, b + 1), (b + 1, b + 2), (b, b + 2)]);
        }
        let g = BoundariedGraph::from_edges(1, 12, &edges).unwrap();
        assert!(canonical_form(&g).is_ok());
    }

    #[test]
    fn cap_is_enforced() {
        let g = BoundariedGraph::from_edges(0, 13, &[]).unwrap();
        assert!(matches!(canonical_form(&g), Err(Error::CanonicalizationTooLarge { internal: 13, cap: 12 })));
        assert!(canonical_form_with_cap(&g, 13).is_ok());
    }

    #[test]
    fn hex_round_trip() {
        let g = BoundariedGraph::from_edges(2, 2, &[(0, 2), (2, 3), (3, 1)]).unwrap();
        let f = canonical_form(&g).unwrap();
        assert_eq!(CanonicalForm::from_hex(&f.to_hex()).unwrap(), f);
        assert!(f.to_hex().chars().all(|c| c.is_ascii_digit() || ('a'..='f').contains(&c)));
    }
}
