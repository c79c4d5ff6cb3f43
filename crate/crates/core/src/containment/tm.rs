//! Boundaried topological minors: tm-pairs, dissolution and containment.

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form_with_cap, MAX_CANON_VERTICES};
use crate::error::{Error, Result};
use crate::graph::{BoundariedGraph, Graph};

/// A subgraph `M` of a host (given by host vertex ids) together with its
/// branch vertices `T`. Every other vertex of `M` has degree two in `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TmPair {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub branch: Vec<usize>,
}

impl TmPair {
    /// `M` relabelled onto `0..vertices.len()` and `T` in the same labelling.
    pub fn local(&self) -> Result<(Graph, Vec<usize>)> {
        let index = |v: usize| {
            self.vertices
                .iter()
                .position(|&x| x == v)
                .ok_or_else(|| Error::Validation(format!("vertex {v} is not listed in the tm-pair")))
        };
        let mut edges = Vec::with_capacity(self.edges.len());
        for &(u, v) in &self.edges {
            edges.push((index(u)?, index(v)?));
        }
        let g = Graph::from_edges(self.vertices.len(), &edges)?;
        let t = self.branch.iter().map(|&v| index(v)).collect::<Result<Vec<_>>>()?;
        Ok((g, t))
    }

    /// Checks that the pair lives in `host`, contains the host boundary among
    /// its branch vertices, and dissolves to `pattern`.
    pub fn validate(&self, host: &BoundariedGraph, pattern: &BoundariedGraph) -> Result<()> {
        for &(u, v) in &self.edges {
            if u >= host.n() || v >= host.n() || !host.graph().has_edge(u, v) {
                return Err(Error::Validation(format!("({u}, {v}) is not a host edge")));
            }
        }
        for &b in host.boundary() {
            if !self.branch.contains(&b) {
                return Err(Error::Validation(format!("boundary vertex {b} is not a branch vertex")));
            }
        }
        let (m, t) = self.local()?;
        let dissolved = dissolve(&m, &t)?;
        let boundary: Vec<usize> = host
            .boundary()
            .iter()
            .map(|b| self.branch.iter().position(|x| x == b).unwrap())
            .collect();
        let got = BoundariedGraph::new(dissolved, boundary)?;
        let a = canonical_form_with_cap(&got, MAX_CANON_VERTICES)?;
        let b = canonical_form_with_cap(pattern, MAX_CANON_VERTICES)?;
        if a != b {
            return Err(Error::Validation("dissolution is not isomorphic to the pattern".into()));
        }
        Ok(())
    }
}

/// Dissolves every vertex of `m` outside `t`, in ascending order. The result
/// has vertex `i` for `t[i]`.
pub fn dissolve(m: &Graph, t: &[usize]) -> Result<Graph> {
    let mut in_t = vec![false; m.n()];
    for &v in t {
        in_t[v] = true;
    }
    let order: Vec<usize> = (0..m.n()).filter(|&v| !in_t[v]).collect();
    dissolve_in_order(m, t, &order)
}

/// Dissolves the vertices outside `t` one at a time in the given order.
pub fn dissolve_in_order(m: &Graph, t: &[usize], order: &[usize]) -> Result<Graph> {
    let n = m.n();
    let mut in_t = vec![false; n];
    for &v in t {
        if v >= n || in_t[v] {
            return Err(Error::Invalid(format!("bad branch vertex {v}")));
        }
        in_t[v] = true;
    }
    let mut listed = vec![false; n];
    for &v in order {
        if v >= n || in_t[v] || listed[v] {
            return Err(Error::Invalid(format!("bad dissolution order entry {v}")));
        }
        listed[v] = true;
    }
    if listed.iter().zip(&in_t).any(|(&l, &b)| !l && !b) {
        return Err(Error::Invalid("dissolution order misses a vertex".into()));
    }
    check_pair(m, &in_t)?;
    let mut g = m.clone();
    for &v in order {
        let nb = g.neighbors(v).to_vec();
        let (a, b) = (nb[0], nb[1]);
        g.remove_edge(v, a);
        g.remove_edge(v, b);
        g.add_edge(a, b);
    }
    let mut index = vec![usize::MAX; n];
    for (i, &v) in t.iter().enumerate() {
        index[v] = i;
    }
    let mut out = Graph::new(t.len());
    for (u, v) in g.edges() {
        out.add_edge(index[u], index[v]);
    }
    Ok(out)
}

/// Degree-two condition off `T`, and no subdivision cycle that avoids `T`
/// or meets it in a single vertex.
fn check_pair(m: &Graph, in_t: &[bool]) -> Result<()> {
    let n = m.n();
    for v in 0..n {
        if !in_t[v] && m.degree(v) != 2 {
            return Err(Error::Invalid(format!("vertex {v} is not a branch vertex but has degree {}", m.degree(v))));
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if in_t[s] || seen[s] {
            continue;
        }
        let mut stack = vec![s];
        seen[s] = true;
        let mut ends = Vec::new();
        while let Some(v) = stack.pop() {
            for &w in m.neighbors(v) {
                if in_t[w] {
                    ends.push(w);
                } else if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        match ends.as_slice() {
            [] => return Err(Error::Invalid(format!("vertex {s} lies on a cycle without branch vertices"))),
            [a, b] if a == b => {
                return Err(Error::Invalid(format!("vertex {s} lies on a cycle through the single branch vertex {a}")))
            }
            _ => {}
        }
    }
    Ok(())
}

/// Decides whether `pattern` is a boundaried topological minor of `host`
/// (boundary position `i` of the pattern sits on boundary position `i` of
/// the host).
pub fn has_btm(host: &BoundariedGraph, pattern: &BoundariedGraph) -> Result<bool> {
    Ok(find_btm(host, pattern)?.is_some())
}

pub fn find_btm(host: &BoundariedGraph, pattern: &BoundariedGraph) -> Result<Option<TmPair>> {
    if host.t() != pattern.t() {
        return Err(Error::Incompatible(format!("boundary sizes differ ({} vs {})", host.t(), pattern.t())));
    }
    if pattern.internal_count() > host.internal_count() || pattern.m() > host.m() {
        return Ok(None);
    }
    if !degrees_dominated(host, pattern) {
        return Ok(None);
    }
    let mut s = BtmSearch::new(host, pattern);
    if !s.boundary_degrees_fit() {
        return Ok(None);
    }
    Ok(s.place(0).then(|| s.witness()))
}

/// Internal pattern vertices go to distinct internal host vertices of at
/// least the same degree, so the sorted degree sequences must dominate.
fn degrees_dominated(host: &BoundariedGraph, pattern: &BoundariedGraph) -> bool {
    let degs = |g: &BoundariedGraph| {
        let mut d: Vec<usize> = g.internal_vertices().into_iter().map(|v| g.graph().degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    };
    let (h, p) = (degs(host), degs(pattern));
    p.iter().zip(&h).all(|(a, b)| a <= b)
}

struct BtmSearch<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    /// Pattern internal vertices with at least one edge, by decreasing degree.
    placed: Vec<usize>,
    isolated: usize,
    image: Vec<usize>,
    /// Host vertices occupied by an image or a path interior.
    busy: Vec<bool>,
    host_internal: Vec<bool>,
    edges: Vec<(usize, usize)>,
    paths: Vec<Vec<usize>>,
    free_count: usize,
}

impl<'a> BtmSearch<'a> {
    fn new(host: &'a BoundariedGraph, pattern: &'a BoundariedGraph) -> Self {
        let pg = pattern.graph();
        let mut image = vec![usize::MAX; pattern.n()];
        let mut busy = vec![false; host.n()];
        for (i, &b) in pattern.boundary().iter().enumerate() {
            image[b] = host.boundary()[i];
            busy[host.boundary()[i]] = true;
        }
        let mut pool: Vec<usize> = pattern.internal_vertices().into_iter().filter(|&v| pg.degree(v) > 0).collect();
        // grow the placement order along pattern edges so conflicts show early
        let mut placed = Vec::with_capacity(pool.len());
        let mut done: Vec<bool> = (0..pattern.n()).map(|v| pattern.is_boundary(v)).collect();
        while !pool.is_empty() {
            let score = |v: usize| {
                let linked = pg.neighbors(v).iter().filter(|&&w| done[w]).count();
                (linked, pg.degree(v), std::cmp::Reverse(v))
            };
            let best = (0..pool.len()).max_by_key(|&i| score(pool[i])).unwrap();
            let v = pool.swap_remove(best);
            done[v] = true;
            placed.push(v);
        }
        let isolated = pattern.internal_count() - placed.len();
        let host_internal: Vec<bool> = (0..host.n()).map(|v| !host.is_boundary(v)).collect();
        BtmSearch {
            host: host.graph(),
            pattern: pg,
            placed,
            isolated,
            image,
            busy,
            host_internal,
            edges: Vec::new(),
            paths: Vec::new(),
            free_count: host.internal_count(),
        }
    }

    fn boundary_degrees_fit(&self) -> bool {
        (0..self.pattern.n())
            .filter(|&v| self.image[v] != usize::MAX)
            .all(|v| self.pattern.degree(v) <= self.host.degree(self.image[v]))
    }

    fn place(&mut self, i: usize) -> bool {
        if i == self.placed.len() {
            self.edges = self.pattern.edges();
            // edges realised by a direct host edge are cheapest, route them first
            let image = &self.image;
            let host = self.host;
            self.edges.sort_by_key(|&(u, v)| !host.has_edge(image[u], image[v]));
            self.paths = Vec::with_capacity(self.edges.len());
            return self.route(0);
        }
        let u = self.placed[i];
        let need = self.pattern.degree(u);
        for x in 0..self.host.n() {
            if !self.host_internal[x] || self.busy[x] || self.host.degree(x) < need {
                continue;
            }
            self.image[u] = x;
            self.busy[x] = true;
            self.free_count -= 1;
            let remaining = self.placed.len() - i - 1;
            if self.free_count >= self.isolated + remaining + self.subdivided_edges() && self.place(i + 1) {
                return true;
            }
            self.free_count += 1;
            self.busy[x] = false;
            self.image[u] = usize::MAX;
        }
        false
    }

    /// Pattern edges between already placed vertices (boundary included)
    /// that need at least one subdivision vertex.
    fn subdivided_edges(&self) -> usize {
        let mut count = 0;
        for v in 0..self.pattern.n() {
            let x = self.image[v];
            if x == usize::MAX {
                continue;
            }
            for &w in self.pattern.neighbors(v) {
                let y = self.image[w];
                if v < w && y != usize::MAX && !self.host.has_edge(x, y) {
                    count += 1;
                }
            }
        }
        count
    }

    fn route(&mut self, e: usize) -> bool {
        if e == self.edges.len() {
            return self.free_count >= self.isolated;
        }
        let (u, v) = self.edges[e];
        let (x, y) = (self.image[u], self.image[v]);
        if self.host.has_edge(x, y) {
            self.paths.push(Vec::new());
            if self.route(e + 1) {
                return true;
            }
            self.paths.pop();
        }
        let mut interior = Vec::new();
        self.extend_path(x, y, e, &mut interior)
    }

    /// Depth-first enumeration of paths `x .. y` with at least one interior
    /// vertex, all interior vertices free and internal.
    fn extend_path(&mut self, at: usize, target: usize, e: usize, interior: &mut Vec<usize>) -> bool {
        for idx in 0..self.host.degree(at) {
            let w = self.host.neighbors(at)[idx];
            if w == target {
                if interior.is_empty() {
                    continue;
                }
                self.paths.push(interior.clone());
                if self.route(e + 1) {
                    return true;
                }
                self.paths.pop();
                continue;
            }
            if !self.host_internal[w] || self.busy[w] || self.free_count <= self.isolated {
                continue;
            }
            self.busy[w] = true;
            self.free_count -= 1;
            interior.push(w);
            if self.extend_path(w, target, e, interior) {
                return true;
            }
            interior.pop();
            self.free_count += 1;
            self.busy[w] = false;
        }
        false
    }

    fn witness(&self) -> TmPair {
        let mut branch: Vec<usize> = Vec::new();
        // boundary first, in boundary order, then placed vertices
        for v in 0..self.pattern.n() {
            if self.image[v] != usize::MAX {
                branch.push(self.image[v]);
            }
        }
        let mut spare = (0..self.host.n()).filter(|&x| self.host_internal[x] && !self.busy[x]);
        for _ in 0..self.isolated {
            branch.push(spare.next().expect("enough free vertices for isolated pattern vertices"));
        }
        let mut vertices = branch.clone();
        let mut edges = Vec::new();
        for (&(u, v), p) in self.edges.iter().zip(&self.paths) {
            let mut walk = vec![self.image[u]];
            walk.extend(p);
            walk.push(self.image[v]);
            vertices.extend(p);
            for w in walk.windows(2) {
                edges.push((w[0].min(w[1]), w[0].max(w[1])));
            }
        }
        vertices.sort_unstable();
        vertices.dedup();
        edges.sort_unstable();
        TmPair { vertices, edges, branch }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bg(t: usize, internal: usize, edges: &[(usize, usize)]) -> BoundariedGraph {
        BoundariedGraph::from_edges(t, internal, edges).unwrap()
    }

    #[test]
    fn dissolve_examples() {
        // a - x - y - b with T = {a, b}
        let m = Graph::from_edges(4, &[(0, 2), (2, 3), (3, 1)]).unwrap();
        assert_eq!(dissolve(&m, &[0, 1]).unwrap(), Graph::complete(2));
        let tri = Graph::complete(3);
        assert_eq!(dissolve(&tri, &[0, 1, 2]).unwrap(), tri);
        let c6 = Graph::cycle(6);
        assert_eq!(dissolve(&c6, &[0, 2, 4]).unwrap(), Graph::complete(3));
    }

    #[test]
    fn dissolve_rejects_invalid_pairs() {
        let c4 = Graph::cycle(4);
        assert!(dissolve(&c4, &[]).is_err());
        assert!(dissolve(&c4, &[0]).is_err());
        let star = Graph::star(3);
        assert!(dissolve(&star, &[1, 2, 3]).is_err());
    }

    #[test]
    fn dissolve_order_independent_on_cycle() {
        let c9 = Graph::cycle(9);
        let t = [0, 3, 6];
        let base = dissolve(&c9, &t).unwrap();
        let mut order: Vec<usize> = (0..9).filter(|v| !t.contains(v)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            order.shuffle(&mut rng);
            assert_eq!(dissolve_in_order(&c9, &t, &order).unwrap(), base);
        }
    }

    #[test]
    fn btm_examples() {
        let edge = bg(2, 0, &[(0, 1)]);
        let path = bg(2, 1, &[(0, 2), (2, 1)]);
        assert!(has_btm(&edge, &edge).unwrap());
        let w = find_btm(&path, &edge).unwrap().unwrap();
        w.validate(&path, &edge).unwrap();
        assert!(!has_btm(&edge, &path).unwrap());
        assert!(has_btm(&path, &path).unwrap());
        assert!(matches!(has_btm(&edge, &bg(1, 0, &[])), Err(Error::Incompatible(_))));
    }

    #[test]
    fn isolated_pattern_vertices_need_spare_vertices() {
        let host = bg(2, 2, &[(0, 2), (2, 3), (3, 1)]);
        let one_iso = bg(2, 1, &[(0, 1)]);
        let two_iso = bg(2, 2, &[(0, 1)]);
        // routing b1 .. b2 consumes both internal vertices
        assert!(!has_btm(&host, &one_iso).unwrap());
        assert!(!has_btm(&host, &two_iso).unwrap());
        assert!(has_btm(&host, &bg(2, 1, &[(0, 2)])).unwrap());
        assert!(has_btm(&host, &bg(2, 2, &[])).unwrap());
    }

    #[test]
    fn k4_subdivision() {
        let mut edges = Vec::new();
        let mut next = 4;
        for (u, v) in Graph::complete(4).edges() {
            edges.push((u, next));
            edges.push((next, v));
            next += 1;
        }
        let host = BoundariedGraph::unboundaried(Graph::from_edges(10, &edges).unwrap());
        let k4 = BoundariedGraph::unboundaried(Graph::complete(4));
        let w = find_btm(&host, &k4).unwrap().unwrap();
        w.validate(&host, &k4).unwrap();
        let k5 = BoundariedGraph::unboundaried(Graph::complete(5));
        assert!(!has_btm(&host, &k5).unwrap());
    }
}
