//! Simple undirected graphs and boundaried graphs.
//!
//! Vertex ids are dense and 0-based. A [`BoundariedGraph`] carries an ordered
//! boundary: the vertex at position `i` of the boundary list is the vertex
//! labelled `i + 1`, so boundary order is significant everywhere.

use std::fmt;

use crate::canon::{self, CanonicalForm};
use crate::error::{Error, Result};

/// Simple undirected graph stored as sorted adjacency lists.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Invalid(format!("edge ({u}, {v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::Invalid(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Adds the edge `uv`; returns false if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "loop at vertex {u}");
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(i) => {
                self.adj[u].insert(i, v);
                let j = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(j, u);
                true
            }
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        match self.adj[u].binary_search(&v) {
            Ok(i) => {
                self.adj[u].remove(i);
                let j = self.adj[v].binary_search(&u).unwrap();
                self.adj[v].remove(j);
                true
            }
            Err(_) => false,
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Removes every vertex with `removed[v] == true`. Returns the remaining
    /// graph together with the old id of each new vertex.
    pub fn without_vertices(&self, removed: &[bool]) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n()).filter(|&v| !removed[v]).collect();
        (self.induced(&keep), keep)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// True if the graph has no cycle.
    pub fn is_forest(&self) -> bool {
        self.m() + self.components().len() == self.n()
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least three vertices");
        let mut g = Graph::new(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        let mut g = Graph::new(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v);
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn petersen() -> Graph {
        let mut g = Graph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }
}

/// A graph together with an ordered boundary `B`; position `i` of the
/// boundary list realises the labelling `ρ(B[i]) = i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundariedGraph {
    graph: Graph,
    boundary: Vec<usize>,
    position: Vec<usize>,
}

const INTERNAL: usize = usize::MAX;

impl BoundariedGraph {
    pub fn new(graph: Graph, boundary: Vec<usize>) -> Result<Self> {
        let mut position = vec![INTERNAL; graph.n()];
        for (i, &b) in boundary.iter().enumerate() {
            if b >= graph.n() {
                return Err(Error::Invalid(format!("boundary vertex {b} not in graph")));
            }
            if position[b] != INTERNAL {
                return Err(Error::Invalid(format!("boundary vertex {b} repeated")));
            }
            position[b] = i;
        }
        Ok(BoundariedGraph { graph, boundary, position })
    }

    /// Graph with empty boundary.
    pub fn unboundaried(graph: Graph) -> Self {
        let n = graph.n();
        BoundariedGraph { graph, boundary: Vec::new(), position: vec![INTERNAL; n] }
    }

    /// `t` isolated boundary vertices `0..t` in order.
    pub fn boundary_only(t: usize) -> Self {
        BoundariedGraph::new(Graph::new(t), (0..t).collect()).unwrap()
    }

    /// Builds a graph on `t + internal` vertices whose boundary is `0..t`.
    pub fn from_edges(t: usize, internal: usize, edges: &[(usize, usize)]) -> Result<Self> {
        BoundariedGraph::new(Graph::from_edges(t + internal, edges)?, (0..t).collect())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn t(&self) -> usize {
        self.boundary.len()
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.position[v] != INTERNAL
    }

    /// Boundary position (0-based) of `v`, if `v` is a boundary vertex.
    pub fn position(&self, v: usize) -> Option<usize> {
        let p = self.position[v];
        (p != INTERNAL).then_some(p)
    }

    pub fn internal_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| !self.is_boundary(v)).collect()
    }

    pub fn internal_count(&self) -> usize {
        self.n() - self.t()
    }

    /// `max(|E|, |V \ B|)`.
    pub fn detail(&self) -> usize {
        self.m().max(self.internal_count())
    }

    /// Edges of the boundary-induced subgraph as position pairs `(i, j)`, `i < j`.
    pub fn boundary_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &u) in self.boundary.iter().enumerate() {
            for (j, &v) in self.boundary.iter().enumerate().skip(i + 1) {
                if self.graph.has_edge(u, v) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// First boundary position pair on which the boundary-induced subgraphs
    /// disagree, or `None` if the graphs are compatible.
    pub fn compatibility_mismatch(&self, other: &BoundariedGraph) -> Option<(usize, usize)> {
        if self.t() != other.t() {
            return Some((self.t(), other.t()));
        }
        for i in 0..self.t() {
            for j in i + 1..self.t() {
                let a = self.graph.has_edge(self.boundary[i], self.boundary[j]);
                let b = other.graph.has_edge(other.boundary[i], other.boundary[j]);
                if a != b {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn compatible(&self, other: &BoundariedGraph) -> bool {
        self.compatibility_mismatch(other).is_none()
    }

    /// Glues two compatible boundaried graphs; the result keeps the boundary
    /// of `self`. Vertices of `self` keep their ids, internal vertices of
    /// `other` follow in increasing order.
    pub fn glue_boundaried(&self, other: &BoundariedGraph) -> Result<BoundariedGraph> {
        if let Some((i, j)) = self.compatibility_mismatch(other) {
            if self.t() != other.t() {
                return Err(Error::Incompatible(format!("boundary sizes differ ({i} vs {j})")));
            }
            return Err(Error::Incompatible(format!(
                "boundary pair ({}, {}) is an edge on one side only",
                i + 1,
                j + 1
            )));
        }
        let mut g = self.graph.clone();
        let mut map = vec![0usize; other.n()];
        for v in 0..other.n() {
            map[v] = match other.position(v) {
                Some(p) => self.boundary[p],
                None => g.add_vertex(),
            };
        }
        for (u, v) in other.graph.edges() {
            g.add_edge(map[u], map[v]);
        }
        BoundariedGraph::new(g, self.boundary.clone())
    }

    pub fn glue(&self, other: &BoundariedGraph) -> Result<Graph> {
        Ok(self.glue_boundaried(other)?.graph)
    }

    /// Same graph, new boundary list.
    pub fn with_boundary(&self, boundary: Vec<usize>) -> Result<BoundariedGraph> {
        BoundariedGraph::new(self.graph.clone(), boundary)
    }

    /// Relabels so that the boundary is `0..t` in order and internal vertices
    /// follow in their original relative order.
    pub fn normalized(&self) -> BoundariedGraph {
        let mut order: Vec<usize> = self.boundary.clone();
        order.extend(self.internal_vertices());
        let g = self.graph.induced(&order);
        BoundariedGraph::new(g, (0..self.t()).collect()).unwrap()
    }

    pub fn canonical_form(&self) -> Result<CanonicalForm> {
        canon::canonical_form(self)
    }

    /// Multi-line text encoding: `t n m`, `B v1 .. vt`, then one `u v` line
    /// per edge, all ids 1-based.
    pub fn to_text(&self) -> String {
        self.encode("\n")
    }

    /// Single-line variant of [`to_text`](Self::to_text) with `;` separators.
    pub fn to_inline(&self) -> String {
        self.encode(";")
    }

    fn encode(&self, sep: &str) -> String {
        let mut parts = Vec::with_capacity(self.m() + 2);
        parts.push(format!("{} {} {}", self.t(), self.n(), self.m()));
        let mut b = String::from("B");
        for &v in &self.boundary {
            b.push(' ');
            b.push_str(&(v + 1).to_string());
        }
        parts.push(b);
        for (u, v) in self.graph.edges() {
            parts.push(format!("{} {}", u + 1, v + 1));
        }
        parts.join(sep)
    }

    /// Parses the encoding produced by [`to_text`](Self::to_text) or
    /// [`to_inline`](Self::to_inline).
    pub fn parse(text: &str) -> Result<BoundariedGraph> {
        let lines: Vec<&str> = text
            .split(['\n', ';'])
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('c'))
            .collect();
        Self::parse_lines(&lines)
    }

    /// Parses every encoding in `text` (used for pattern files holding
    /// several graphs one after another).
    pub fn parse_many(text: &str) -> Result<Vec<BoundariedGraph>> {
        let lines: Vec<&str> = text
            .split(['\n', ';'])
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('c'))
            .collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < lines.len() {
            let m = header(lines[i])?.2;
            let end = i + 2 + m;
            if end > lines.len() {
                return Err(Error::Parse("truncated boundaried graph".into()));
            }
            out.push(Self::parse_lines(&lines[i..end])?);
            i = end;
        }
        Ok(out)
    }

    fn parse_lines(lines: &[&str]) -> Result<BoundariedGraph> {
        let first = lines.first().ok_or_else(|| Error::Parse("empty boundaried graph".into()))?;
        let (t, n, m) = header(first)?;
        let bline = lines.get(1).ok_or_else(|| Error::Parse("missing boundary line".into()))?;
        let mut toks = bline.split_whitespace();
        if toks.next() != Some("B") {
            return Err(Error::Parse(format!("expected boundary line, got {bline:?}")));
        }
        let boundary = toks.map(|s| parse_vertex(s, n)).collect::<Result<Vec<_>>>()?;
        if boundary.len() != t {
            return Err(Error::Parse(format!("boundary has {} vertices, header says {t}", boundary.len())));
        }
        if lines.len() != 2 + m {
            return Err(Error::Parse(format!("expected {m} edge lines, found {}", lines.len() - 2)));
        }
        let mut g = Graph::new(n);
        for l in &lines[2..] {
            let mut it = l.split_whitespace();
            let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
                return Err(Error::Parse(format!("bad edge line {l:?}")));
            };
            let (u, v) = (parse_vertex(a, n)?, parse_vertex(b, n)?);
            if u == v {
                return Err(Error::Parse(format!("loop in edge line {l:?}")));
            }
            g.add_edge(u, v);
        }
        BoundariedGraph::new(g, boundary).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn header(line: &str) -> Result<(usize, usize, usize)> {
    let nums: Vec<usize> = line
        .split_whitespace()
        .map(|s| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad header {line:?}"))))
        .collect::<Result<_>>()?;
    match nums.as_slice() {
        &[t, n, m] if t <= n => Ok((t, n, m)),
        _ => Err(Error::Parse(format!("bad header {line:?}"))),
    }
}

fn parse_vertex(tok: &str, n: usize) -> Result<usize> {
    let v: usize = tok.parse().map_err(|_| Error::Parse(format!("bad vertex id {tok:?}")))?;
    if v == 0 || v > n {
        return Err(Error::Parse(format!("vertex id {v} out of range 1..={n}")));
    }
    Ok(v - 1)
}

impl fmt::Display for BoundariedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_inline())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_b_x_b() -> BoundariedGraph {
        BoundariedGraph::from_edges(2, 1, &[(0, 2), (2, 1)]).unwrap()
    }

    #[test]
    fn detail_examples() {
        assert_eq!(BoundariedGraph::boundary_only(3).detail(), 0);
        assert_eq!(BoundariedGraph::from_edges(2, 0, &[(0, 1)]).unwrap().detail(), 1);
        assert_eq!(path_b_x_b().detail(), 2);
    }

    #[test]
    fn compatibility() {
        let e = BoundariedGraph::from_edges(2, 0, &[(0, 1)]).unwrap();
        let iso = BoundariedGraph::boundary_only(2);
        assert!(e.compatible(&e.clone()));
        assert!(!e.compatible(&iso));
        assert_eq!(e.compatibility_mismatch(&iso), Some((0, 1)));
        assert!(path_b_x_b().compatible(&path_b_x_b()));
    }

    #[test]
    fn glue_examples() {
        let one = BoundariedGraph::boundary_only(1);
        let g = one.glue(&one).unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));

        let e = BoundariedGraph::from_edges(2, 0, &[(0, 1)]).unwrap();
        let g = e.glue(&e).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));

        let g = path_b_x_b().glue(&path_b_x_b()).unwrap();
        assert_eq!((g.n(), g.m()), (4, 4));
        assert!((0..4).all(|v| g.degree(v) == 2));
        assert!(g.is_connected());
    }

    #[test]
    fn glue_rejects_incompatible() {
        let e = BoundariedGraph::from_edges(2, 0, &[(0, 1)]).unwrap();
        let err = e.glue(&BoundariedGraph::boundary_only(2)).unwrap_err();
        assert!(err.to_string().contains("(1, 2)"), "{err}");
        assert!(e.glue(&BoundariedGraph::boundary_only(3)).is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = BoundariedGraph::new(
            Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap(),
            vec![3, 0],
        )
        .unwrap();
        let text = g.to_text();
        assert_eq!(text, "2 4 3\nB 4 1\n1 2\n2 3\n3 4");
        assert_eq!(BoundariedGraph::parse(&text).unwrap(), g);
        assert_eq!(BoundariedGraph::parse(&g.to_inline()).unwrap(), g);
    }

    #[test]
    fn parse_errors() {
        assert!(BoundariedGraph::parse("1 2 1\nB 3\n1 2").is_err());
        assert!(BoundariedGraph::parse("1 2 2\nB 1\n1 2").is_err());
        assert!(BoundariedGraph::parse("x").is_err());
        assert!(BoundariedGraph::parse("0 2 1\nB\n1 1").is_err());
    }

    #[test]
    fn parse_many_patterns() {
        let text = format!("{}\n{}", BoundariedGraph::unboundaried(Graph::complete(3)).to_text(),
            BoundariedGraph::unboundaried(Graph::cycle(4)).to_text());
        let gs = BoundariedGraph::parse_many(&text).unwrap();
        assert_eq!(gs.len(), 2);
        assert_eq!(gs[1].m(), 4);
    }

    #[test]
    fn named_graphs() {
        assert_eq!(Graph::petersen().m(), 15);
        assert!(Graph::petersen().adj.iter().all(|nb| nb.len() == 3));
        assert_eq!(Graph::complete_bipartite(3, 3).m(), 9);
        assert!(Graph::path(5).is_forest());
        assert!(!Graph::cycle(5).is_forest());
    }
}
