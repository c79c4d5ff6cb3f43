//! Tree decompositions: validation, PACE I/O, exact and heuristic
//! construction, and conversion to nice form.
//!
//! The solver runs on nice tree decompositions rather than branch
//! decompositions; the state stored at a separator is the same boundaried
//! graph either way.

pub mod exact;
pub mod minfill;
pub mod nice;
pub mod pace;

pub use exact::exact_tw;
pub use minfill::{minfill_td, td_from_elimination};
pub use nice::{to_nice, to_nice_for, NiceKind, NiceNode, NiceTreeDecomposition};
pub use pace::{emit_gr, emit_td, parse_gr, parse_gr_with_warnings, parse_td};

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Bags (sorted vertex lists) on the nodes of a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub n: usize,
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(n: usize, mut bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Self {
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        TreeDecomposition { n, bags, edges }
    }

    /// A single bag holding every vertex.
    pub fn trivial(n: usize) -> Self {
        TreeDecomposition::new(n, vec![(0..n).collect()], Vec::new())
    }

    /// Largest bag size minus one (`-1` is reported as 0 for empty bags).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            if a < adj.len() && b < adj.len() {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        adj
    }

    /// Whether the node/edge structure is a tree.
    pub fn is_tree(&self) -> bool {
        let k = self.bags.len();
        if k == 0 || self.edges.len() != k - 1 {
            return false;
        }
        let adj = self.tree_adjacency();
        let mut seen = vec![false; k];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == k
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotATree,
    VertexOutOfRange(usize),
    UncoveredVertex(usize),
    UncoveredEdge(usize, usize),
    /// The bags holding this vertex do not form a subtree.
    Disconnected(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree => write!(f, "decomposition is not a tree"),
            Violation::VertexOutOfRange(v) => write!(f, "bag vertex {} is out of range", v + 1),
            Violation::UncoveredVertex(v) => write!(f, "vertex {} is in no bag", v + 1),
            Violation::UncoveredEdge(u, v) => write!(f, "edge {{{}, {}}} is in no bag", u + 1, v + 1),
            Violation::Disconnected(v) => write!(f, "bags containing vertex {} are not connected", v + 1),
        }
    }
}

/// Checks the decomposition against `g`, reporting the first violation of
/// each kind (empty when valid).
pub fn check_td(g: &Graph, td: &TreeDecomposition) -> Vec<Violation> {
    let mut out = Vec::new();
    if !td.is_tree() {
        out.push(Violation::NotATree);
    }
    let n = g.n();
    if let Some(&v) = td.bags.iter().flatten().find(|&&v| v >= n) {
        out.push(Violation::VertexOutOfRange(v));
        return out;
    }
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, b) in td.bags.iter().enumerate() {
        for &v in b {
            holders[v].push(i);
        }
    }
    if let Some(v) = (0..n).find(|&v| holders[v].is_empty()) {
        out.push(Violation::UncoveredVertex(v));
    }
    for (u, v) in g.edges() {
        let covered = holders[u].iter().any(|&i| td.bags[i].binary_search(&v).is_ok());
        if !covered {
            out.push(Violation::UncoveredEdge(u, v));
            break;
        }
    }
    let adj = td.tree_adjacency();
    let mut in_bag = vec![false; td.bags.len()];
    for v in 0..n {
        if holders[v].len() <= 1 {
            continue;
        }
        for &i in &holders[v] {
            in_bag[i] = true;
        }
        let mut seen = vec![false; td.bags.len()];
        let mut stack = vec![holders[v][0]];
        seen[holders[v][0]] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if in_bag[y] && !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        for &i in &holders[v] {
            in_bag[i] = false;
        }
        if count != holders[v].len() {
            out.push(Violation::Disconnected(v));
            break;
        }
    }
    out
}

/// [`check_td`] as a `Result`, naming every reported violation.
pub fn validate_td(g: &Graph, td: &TreeDecomposition) -> Result<()> {
    if td.n != g.n() {
        return Err(Error::Validation(format!("decomposition is for {} vertices, graph has {}", td.n, g.n())));
    }
    let v = check_td(g, td);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_is_valid() {
        let g = Graph::petersen();
        let td = TreeDecomposition::trivial(10);
        assert!(check_td(&g, &td).is_empty());
        assert_eq!(td.width(), 9);
    }

    #[test]
    fn uncovered_edge_is_named() {
        let g = Graph::complete(3);
        let td = TreeDecomposition::new(3, vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]);
        assert_eq!(check_td(&g, &td), vec![Violation::UncoveredEdge(0, 2)]);
        let err = validate_td(&g, &td).unwrap_err().to_string();
        assert!(err.contains("{1, 3}"));
    }

    #[test]
    fn disconnected_occurrence() {
        let g = Graph::path(3);
        let td = TreeDecomposition::new(3, vec![vec![0, 1], vec![1, 2], vec![0]], vec![(0, 1), (1, 2)]);
        assert_eq!(check_td(&g, &td), vec![Violation::Disconnected(0)]);
    }

    #[test]
    fn not_a_tree() {
        let g = Graph::path(2);
        let td = TreeDecomposition::new(2, vec![vec![0, 1], vec![1]], vec![]);
        assert_eq!(check_td(&g, &td), vec![Violation::NotATree, Violation::Disconnected(1)]);
    }
}
