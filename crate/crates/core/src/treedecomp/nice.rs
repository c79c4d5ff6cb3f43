use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::{check_td, TreeDecomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NiceKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NiceNode {
    pub kind: NiceKind,
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Nodes are stored children-before-parent; the last node is the root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NiceTreeDecomposition {
    pub n: usize,
    pub nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes.iter().map(|x| x.bag.len()).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn count(&self, pred: impl Fn(&NiceKind) -> bool) -> usize {
        self.nodes.iter().filter(|x| pred(&x.kind)).count()
    }

    /// Structural invariants: node kinds agree with bags and children, and
    /// the root bag is empty.
    pub fn check_structure(&self) -> Result<()> {
        let bad = |i: usize, msg: &str| Err(Error::Validation(format!("nice node {i}: {msg}")));
        if self.nodes.is_empty() {
            return Err(Error::Validation("nice decomposition has no nodes".into()));
        }
        let mut parent = vec![None; self.nodes.len()];
        for (i, x) in self.nodes.iter().enumerate() {
            if x.bag.windows(2).any(|w| w[0] >= w[1]) {
                return bad(i, "bag not sorted");
            }
            for &c in &x.children {
                if c >= i {
                    return bad(i, "child stored after parent");
                }
                if parent[c].replace(i).is_some() {
                    return bad(c, "node has two parents");
                }
            }
            let child_bag = |k: usize| &self.nodes[x.children[k]].bag;
            match x.kind {
                NiceKind::Leaf => {
                    if !x.children.is_empty() || !x.bag.is_empty() {
                        return bad(i, "leaf must be childless with an empty bag");
                    }
                }
                NiceKind::Introduce(v) | NiceKind::Forget(v) => {
                    if x.children.len() != 1 {
                        return bad(i, "introduce/forget needs exactly one child");
                    }
                    let (big, small) = match x.kind {
                        NiceKind::Introduce(_) => (&x.bag, child_bag(0)),
                        _ => (child_bag(0), &x.bag),
                    };
                    let mut expect = small.clone();
                    if expect.binary_search(&v).is_ok() {
                        return bad(i, "vertex already present");
                    }
                    let p = expect.binary_search(&v).unwrap_err();
                    expect.insert(p, v);
                    if &expect != big {
                        return bad(i, "bags differ by more than the named vertex");
                    }
                }
                NiceKind::Join => {
                    if x.children.len() != 2 || child_bag(0) != &x.bag || child_bag(1) != &x.bag {
                        return bad(i, "join needs two children with equal bags");
                    }
                }
            }
        }
        let root = self.root();
        if !self.nodes[root].bag.is_empty() {
            return bad(root, "root bag is not empty");
        }
        if (0..root).any(|i| parent[i].is_none()) {
            return Err(Error::Validation("nice decomposition is not connected".into()));
        }
        Ok(())
    }

    /// The underlying plain decomposition.
    pub fn to_td(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|x| x.bag.clone()).collect();
        let edges = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(i, x)| x.children.iter().map(move |&c| (c, i)))
            .collect();
        TreeDecomposition::new(self.n, bags, edges)
    }

    /// Structural invariants plus validity as a decomposition of `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        self.check_structure()?;
        super::validate_td(g, &self.to_td())
    }
}

/// Merges nodes whose bag is contained in a neighbour's bag.
fn drop_subset_bags(td: &TreeDecomposition) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let k = td.bags.len();
    let mut bags = td.bags.clone();
    let mut adj: Vec<Vec<usize>> = td.tree_adjacency();
    let mut alive = vec![true; k];
    let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
    let mut changed = true;
    while changed {
        changed = false;
        for a in 0..k {
            if !alive[a] {
                continue;
            }
            let Some(&b) = adj[a].iter().find(|&&b| subset(&bags[a], &bags[b])) else {
                continue;
            };
            // Contract a into b.
            alive[a] = false;
            let nbrs = std::mem::take(&mut adj[a]);
            adj[b].retain(|&x| x != a);
            for &x in &nbrs {
                if x != b {
                    adj[x].retain(|&y| y != a);
                    adj[x].push(b);
                    adj[b].push(x);
                }
            }
            bags[a].clear();
            changed = true;
        }
    }
    let mut id = vec![usize::MAX; k];
    let mut out_bags = Vec::new();
    for a in 0..k {
        if alive[a] {
            id[a] = out_bags.len();
            out_bags.push(bags[a].clone());
        }
    }
    let mut out_adj = vec![Vec::new(); out_bags.len()];
    for a in 0..k {
        if alive[a] {
            out_adj[id[a]] = adj[a].iter().map(|&b| id[b]).collect();
        }
    }
    (out_bags, out_adj)
}

struct Builder {
    nodes: Vec<NiceNode>,
}

impl Builder {
    fn push(&mut self, kind: NiceKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    /// Forget then introduce, one vertex at a time, from `from`'s bag to `to`.
    fn transition(&mut self, mut at: usize, to: &[usize]) -> usize {
        let from = self.nodes[at].bag.clone();
        let mut bag = from.clone();
        for &v in from.iter().filter(|v| to.binary_search(v).is_err()) {
            bag.retain(|&x| x != v);
            at = self.push(NiceKind::Forget(v), bag.clone(), vec![at]);
        }
        for &v in to.iter().filter(|v| from.binary_search(v).is_err()) {
            let p = bag.binary_search(&v).unwrap_err();
            bag.insert(p, v);
            at = self.push(NiceKind::Introduce(v), bag.clone(), vec![at]);
        }
        at
    }
}

/// Converts a decomposition into nice form rooted at an empty bag.
pub fn to_nice(td: &TreeDecomposition) -> Result<NiceTreeDecomposition> {
    if !td.is_tree() {
        return Err(Error::Validation("input decomposition is not a tree".into()));
    }
    if td.bags.iter().flatten().any(|&v| v >= td.n) {
        return Err(Error::Validation("bag vertex out of range".into()));
    }
    let (bags, adj) = drop_subset_bags(td);
    let mut b = Builder { nodes: Vec::new() };
    // Iterative post-order from node 0.
    let k = bags.len();
    let mut parent = vec![usize::MAX; k];
    let mut order = Vec::with_capacity(k);
    let mut stack = vec![0];
    parent[0] = 0;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in &adj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let mut built = vec![usize::MAX; k];
    for &x in order.iter().rev() {
        let mut branches: Vec<usize> = Vec::new();
        let mut kids: Vec<usize> = adj[x].iter().copied().filter(|&y| x == 0 || y != parent[x]).collect();
        kids.sort_unstable();
        for y in kids {
            branches.push(b.transition(built[y], &bags[x]));
        }
        if branches.is_empty() {
            let leaf = b.push(NiceKind::Leaf, Vec::new(), Vec::new());
            branches.push(b.transition(leaf, &bags[x]));
        }
        let mut acc = branches[0];
        for &other in &branches[1..] {
            acc = b.push(NiceKind::Join, bags[x].clone(), vec![acc, other]);
        }
        built[x] = acc;
    }
    let top = b.transition(built[0], &[]);
    debug_assert_eq!(top, b.nodes.len() - 1);
    let nice = NiceTreeDecomposition { n: td.n, nodes: b.nodes };
    debug_assert!(nice.check_structure().is_ok());
    Ok(nice)
}

/// Converts and validates against `g` in one step.
pub fn to_nice_for(g: &Graph, td: &TreeDecomposition) -> Result<NiceTreeDecomposition> {
    let v = check_td(g, td);
    if !v.is_empty() {
        return Err(Error::Validation(v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")));
    }
    to_nice(td)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_bag_chain() {
        let td = TreeDecomposition::new(2, vec![vec![0, 1]], vec![]);
        let nice = to_nice(&td).unwrap();
        let kinds: Vec<NiceKind> = nice.nodes.iter().map(|x| x.kind).collect();
        assert_eq!(
            kinds,
            vec![
                NiceKind::Leaf,
                NiceKind::Introduce(0),
                NiceKind::Introduce(1),
                NiceKind::Forget(0),
                NiceKind::Forget(1)
            ]
        );
        assert_eq!(nice.width(), 1);
    }

    #[test]
    fn path_has_no_join() {
        let g = Graph::path(4);
        let td = TreeDecomposition::new(4, vec![vec![0, 1], vec![1, 2], vec![2, 3]], vec![(0, 1), (1, 2)]);
        let nice = to_nice(&td).unwrap();
        nice.validate(&g).unwrap();
        assert_eq!(nice.count(|k| *k == NiceKind::Join), 0);
        assert_eq!(nice.width(), 1);
    }

    #[test]
    fn branching_node_gives_join() {
        let g = Graph::star(3);
        let td = TreeDecomposition::new(
            4,
            vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 3]],
            vec![(0, 1), (0, 2), (0, 3)],
        );
        let nice = to_nice(&td).unwrap();
        nice.validate(&g).unwrap();
        assert!(nice.count(|k| *k == NiceKind::Join) >= 1);
        assert_eq!(nice.width(), 1);
    }

    #[test]
    fn rejects_non_tree() {
        let td = TreeDecomposition::new(2, vec![vec![0], vec![1]], vec![]);
        assert!(to_nice(&td).is_err());
    }
}
