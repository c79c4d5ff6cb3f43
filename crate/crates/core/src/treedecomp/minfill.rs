use std::collections::BTreeSet;

use crate::graph::Graph;

use super::TreeDecomposition;

/// Decomposition induced by eliminating vertices in `order`. Bag `i` holds
/// `order[i]` and its neighbours at elimination time; its parent is the
/// earliest-eliminated of those neighbours. Components are chained together.
pub fn td_from_elimination(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    assert_eq!(order.len(), n, "elimination order must list every vertex");
    if n == 0 {
        return TreeDecomposition::new(0, vec![Vec::new()], Vec::new());
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(n - 1);
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for (a, &x) in nb.iter().enumerate() {
            adj[x].remove(&v);
            for &y in &nb[a + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        match nb.iter().map(|&x| pos[x]).min() {
            Some(p) => edges.push((i, p)),
            None => roots.push(i),
        }
        let mut bag = nb;
        bag.push(v);
        bags.push(bag);
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition::new(n, bags, edges)
}

/// Min-fill elimination ordering (ties broken by degree, then vertex id).
pub fn minfill_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in (0..n).filter(|&v| alive[v]) {
            let nb: Vec<usize> = adj[v].iter().copied().collect();
            let mut fill = 0;
            for (a, &x) in nb.iter().enumerate() {
                fill += nb[a + 1..].iter().filter(|&&y| !adj[x].contains(&y)).count();
            }
            let key = (fill, nb.len(), v);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        let v = best.expect("a live vertex").2;
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for (a, &x) in nb.iter().enumerate() {
            adj[x].remove(&v);
            for &y in &nb[a + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        adj[v].clear();
        alive[v] = false;
        order.push(v);
    }
    order
}

pub fn minfill_td(g: &Graph) -> TreeDecomposition {
    td_from_elimination(g, &minfill_order(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treedecomp::check_td;

    #[test]
    fn tree_width_one() {
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6)]).unwrap();
        let td = minfill_td(&g);
        assert!(check_td(&g, &td).is_empty());
        assert_eq!(td.width(), 1);
    }

    #[test]
    fn cycle_and_clique() {
        let c6 = Graph::cycle(6);
        let td = minfill_td(&c6);
        assert!(check_td(&c6, &td).is_empty());
        assert_eq!(td.width(), 2);
        let k5 = Graph::complete(5);
        assert_eq!(minfill_td(&k5).width(), 4);
    }

    #[test]
    fn disconnected_graph_gives_a_tree() {
        let g = Graph::from_edges(5, &[(0, 1), (3, 4)]).unwrap();
        let td = minfill_td(&g);
        assert!(check_td(&g, &td).is_empty());
        assert_eq!(td.width(), 1);
    }
}
