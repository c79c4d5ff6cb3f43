use crate::containment::is_f_minor_free;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::graph::Graph;

pub const ORACLE_CAP: usize = 16;

fn remainder(g: &Graph, set: &[usize]) -> Graph {
    let mut removed = vec![false; g.n()];
    for &v in set {
        removed[v] = true;
    }
    g.without_vertices(&removed).0
}

/// Whether deleting `set` leaves a graph without any pattern as a minor.
pub fn verify_deletion_set(g: &Graph, family: &Family, set: &[usize]) -> Result<bool> {
    if set.iter().any(|&v| v >= g.n()) {
        return Ok(false);
    }
    is_f_minor_free(&remainder(g, set), family.patterns())
}

/// Minimum deletion set by trying sets in order of increasing size.
pub fn oracle_solve(g: &Graph, family: &Family) -> Result<(usize, Vec<usize>)> {
    oracle_solve_with_cap(g, family, ORACLE_CAP)
}

pub fn oracle_solve_with_cap(g: &Graph, family: &Family, cap: usize) -> Result<(usize, Vec<usize>)> {
    let n = g.n();
    if n > cap {
        return Err(Error::Budget(format!("oracle takes at most {cap} vertices, graph has {n}")));
    }
    for k in 0..=n {
        let mut set: Vec<usize> = (0..k).collect();
        loop {
            if verify_deletion_set(g, family, &set)? {
                return Ok((k, set));
            }
            // Next k-subset in lexicographic order.
            let mut i = k;
            while i > 0 && set[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            set[i - 1] += 1;
            for j in i..k {
                set[j] = set[j - 1] + 1;
            }
        }
    }
    unreachable!("deleting every vertex always succeeds")
}

/// Deletes highest-degree vertices until the graph is free, then restores
/// any deleted vertex that is not needed.
pub fn greedy_deletion_set(g: &Graph, family: &Family) -> Result<Vec<usize>> {
    let mut removed = vec![false; g.n()];
    loop {
        let (h, map) = g.without_vertices(&removed);
        if is_f_minor_free(&h, family.patterns())? {
            break;
        }
        let v = (0..h.n()).max_by_key(|&v| (h.degree(v), std::cmp::Reverse(v))).expect("nonempty");
        removed[map[v]] = true;
    }
    for v in 0..g.n() {
        if removed[v] {
            removed[v] = false;
            if !is_f_minor_free(&g.without_vertices(&removed).0, family.patterns())? {
                removed[v] = true;
            }
        }
    }
    Ok((0..g.n()).filter(|&v| removed[v]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(oracle_solve(&Graph::path(3), &Family::vertex_cover()).unwrap(), (1, vec![1]));
        assert_eq!(oracle_solve(&Graph::complete(4), &Family::feedback_vertex_set()).unwrap().0, 2);
        assert_eq!(oracle_solve(&Graph::new(6), &Family::planarization()).unwrap().0, 0);
        assert_eq!(oracle_solve(&Graph::complete(6), &Family::planarization()).unwrap().0, 2);
        assert!(oracle_solve(&Graph::new(17), &Family::vertex_cover()).is_err());
    }

    #[test]
    fn greedy_is_feasible() {
        let g = Graph::petersen();
        let fam = Family::feedback_vertex_set();
        let s = greedy_deletion_set(&g, &fam).unwrap();
        assert!(verify_deletion_set(&g, &fam, &s).unwrap());
        assert!(s.len() >= oracle_solve(&g, &fam).unwrap().0);
    }
}
