//! Faces of a straight-line plane graph given vertex coordinates.

use crate::graph::Graph;

/// Face boundary walks, each as a vertex sequence. The face with the
/// largest enclosed area is the outer face and is returned separately.
pub fn faces(g: &Graph, pos: &[(f64, f64)]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = g.n();
    let rot: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut nb = g.neighbors(v).to_vec();
            nb.sort_by(|&a, &b| {
                let ang = |u: usize| (pos[u].1 - pos[v].1).atan2(pos[u].0 - pos[v].0);
                ang(a).partial_cmp(&ang(b)).unwrap()
            });
            nb
        })
        .collect();
    let mut used: Vec<Vec<bool>> = rot.iter().map(|r| vec![false; r.len()]).collect();
    let mut walks = Vec::new();
    for s in 0..n {
        for i in 0..rot[s].len() {
            if used[s][i] {
                continue;
            }
            let mut walk = Vec::new();
            let (mut u, mut k) = (s, i);
            while !used[u][k] {
                used[u][k] = true;
                walk.push(u);
                let v = rot[u][k];
                let back = rot[v].iter().position(|&x| x == u).unwrap();
                let d = rot[v].len();
                k = (back + d - 1) % d;
                u = v;
            }
            walks.push(walk);
        }
    }
    let area = |w: &Vec<usize>| {
        let mut a = 0.0;
        for i in 0..w.len() {
            let (p, q) = (pos[w[i]], pos[w[(i + 1) % w.len()]]);
            a += p.0 * q.1 - q.0 * p.1;
        }
        (a / 2.0).abs()
    };
    let outer = (0..walks.len())
        .max_by(|&a, &b| area(&walks[a]).partial_cmp(&area(&walks[b])).unwrap())
        .expect("graph has an edge");
    let outer_walk = walks.swap_remove(outer);
    (outer_walk, walks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_with_diagonal() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let pos = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        let (outer, inner) = faces(&g, &pos);
        assert_eq!(outer.len(), 4);
        assert_eq!(inner.len(), 2);
        assert!(inner.iter().all(|f| f.len() == 3));
    }
}
