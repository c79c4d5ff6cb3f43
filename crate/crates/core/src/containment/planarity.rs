//! Planarity testing by path addition (Demoucron, Malgrange and Pertuiset),
//! run separately on every biconnected block.

use std::collections::HashSet;

use crate::graph::Graph;

pub fn is_planar(g: &Graph) -> bool {
    let n = g.n();
    if n < 5 {
        return true;
    }
    if g.m() > 3 * n - 6 {
        return false;
    }
    blocks(g).into_iter().all(|edges| block_is_planar(&edges))
}

/// Edge sets of the biconnected blocks.
pub fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, next neighbour index)
        let mut dfs: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut i)) = dfs.last_mut() {
            if *i < g.degree(v) {
                let w = g.neighbors(v)[*i];
                *i += 1;
                if disc[w] == usize::MAX {
                    stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    dfs.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                dfs.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let mut block = Vec::new();
                        while let Some(e) = stack.pop() {
                            block.push(e);
                            if e == (parent, v) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

fn block_is_planar(edges: &[(usize, usize)]) -> bool {
    let mut ids: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    ids.sort_unstable();
    ids.dedup();
    let n = ids.len();
    if n < 5 {
        return true;
    }
    if edges.len() > 3 * n - 6 {
        return false;
    }
    let local = |v: usize| ids.binary_search(&v).unwrap();
    let mut g = Graph::new(n);
    for &(u, v) in edges {
        g.add_edge(local(u), local(v));
    }
    Dmp::new(&g).run()
}

struct Dmp<'a> {
    g: &'a Graph,
    vin: Vec<bool>,
    ein: HashSet<(usize, usize)>,
    faces: Vec<Vec<usize>>,
}

struct Fragment {
    attachments: Vec<usize>,
    /// Vertices of the fragment not yet embedded (empty for a single chord).
    inner: Vec<usize>,
    chord: Option<(usize, usize)>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl<'a> Dmp<'a> {
    fn new(g: &'a Graph) -> Self {
        Dmp { g, vin: vec![false; g.n()], ein: HashSet::new(), faces: Vec::new() }
    }

    fn run(mut self) -> bool {
        let cycle = self.find_cycle();
        for i in 0..cycle.len() {
            self.embed_edge(cycle[i], cycle[(i + 1) % cycle.len()]);
        }
        self.faces = vec![cycle.clone(), cycle];
        let total = self.g.m();
        while self.ein.len() < total {
            let fragments = self.fragments();
            let mut members: Vec<Vec<bool>> = Vec::with_capacity(self.faces.len());
            for f in &self.faces {
                let mut m = vec![false; self.g.n()];
                for &v in f {
                    m[v] = true;
                }
                members.push(m);
            }
            let mut choice: Option<(usize, usize)> = None;
            for (fi, frag) in fragments.iter().enumerate() {
                let admissible: Vec<usize> = (0..self.faces.len())
                    .filter(|&f| frag.attachments.iter().all(|&a| members[f][a]))
                    .collect();
                match admissible.len() {
                    0 => return false,
                    1 => {
                        choice = Some((fi, admissible[0]));
                        break;
                    }
                    _ => {
                        if choice.is_none() {
                            choice = Some((fi, admissible[0]));
                        }
                    }
                }
            }
            let (fi, face) = choice.expect("an unembedded edge leaves a fragment");
            let path = self.fragment_path(&fragments[fi]);
            self.embed_path(face, &path);
        }
        true
    }

    fn find_cycle(&self) -> Vec<usize> {
        let n = self.g.n();
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![usize::MAX; n];
        let mut stack = vec![(0usize, 0usize)];
        depth[0] = 0;
        while let Some((v, i)) = stack.pop() {
            if i < self.g.degree(v) {
                stack.push((v, i + 1));
                let w = self.g.neighbors(v)[i];
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = v;
                    stack.push((w, 0));
                } else if w != parent[v] && depth[w] < depth[v] {
                    let mut cycle = vec![v];
                    let mut x = v;
                    while x != w {
                        x = parent[x];
                        cycle.push(x);
                    }
                    return cycle;
                }
            }
        }
        unreachable!("a biconnected block with at least three vertices has a cycle")
    }

    fn embed_edge(&mut self, u: usize, v: usize) {
        self.vin[u] = true;
        self.vin[v] = true;
        self.ein.insert(key(u, v));
    }

    fn fragments(&self) -> Vec<Fragment> {
        let n = self.g.n();
        let mut out = Vec::new();
        for (u, v) in self.g.edges() {
            if self.vin[u] && self.vin[v] && !self.ein.contains(&(u, v)) {
                out.push(Fragment { attachments: vec![u, v], inner: Vec::new(), chord: Some((u, v)) });
            }
        }
        let mut seen = vec![false; n];
        for s in 0..n {
            if self.vin[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut inner = vec![s];
            let mut att = Vec::new();
            let mut i = 0;
            while i < inner.len() {
                let v = inner[i];
                i += 1;
                for &w in self.g.neighbors(v) {
                    if self.vin[w] {
                        att.push(w);
                    } else if !seen[w] {
                        seen[w] = true;
                        inner.push(w);
                    }
                }
            }
            att.sort_unstable();
            att.dedup();
            out.push(Fragment { attachments: att, inner, chord: None });
        }
        out
    }

    /// A path through the fragment joining two distinct attachments.
    fn fragment_path(&self, frag: &Fragment) -> Vec<usize> {
        if let Some((u, v)) = frag.chord {
            return vec![u, v];
        }
        let a = frag.attachments[0];
        let n = self.g.n();
        let mut in_frag = vec![false; n];
        for &v in &frag.inner {
            in_frag[v] = true;
        }
        let mut parent = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        for &w in self.g.neighbors(a) {
            if in_frag[w] && parent[w] == usize::MAX {
                parent[w] = a;
                queue.push_back(w);
            }
        }
        while let Some(v) = queue.pop_front() {
            if let Some(&b) = self.g.neighbors(v).iter().find(|&&b| b != a && self.vin[b]) {
                let mut path = vec![b, v];
                let mut x = v;
                while parent[x] != a {
                    x = parent[x];
                    path.push(x);
                }
                path.push(a);
                path.reverse();
                return path;
            }
            for &w in self.g.neighbors(v) {
                if in_frag[w] && parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        unreachable!("fragments of a biconnected graph have two attachments")
    }

    fn embed_path(&mut self, face: usize, path: &[usize]) {
        for w in path.windows(2) {
            self.embed_edge(w[0], w[1]);
        }
        let f = std::mem::take(&mut self.faces[face]);
        let (a, b) = (path[0], path[path.len() - 1]);
        let i = f.iter().position(|&v| v == a).unwrap();
        let j = f.iter().position(|&v| v == b).unwrap();
        let len = f.len();
        let interior = &path[1..path.len() - 1];
        let mut f1 = Vec::new();
        let mut k = i;
        loop {
            f1.push(f[k]);
            if k == j {
                break;
            }
            k = (k + 1) % len;
        }
        f1.extend(interior.iter().rev());
        let mut f2 = Vec::new();
        let mut k = j;
        loop {
            f2.push(f[k]);
            if k == i {
                break;
            }
            k = (k + 1) % len;
        }
        f2.extend(interior.iter());
        self.faces[face] = f1;
        self.faces.push(f2);
    }
}
