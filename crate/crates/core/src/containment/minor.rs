//! Minor containment for small patterns.
//!
//! [`find_minor`] reduces the host (components, low-degree deletions and
//! degree-two suppressions that are safe for the pattern's minimum degree)
//! and then searches over labellings of host vertices by pattern vertices.
//! [`has_minor_by_closure`] is an independent decider that explores every
//! minor of a small host and is used to cross-check the search.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form_with_cap, CanonicalForm, MAX_CANON_VERTICES};
use crate::error::{Error, Result};
use crate::graph::{BoundariedGraph, Graph};

/// Default limit on pattern vertices.
pub const DEFAULT_PATTERN_CAP: usize = 8;

/// Largest host accepted by [`has_minor_by_closure`].
pub const CLOSURE_HOST_CAP: usize = 10;

/// Branch sets indexed by pattern vertex, plus one host edge per pattern edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorModel {
    pub branch_sets: Vec<Vec<usize>>,
    /// `(pattern edge, host edge)` pairs in the order of `pattern.edges()`.
    pub edge_witnesses: Vec<((usize, usize), (usize, usize))>,
}

impl MinorModel {
    pub fn validate(&self, host: &Graph, pattern: &Graph) -> Result<()> {
        let bad = |msg: String| Err(Error::Validation(msg));
        if self.branch_sets.len() != pattern.n() {
            return bad(format!("{} branch sets for {} pattern vertices", self.branch_sets.len(), pattern.n()));
        }
        let mut owner = vec![usize::MAX; host.n()];
        for (i, set) in self.branch_sets.iter().enumerate() {
            if set.is_empty() {
                return bad(format!("branch set {i} is empty"));
            }
            for &v in set {
                if v >= host.n() {
                    return bad(format!("branch set {i} names vertex {v} outside the host"));
                }
                if owner[v] != usize::MAX {
                    return bad(format!("vertex {v} lies in branch sets {} and {i}", owner[v]));
                }
                owner[v] = i;
            }
            if !host.induced(set).is_connected() {
                return bad(format!("branch set {i} is not connected"));
            }
        }
        let expected = pattern.edges();
        if self.edge_witnesses.len() != expected.len() {
            return bad("wrong number of edge witnesses".into());
        }
        for (&(pe, (a, b)), &want) in self.edge_witnesses.iter().zip(&expected) {
            if pe != want {
                return bad(format!("witness listed for {pe:?} instead of {want:?}"));
            }
            if a >= host.n() || b >= host.n() || !host.has_edge(a, b) {
                return bad(format!("witness ({a}, {b}) is not a host edge"));
            }
            let (i, j) = pe;
            let ok = (owner[a] == i && owner[b] == j) || (owner[a] == j && owner[b] == i);
            if !ok {
                return bad(format!("witness ({a}, {b}) does not join branch sets {i} and {j}"));
            }
        }
        Ok(())
    }
}

fn check_cap(pattern: &Graph, cap: usize) -> Result<()> {
    if pattern.n() > cap {
        return Err(Error::Budget(format!("pattern has {} vertices (cap {cap})", pattern.n())));
    }
    Ok(())
}

/// Decides whether `pattern` is a minor of `host`.
pub fn has_minor(host: &Graph, pattern: &Graph) -> Result<bool> {
    check_cap(pattern, DEFAULT_PATTERN_CAP)?;
    if let Some(answer) = quick_answer(host, pattern) {
        return Ok(answer);
    }
    Ok(search(host, pattern).is_some())
}

/// Like [`has_minor`] but returns a validated witness.
pub fn find_minor(host: &Graph, pattern: &Graph) -> Result<Option<MinorModel>> {
    find_minor_with_cap(host, pattern, DEFAULT_PATTERN_CAP)
}

pub fn find_minor_with_cap(host: &Graph, pattern: &Graph, cap: usize) -> Result<Option<MinorModel>> {
    check_cap(pattern, cap)?;
    if pattern.n() > host.n() || pattern.m() > host.m() {
        return Ok(None);
    }
    Ok(search(host, pattern))
}

/// Answers that need no search: size bounds and a few common patterns.
fn quick_answer(host: &Graph, pattern: &Graph) -> Option<bool> {
    let (k, pm) = (pattern.n(), pattern.m());
    if k > host.n() || pm > host.m() {
        return Some(false);
    }
    if pm == 0 {
        return Some(true);
    }
    if pm == 1 && k == 2 {
        return Some(true);
    }
    if k == 3 && pm == 3 {
        return Some(!host.is_forest());
    }
    if k == 4 && pm == 6 {
        // min degree three forces a K4 minor, so the reduction decides it
        return Some(reduce(host, 3).graph.n() > 0);
    }
    None
}

struct Reduced {
    graph: Graph,
    original: Vec<usize>,
    /// Interior vertices (original ids) of the host path behind a reduced
    /// edge `(a, b)`, `a < b`, listed from `a` to `b`.
    paths: HashMap<(usize, usize), Vec<usize>>,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn take_oriented(paths: &mut HashMap<(usize, usize), Vec<usize>>, a: usize, b: usize) -> Vec<usize> {
    let mut p = paths.remove(&key(a, b)).unwrap_or_default();
    if a > b {
        p.reverse();
    }
    p
}

/// Deletes vertices of degree below `min(min_degree, 2)` and, when
/// `min_degree >= 3`, suppresses degree-two vertices.
fn reduce(host: &Graph, min_degree: usize) -> Reduced {
    let n = host.n();
    let mut adj: Vec<Vec<usize>> = (0..n).map(|v| host.neighbors(v).to_vec()).collect();
    let mut alive = vec![true; n];
    let mut paths: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    let mut queue: Vec<usize> = (0..n).rev().collect();
    while let Some(v) = queue.pop() {
        if !alive[v] {
            continue;
        }
        let d = adj[v].len();
        if (d == 0 && min_degree >= 1) || (d == 1 && min_degree >= 2) {
            for w in std::mem::take(&mut adj[v]) {
                adj[w].retain(|&x| x != v);
                paths.remove(&key(v, w));
                queue.push(w);
            }
            alive[v] = false;
        } else if d == 2 && min_degree >= 3 {
            let (a, b) = (adj[v][0], adj[v][1]);
            adj[a].retain(|&x| x != v);
            adj[b].retain(|&x| x != v);
            let mut through = take_oriented(&mut paths, a, v);
            through.push(v);
            through.extend(take_oriented(&mut paths, v, b));
            if !adj[a].contains(&b) {
                adj[a].push(b);
                adj[b].push(a);
                if a > b {
                    through.reverse();
                }
                paths.insert(key(a, b), through);
            }
            adj[v].clear();
            alive[v] = false;
            queue.push(a);
            queue.push(b);
        }
    }
    let original: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in original.iter().enumerate() {
        index[v] = i;
    }
    let mut graph = Graph::new(original.len());
    for &v in &original {
        for &w in &adj[v] {
            if v < w {
                graph.add_edge(index[v], index[w]);
            }
        }
    }
    let paths = paths
        .into_iter()
        .map(|((a, b), p)| {
            let (x, y) = (index[a], index[b]);
            // index is monotone, so orientation is kept
            ((x, y), p)
        })
        .collect();
    Reduced { graph, original, paths }
}

fn search(host: &Graph, pattern: &Graph) -> Option<MinorModel> {
    let k = pattern.n();
    if k == 0 {
        return Some(MinorModel { branch_sets: Vec::new(), edge_witnesses: Vec::new() });
    }
    let reduced = reduce(host, pattern.min_degree());
    let g = &reduced.graph;
    let orbit_reps = orbit_representatives(pattern);
    let connected = pattern.is_connected();
    let regions: Vec<Vec<usize>> = if connected { g.components() } else { vec![(0..g.n()).collect()] };
    for region in regions {
        if region.len() < k {
            continue;
        }
        let sub = g.induced(&region);
        if sub.m() < pattern.m() {
            continue;
        }
        let mut s = LabelSearch::new(&sub, pattern, &orbit_reps);
        if s.run() {
            let labels: Vec<usize> = s.label.iter().map(|&l| l as usize).collect();
            return Some(lift(&reduced, &region, &sub, pattern, &labels));
        }
    }
    None
}

/// Pattern vertices that represent their automorphism orbit (smallest id).
fn orbit_representatives(pattern: &Graph) -> Vec<bool> {
    let k = pattern.n();
    let forms: Vec<Option<CanonicalForm>> = (0..k)
        .map(|v| {
            let bg = BoundariedGraph::new(pattern.clone(), vec![v]).ok()?;
            canonical_form_with_cap(&bg, MAX_CANON_VERTICES).ok()
        })
        .collect();
    (0..k).map(|v| forms[v].is_none() || (0..v).all(|u| forms[u] != forms[v])).collect()
}

const UNDECIDED: u8 = u8::MAX;
const UNUSED: u8 = u8::MAX - 1;

struct LabelSearch<'a> {
    g: &'a Graph,
    edges: Vec<(usize, usize)>,
    pattern_edges: Vec<(usize, usize)>,
    k: usize,
    orbit_reps: &'a [bool],
    order: Vec<usize>,
    label: Vec<u8>,
    used: Vec<usize>,
    undecided: usize,
    // scratch
    mark: Vec<u32>,
    stamp: u32,
    queue: Vec<usize>,
}

impl<'a> LabelSearch<'a> {
    fn new(g: &'a Graph, pattern: &Graph, orbit_reps: &'a [bool]) -> Self {
        let n = g.n();
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                order.push(v);
                for &w in g.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        q.push_back(w);
                    }
                }
            }
        }
        LabelSearch {
            g,
            edges: g.edges(),
            pattern_edges: pattern.edges(),
            k: pattern.n(),
            orbit_reps,
            order,
            label: vec![UNDECIDED; n],
            used: vec![0; pattern.n()],
            undecided: n,
            mark: vec![0; n],
            stamp: 0,
            queue: Vec::with_capacity(n),
        }
    }

    fn run(&mut self) -> bool {
        self.go(0)
    }

    fn go(&mut self, idx: usize) -> bool {
        if idx == self.order.len() {
            return true;
        }
        let v = self.order[idx];
        let any_used = self.used.iter().any(|&c| c > 0);
        let mut choices: Vec<u8> = Vec::with_capacity(self.k + 1);
        for &w in self.g.neighbors(v) {
            let l = self.label[w];
            if (l as usize) < self.k && !choices.contains(&l) {
                choices.push(l);
            }
        }
        for l in 0..self.k {
            if self.used[l] == 0 && (any_used || self.orbit_reps[l]) {
                choices.push(l as u8);
            }
        }
        choices.push(UNUSED);
        for l in 0..self.k {
            if self.used[l] > 0 && !choices.contains(&(l as u8)) {
                choices.push(l as u8);
            }
        }
        self.undecided -= 1;
        for c in choices {
            self.label[v] = c;
            if (c as usize) < self.k {
                self.used[c as usize] += 1;
            }
            if self.feasible() && self.go(idx + 1) {
                return true;
            }
            if (c as usize) < self.k {
                self.used[c as usize] -= 1;
            }
        }
        self.label[v] = UNDECIDED;
        self.undecided += 1;
        false
    }

    /// Necessary conditions for completing the labelling; exact once every
    /// vertex is decided.
    fn feasible(&mut self) -> bool {
        let missing = self.used.iter().filter(|&&c| c == 0).count();
        if missing > self.undecided {
            return false;
        }
        for l in 0..self.k {
            if self.used[l] >= 2 && !self.label_connected(l as u8) {
                return false;
            }
        }
        for &(i, j) in &self.pattern_edges {
            let (i, j) = (i as u8, j as u8);
            let ok = self.edges.iter().any(|&(a, b)| {
                let (la, lb) = (self.label[a], self.label[b]);
                ((la == i || la == UNDECIDED) && (lb == j || lb == UNDECIDED))
                    || ((la == j || la == UNDECIDED) && (lb == i || lb == UNDECIDED))
            });
            if !ok {
                return false;
            }
        }
        true
    }

    fn label_connected(&mut self, l: u8) -> bool {
        let start = match self.label.iter().position(|&x| x == l) {
            Some(s) => s,
            None => return true,
        };
        self.stamp += 1;
        let stamp = self.stamp;
        self.queue.clear();
        self.queue.push(start);
        self.mark[start] = stamp;
        let mut reached = 1;
        let mut i = 0;
        while i < self.queue.len() {
            let v = self.queue[i];
            i += 1;
            for &w in self.g.neighbors(v) {
                let lw = self.label[w];
                if self.mark[w] != stamp && (lw == l || lw == UNDECIDED) {
                    self.mark[w] = stamp;
                    if lw == l {
                        reached += 1;
                    }
                    self.queue.push(w);
                }
            }
        }
        reached == self.used[l as usize]
    }
}

/// Turns labels on a reduced region back into a model in the original host.
fn lift(reduced: &Reduced, region: &[usize], sub: &Graph, pattern: &Graph, labels: &[usize]) -> MinorModel {
    let k = pattern.n();
    let to_orig = |i: usize| reduced.original[region[i]];
    let path = |a: usize, b: usize| -> Vec<usize> {
        let (ra, rb) = (region[a], region[b]);
        let mut p = reduced.paths.get(&key(ra, rb)).cloned().unwrap_or_default();
        if ra > rb {
            p.reverse();
        }
        p
    };
    let mut sets: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (v, &l) in labels.iter().enumerate() {
        if l < k {
            sets[l].push(to_orig(v));
        }
    }
    for (a, b) in sub.edges() {
        if labels[a] < k && labels[a] == labels[b] {
            sets[labels[a]].extend(path(a, b));
        }
    }
    let mut witnesses = Vec::new();
    for (i, j) in pattern.edges() {
        let (a, b) = sub
            .edges()
            .into_iter()
            .find(|&(a, b)| (labels[a] == i && labels[b] == j) || (labels[a] == j && labels[b] == i))
            .expect("complete labelling realises every pattern edge");
        let p = path(a, b);
        let host_edge = match p.last() {
            None => (to_orig(a), to_orig(b)),
            Some(&last) => {
                sets[labels[a]].extend(p.iter().copied());
                (last, to_orig(b))
            }
        };
        witnesses.push(((i, j), host_edge));
    }
    for s in &mut sets {
        s.sort_unstable();
        s.dedup();
    }
    MinorModel { branch_sets: sets, edge_witnesses: witnesses }
}

/// Decides minor containment by exploring all deletions and contractions of
/// `host` with canonical deduplication. Only for small hosts.
pub fn has_minor_by_closure(host: &Graph, pattern: &Graph) -> Result<bool> {
    if host.n() > CLOSURE_HOST_CAP {
        return Err(Error::Budget(format!("closure host has {} vertices (cap {CLOSURE_HOST_CAP})", host.n())));
    }
    let (pn, pm) = (pattern.n(), pattern.m());
    if pn > host.n() || pm > host.m() {
        return Ok(false);
    }
    let form = |g: &Graph| canonical_form_with_cap(&BoundariedGraph::unboundaried(g.clone()), MAX_CANON_VERTICES);
    let target = form(pattern)?;
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    let mut queue = VecDeque::from([host.clone()]);
    seen.insert(form(host)?);
    while let Some(g) = queue.pop_front() {
        if g.n() == pn && g.m() == pm {
            if form(&g)? == target {
                return Ok(true);
            }
            continue;
        }
        let mut next = Vec::new();
        if g.n() > pn {
            for v in 0..g.n() {
                let mut removed = vec![false; g.n()];
                removed[v] = true;
                let h = g.without_vertices(&removed).0;
                if h.m() >= pm {
                    next.push(h);
                }
            }
            for (u, v) in g.edges() {
                let h = contract(&g, u, v);
                if h.m() >= pm {
                    next.push(h);
                }
            }
        }
        if g.m() > pm {
            for (u, v) in g.edges() {
                let mut h = g.clone();
                h.remove_edge(u, v);
                next.push(h);
            }
        }
        for h in next {
            if seen.insert(form(&h)?) {
                queue.push_back(h);
            }
        }
    }
    Ok(false)
}

/// Contracts edge `uv` into `u`; `v` is removed and later ids shift down.
pub fn contract(g: &Graph, u: usize, v: usize) -> Graph {
    let mut h = g.clone();
    for &w in g.neighbors(v) {
        if w != u {
            h.add_edge(u, w);
        }
    }
    let mut removed = vec![false; g.n()];
    removed[v] = true;
    h.without_vertices(&removed).0
}
