//! Enumeration of all boundaried graphs with boundary `[t]` and detail at
//! most `d`, up to boundary-fixing isomorphism.

use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

use crate::canon::{canonical_graph, CanonicalForm, MAX_CANON_VERTICES};
use crate::error::{Error, Result};
use crate::graph::BoundariedGraph;

const CACHE_VERSION: u32 = 1;

/// Environment variable naming the directory for universe and table files.
pub const CACHE_DIR_ENV: &str = "FMDEL_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UniverseLimits {
    pub max_t: usize,
    pub max_d: usize,
    /// Upper bound on labelled graphs the enumeration may visit.
    pub max_estimate: u128,
}

impl Default for UniverseLimits {
    fn default() -> Self {
        UniverseLimits { max_t: 4, max_d: 4, max_estimate: 2_000_000 }
    }
}

#[derive(Debug)]
pub struct PatternUniverse {
    t: usize,
    d: usize,
    patterns: Vec<BoundariedGraph>,
    forms: Vec<CanonicalForm>,
    index: HashMap<CanonicalForm, usize>,
    children: Vec<Vec<usize>>,
    by_size: Vec<usize>,
}

impl PatternUniverse {
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Patterns in canonical order, each with boundary `0..t`.
    pub fn patterns(&self) -> &[BoundariedGraph] {
        &self.patterns
    }

    pub fn pattern(&self, i: usize) -> &BoundariedGraph {
        &self.patterns[i]
    }

    pub fn form(&self, i: usize) -> &CanonicalForm {
        &self.forms[i]
    }

    pub fn index_of(&self, form: &CanonicalForm) -> Option<usize> {
        self.index.get(form).copied()
    }

    /// Patterns one reduction step below pattern `i` (delete an internal
    /// vertex, delete an edge, dissolve an internal degree-two vertex).
    pub fn children(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    /// Indices ordered by `n + m`, so children precede parents.
    pub fn by_size(&self) -> &[usize] {
        &self.by_size
    }

    fn from_patterns(t: usize, d: usize, mut found: Vec<(CanonicalForm, BoundariedGraph)>) -> Result<Self> {
        found.sort_by(|a, b| a.0.cmp(&b.0));
        found.dedup_by(|a, b| a.0 == b.0);
        let (forms, patterns): (Vec<_>, Vec<_>) = found.into_iter().unzip();
        let index: HashMap<CanonicalForm, usize> = forms.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let mut children = Vec::with_capacity(patterns.len());
        for p in &patterns {
            let mut c = Vec::new();
            for r in one_step_reductions(p) {
                let (_, f) = canonical_graph(&r, MAX_CANON_VERTICES)?;
                let i = *index
                    .get(&f)
                    .ok_or_else(|| Error::Validation("universe is not closed under reductions".into()))?;
                c.push(i);
            }
            c.sort_unstable();
            c.dedup();
            children.push(c);
        }
        let mut by_size: Vec<usize> = (0..patterns.len()).collect();
        by_size.sort_by_key(|&i| (patterns[i].n() + patterns[i].m(), i));
        Ok(PatternUniverse { t, d, patterns, forms, index, children, by_size })
    }

    fn to_file_text(&self) -> String {
        let mut s = format!("U {CACHE_VERSION} {} {} {}\n", self.t, self.d, self.len());
        for p in &self.patterns {
            s.push_str(&p.to_inline());
            s.push('\n');
        }
        s
    }

    fn from_file_text(text: &str, t: usize, d: usize) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty universe file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let expect = [
            "U".to_string(),
            CACHE_VERSION.to_string(),
            t.to_string(),
            d.to_string(),
        ];
        if fields.len() != 5 || fields[..4] != expect.iter().map(String::as_str).collect::<Vec<_>>()[..] {
            return Err(Error::Parse(format!("unexpected universe header {header:?}")));
        }
        let count: usize = fields[4].parse().map_err(|_| Error::Parse("bad universe count".into()))?;
        let mut found = Vec::with_capacity(count);
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let g = BoundariedGraph::parse(line)?;
            let (cg, f) = canonical_graph(&g, MAX_CANON_VERTICES)?;
            found.push((f, cg));
        }
        if found.len() != count {
            return Err(Error::Parse(format!("universe file lists {} of {count} patterns", found.len())));
        }
        Self::from_patterns(t, d, found)
    }
}

fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut r = 1u128;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Number of labelled graphs the enumeration for `(t, d)` visits.
pub fn estimate(t: usize, d: usize) -> u128 {
    let mut total = 0u128;
    for k in 0..=d {
        let n = (t + k) as u128;
        let pairs = n * n.saturating_sub(1) / 2;
        for e in 0..=d {
            total = total.saturating_add(binom(pairs, e as u128));
        }
    }
    total
}

pub fn check_feasible(t: usize, d: usize, limits: &UniverseLimits) -> Result<()> {
    let est = estimate(t, d);
    if t > limits.max_t || d > limits.max_d || est > limits.max_estimate {
        return Err(Error::Budget(format!(
            "pattern universe (t={t}, d={d}) is outside the feasible range (t <= {}, d <= {}); estimated {est} labelled graphs",
            limits.max_t, limits.max_d
        )));
    }
    Ok(())
}

fn registry() -> &'static Mutex<HashMap<(usize, usize), Arc<PatternUniverse>>> {
    static REG: OnceLock<Mutex<HashMap<(usize, usize), Arc<PatternUniverse>>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn pattern_universe(t: usize, d: usize) -> Result<Arc<PatternUniverse>> {
    pattern_universe_with_limits(t, d, &UniverseLimits::default())
}

/// Returns the cached universe for `(t, d)`, building it (or loading it from
/// the cache directory) on first use.
pub fn pattern_universe_with_limits(t: usize, d: usize, limits: &UniverseLimits) -> Result<Arc<PatternUniverse>> {
    check_feasible(t, d, limits)?;
    if let Some(u) = registry().lock().unwrap().get(&(t, d)) {
        return Ok(u.clone());
    }
    let u = Arc::new(load_or_build(t, d)?);
    let mut reg = registry().lock().unwrap();
    Ok(reg.entry((t, d)).or_insert(u).clone())
}

fn cache_path(t: usize, d: usize) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_DIR_ENV)?;
    Some(PathBuf::from(dir).join(format!("universe-t{t}-d{d}.txt")))
}

fn load_or_build(t: usize, d: usize) -> Result<PatternUniverse> {
    if let Some(path) = cache_path(t, d) {
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(u) = PatternUniverse::from_file_text(&text, t, d) {
                return Ok(u);
            }
        }
        let u = build(t, d)?;
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(&path, u.to_file_text())?;
        return Ok(u);
    }
    build(t, d)
}

/// Builds the universe without consulting any cache.
pub fn build(t: usize, d: usize) -> Result<PatternUniverse> {
    let mut seen: HashMap<CanonicalForm, BoundariedGraph> = HashMap::new();
    for k in 0..=d {
        let n = t + k;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut chosen = Vec::new();
        let mut err = None;
        subsets(&pairs, 0, d, &mut chosen, &mut |edges| {
            if err.is_some() {
                return;
            }
            let g = BoundariedGraph::from_edges(t, k, edges).expect("pairs are in range");
            match canonical_graph(&g, MAX_CANON_VERTICES) {
                Ok((cg, f)) => {
                    seen.entry(f).or_insert(cg);
                }
                Err(e) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    PatternUniverse::from_patterns(t, d, seen.into_iter().collect())
}

fn subsets<F: FnMut(&[(usize, usize)])>(
    pairs: &[(usize, usize)],
    start: usize,
    left: usize,
    chosen: &mut Vec<(usize, usize)>,
    f: &mut F,
) {
    f(chosen);
    if left == 0 {
        return;
    }
    for i in start..pairs.len() {
        chosen.push(pairs[i]);
        subsets(pairs, i + 1, left - 1, chosen, f);
        chosen.pop();
    }
}

/// Graphs obtained from `g` by one topological-minor reduction step.
pub fn one_step_reductions(g: &BoundariedGraph) -> Vec<BoundariedGraph> {
    let mut out = Vec::new();
    let graph = g.graph();
    for v in g.internal_vertices() {
        let mut removed = vec![false; g.n()];
        removed[v] = true;
        out.push(delete_vertices(g, &removed));
    }
    for (u, v) in graph.edges() {
        let mut h = graph.clone();
        h.remove_edge(u, v);
        out.push(BoundariedGraph::new(h, g.boundary().to_vec()).unwrap());
    }
    for v in g.internal_vertices() {
        if graph.degree(v) == 2 {
            let (a, b) = (graph.neighbors(v)[0], graph.neighbors(v)[1]);
            let mut h = graph.clone();
            h.add_edge(a, b);
            let mut removed = vec![false; g.n()];
            removed[v] = true;
            let hb = BoundariedGraph::new(h, g.boundary().to_vec()).unwrap();
            out.push(delete_vertices(&hb, &removed));
        }
    }
    out
}

/// Deletes internal vertices, keeping the boundary order.
pub fn delete_vertices(g: &BoundariedGraph, removed: &[bool]) -> BoundariedGraph {
    let (h, keep) = g.graph().without_vertices(removed);
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in keep.iter().enumerate() {
        index[v] = i;
    }
    let boundary = g.boundary().iter().map(|&b| index[b]).collect();
    BoundariedGraph::new(h, boundary).expect("boundary vertices are never removed")
}
