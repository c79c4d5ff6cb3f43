//! Exact minimum-deletion DP over nice tree decompositions.
//!
//! A state at a node is a set of surviving bag vertices together with a
//! boundaried graph summarising the surviving part of the processed
//! subgraph, its boundary being the survivors in vertex order. Compression
//! replaces that graph by the representative of its folio class, so the
//! number of distinct states per node is bounded by the number of classes.
//!
//! Deletions are charged at Introduce nodes. Both sides of a Join charge the
//! deleted bag vertices, so the Join subtracts them once. Edges enter the
//! state graph at the Introduce of their later endpoint.

pub mod compress;
pub mod oracle;

pub use compress::{Compressed, Compression, Compressor, StateKey};
pub use oracle::{greedy_deletion_set, oracle_solve, oracle_solve_with_cap, verify_deletion_set, ORACLE_CAP};

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::graph::{BoundariedGraph, Graph};
use crate::representatives::probe::union_glue;
use crate::treedecomp::{NiceKind, NiceTreeDecomposition};

pub const DEFAULT_MAX_STATES: usize = 2_000_000;

#[derive(Clone, Debug, Serialize)]
pub struct SolveOptions {
    /// Folio detail; defaults to the family's `h`.
    pub d: Option<usize>,
    pub compression: Compression,
    /// Drop a state when another with the same survivors and boundary edges
    /// has a smaller-or-equal folio and no larger cost.
    pub dominance: bool,
    /// Drop states whose cost exceeds a greedy solution's size.
    pub upper_bound: bool,
    /// Keep back-pointers and return a deletion set.
    pub recover: bool,
    pub max_states: usize,
    #[doc(hidden)]
    pub inject_cost_fault: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            d: None,
            compression: Compression::Folio,
            dominance: true,
            upper_bound: true,
            recover: true,
            max_states: DEFAULT_MAX_STATES,
            inject_cost_fault: false,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SolveStats {
    pub nodes: usize,
    pub states_max: usize,
    pub states_total: u64,
    pub compress_hits: u64,
    pub compress_calls: u64,
    pub table_inserts: u64,
    pub dead_pruned: u64,
    pub dominated: u64,
    pub bound_pruned: u64,
    pub fallback: u64,
    pub upper_bound: Option<usize>,
    pub time_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Solution {
    pub width: usize,
    pub d: usize,
    pub opt: usize,
    pub deletion_set: Option<Vec<usize>>,
    pub stats: SolveStats,
}

/// Survivors in vertex order plus the summarising graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPState {
    pub survivors: Vec<usize>,
    pub graph: BoundariedGraph,
    pub cost: usize,
}

#[derive(Clone, Copy, Debug)]
enum Back {
    Leaf,
    Introduce { child: usize, deleted: bool },
    Forget { child: usize },
    Join { left: usize, right: usize },
}

#[derive(Clone, Debug)]
struct Entry {
    survivors: Vec<usize>,
    graph: BoundariedGraph,
    key: StateKey,
    members: Option<Arc<Vec<usize>>>,
    cost: usize,
    back: Back,
}

type NodeTable = Vec<Entry>;

pub fn dp_leaf() -> DPState {
    DPState { survivors: Vec::new(), graph: BoundariedGraph::boundary_only(0), cost: 0 }
}

/// The graph of `s` with `v` added as a boundary vertex adjacent to the
/// surviving members of `nbrs`.
fn keep_graph(s: &DPState, v: usize, nbrs: &[usize]) -> (Vec<usize>, BoundariedGraph) {
    let mut g = s.graph.graph().clone();
    let x = g.add_vertex();
    for (i, &u) in s.survivors.iter().enumerate() {
        if nbrs.contains(&u) {
            g.add_edge(s.graph.boundary()[i], x);
        }
    }
    let pos = s.survivors.binary_search(&v).expect_err("introduced vertex already present");
    let mut survivors = s.survivors.clone();
    survivors.insert(pos, v);
    let mut boundary = s.graph.boundary().to_vec();
    boundary.insert(pos, x);
    (survivors, BoundariedGraph::new(g, boundary).expect("fresh boundary vertex"))
}

fn forget_graph(s: &DPState, v: usize) -> (Vec<usize>, BoundariedGraph) {
    match s.survivors.binary_search(&v) {
        Ok(pos) => {
            let mut survivors = s.survivors.clone();
            survivors.remove(pos);
            let mut boundary = s.graph.boundary().to_vec();
            boundary.remove(pos);
            (survivors, s.graph.with_boundary(boundary).expect("subset of boundary"))
        }
        Err(_) => (s.survivors.clone(), s.graph.clone()),
    }
}

/// Both branches of an Introduce, compressed; dead branches are omitted.
pub fn dp_introduce(c: &mut Compressor, s: &DPState, v: usize, nbrs: &[usize]) -> Result<Vec<DPState>> {
    let mut out = Vec::new();
    if let Some(k) = c.compress(&s.graph)? {
        out.push(DPState { survivors: s.survivors.clone(), graph: k.graph, cost: s.cost + 1 });
    }
    let (survivors, g) = keep_graph(s, v, nbrs);
    if let Some(k) = c.compress(&g)? {
        out.push(DPState { survivors, graph: k.graph, cost: s.cost });
    }
    Ok(out)
}

pub fn dp_forget(c: &mut Compressor, s: &DPState, v: usize) -> Result<Option<DPState>> {
    let (survivors, g) = forget_graph(s, v);
    Ok(c.compress(&g)?.map(|k| DPState { survivors, graph: k.graph, cost: s.cost }))
}

/// Joins two states over the same bag; `None` when the survivors differ or
/// the glued graph is dead.
pub fn dp_join(c: &mut Compressor, a: &DPState, b: &DPState, bag_len: usize) -> Result<Option<DPState>> {
    if a.survivors != b.survivors {
        return Ok(None);
    }
    let g = union_glue_boundaried(&a.graph, &b.graph)?;
    let shared = bag_len - a.survivors.len();
    Ok(c.compress(&g)?.map(|k| DPState { survivors: a.survivors.clone(), graph: k.graph, cost: a.cost + b.cost - shared }))
}

/// Glue that unions the boundary edges of both sides. Reductions may add
/// edges between boundary vertices, so the two sides of a Join need not be
/// compatible in the strict sense.
fn union_glue_boundaried(a: &BoundariedGraph, b: &BoundariedGraph) -> Result<BoundariedGraph> {
    let g = union_glue(a, b)?;
    BoundariedGraph::new(g, a.boundary().to_vec())
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
    }
    true
}

struct Dp<'a> {
    g: &'a Graph,
    opts: &'a SolveOptions,
    comp: Compressor,
    stats: SolveStats,
    bound: Option<usize>,
}

impl Dp<'_> {
    fn push(
        &mut self,
        map: &mut BTreeMap<(Vec<usize>, StateKey), Entry>,
        survivors: Vec<usize>,
        graph: &BoundariedGraph,
        cost: usize,
        back: Back,
    ) -> Result<()> {
        if self.bound.is_some_and(|b| cost > b) {
            self.stats.bound_pruned += 1;
            return Ok(());
        }
        let Some(k) = self.comp.compress(graph)? else {
            return Ok(());
        };
        let key = (survivors, k.key);
        match map.get_mut(&key) {
            Some(e) if e.cost <= cost => {}
            Some(e) => {
                e.cost = cost;
                e.back = back;
            }
            None => {
                let survivors = key.0.clone();
                let entry = Entry { survivors, graph: k.graph, key: key.1.clone(), members: k.members, cost, back };
                map.insert(key, entry);
            }
        }
        Ok(())
    }

    fn finish(&mut self, node: usize, map: BTreeMap<(Vec<usize>, StateKey), Entry>) -> Result<NodeTable> {
        let mut entries: Vec<Entry> = map.into_values().collect();
        if self.opts.dominance {
            entries = self.prune_dominated(entries);
        }
        self.stats.states_total += entries.len() as u64;
        self.stats.states_max = self.stats.states_max.max(entries.len());
        if entries.len() > self.opts.max_states {
            self.sync_stats();
            return Err(Error::Budget(format!(
                "state guard tripped at node {node}: {} states exceed the cap {}; partial stats: {}",
                entries.len(),
                self.opts.max_states,
                serde_json::to_string(&self.stats).unwrap_or_default()
            )));
        }
        Ok(entries)
    }

    fn prune_dominated(&mut self, entries: Vec<Entry>) -> Vec<Entry> {
        let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (i, e) in entries.iter().enumerate() {
            groups.entry(e.survivors.clone()).or_default().push(i);
        }
        let mut keep = vec![true; entries.len()];
        for idx in groups.values() {
            let mut order = idx.clone();
            order.sort_by_key(|&i| (entries[i].cost, entries[i].members.as_ref().map_or(usize::MAX, |m| m.len())));
            let mut kept: Vec<usize> = Vec::new();
            for &i in &order {
                let Some(mi) = &entries[i].members else {
                    kept.push(i);
                    continue;
                };
                let bi = entries[i].graph.boundary_edges();
                let dominated = kept.iter().any(|&j| {
                    let e = &entries[j];
                    e.cost <= entries[i].cost
                        && e.members.as_ref().is_some_and(|mj| is_subset(mj, mi))
                        && e.graph.boundary_edges() == bi
                });
                if dominated {
                    keep[i] = false;
                    self.stats.dominated += 1;
                } else {
                    kept.push(i);
                }
            }
        }
        entries.into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect()
    }

    fn sync_stats(&mut self) {
        let c = &self.comp.stats;
        self.stats.compress_hits = c.compress_hits;
        self.stats.compress_calls = c.compress_calls;
        self.stats.table_inserts = c.table_inserts;
        self.stats.dead_pruned = c.dead;
        self.stats.fallback = c.fallback;
    }

    fn state(e: &Entry) -> DPState {
        DPState { survivors: e.survivors.clone(), graph: e.graph.clone(), cost: e.cost }
    }

    fn node(&mut self, td: &NiceTreeDecomposition, i: usize, tables: &[Option<NodeTable>]) -> Result<NodeTable> {
        let node = &td.nodes[i];
        let mut map = BTreeMap::new();
        match node.kind {
            NiceKind::Leaf => {
                let s = dp_leaf();
                self.push(&mut map, s.survivors, &s.graph, 0, Back::Leaf)?;
            }
            NiceKind::Introduce(v) => {
                let child = tables[node.children[0]].as_ref().expect("child table");
                let nbrs: Vec<usize> = self.g.neighbors(v).iter().copied().filter(|u| node.bag.binary_search(u).is_ok()).collect();
                for (ci, e) in child.iter().enumerate() {
                    let s = Self::state(e);
                    self.push(&mut map, s.survivors.clone(), &s.graph, s.cost + 1, Back::Introduce { child: ci, deleted: true })?;
                    let (survivors, g) = keep_graph(&s, v, &nbrs);
                    self.push(&mut map, survivors, &g, s.cost, Back::Introduce { child: ci, deleted: false })?;
                }
            }
            NiceKind::Forget(v) => {
                let child = tables[node.children[0]].as_ref().expect("child table");
                for (ci, e) in child.iter().enumerate() {
                    let (survivors, g) = forget_graph(&Self::state(e), v);
                    self.push(&mut map, survivors, &g, e.cost, Back::Forget { child: ci })?;
                }
            }
            NiceKind::Join => {
                let left = tables[node.children[0]].as_ref().expect("child table");
                let right = tables[node.children[1]].as_ref().expect("child table");
                let mut by_surv: BTreeMap<&[usize], Vec<usize>> = BTreeMap::new();
                for (ri, e) in right.iter().enumerate() {
                    by_surv.entry(&e.survivors).or_default().push(ri);
                }
                let mut glued: BTreeMap<(StateKey, StateKey), Option<BoundariedGraph>> = BTreeMap::new();
                for (li, a) in left.iter().enumerate() {
                    let Some(rs) = by_surv.get(a.survivors.as_slice()) else { continue };
                    let shared = node.bag.len() - a.survivors.len();
                    for &ri in rs {
                        let b = &right[ri];
                        let cost = a.cost + b.cost - shared;
                        let pair = (a.key.clone(), b.key.clone());
                        let g = match glued.get(&pair) {
                            Some(g) => g.clone(),
                            None => {
                                let g = union_glue_boundaried(&a.graph, &b.graph)?;
                                glued.insert(pair, Some(g.clone()));
                                Some(g)
                            }
                        };
                        if let Some(g) = g {
                            self.push(&mut map, a.survivors.clone(), &g, cost, Back::Join { left: li, right: ri })?;
                        }
                    }
                }
            }
        }
        self.finish(i, map)
    }
}

/// Solves minimum deletion for `family` on `g` along `td`.
pub fn solve(g: &Graph, family: &Family, td: &NiceTreeDecomposition, opts: &SolveOptions) -> Result<Solution> {
    let start = Instant::now();
    td.validate(g)?;
    let d = opts.d.unwrap_or_else(|| family.h());
    let mut dp = Dp {
        g,
        opts,
        comp: Compressor::new(family, d, opts.compression),
        stats: SolveStats { nodes: td.nodes.len(), ..Default::default() },
        bound: None,
    };
    let mut greedy = None;
    if opts.upper_bound {
        let s = greedy_deletion_set(g, family)?;
        dp.bound = Some(s.len());
        dp.stats.upper_bound = Some(s.len());
        greedy = Some(s);
    }
    let mut tables: Vec<Option<NodeTable>> = vec![None; td.nodes.len()];
    for i in 0..td.nodes.len() {
        let t = dp.node(td, i, &tables)?;
        tables[i] = Some(t);
        if !opts.recover {
            for &c in &td.nodes[i].children {
                tables[c] = None;
            }
        }
    }
    dp.sync_stats();
    let root = td.root();
    let best = tables[root]
        .as_ref()
        .expect("root table")
        .iter()
        .enumerate()
        .min_by_key(|(_, e)| e.cost)
        .map(|(i, e)| (i, e.cost));
    // With the bound active the all-deleted lineage may be pruned; the
    // greedy set is then optimal.
    let (opt, deletion_set) = match (best, greedy) {
        (Some((i, cost)), _) => {
            let set = opts.recover.then(|| recover(td, &tables, i));
            (cost, set)
        }
        (None, Some(s)) => (s.len(), opts.recover.then_some(s)),
        (None, None) => return Err(Error::Validation("no state reached the root".into())),
    };
    let mut stats = dp.stats;
    stats.time_ms = start.elapsed().as_millis();
    let opt = opt + usize::from(opts.inject_cost_fault);
    Ok(Solution { width: td.width(), d, opt, deletion_set, stats })
}

fn recover(td: &NiceTreeDecomposition, tables: &[Option<NodeTable>], root_entry: usize) -> Vec<usize> {
    let mut deleted = Vec::new();
    let mut stack = vec![(td.root(), root_entry)];
    while let Some((node, idx)) = stack.pop() {
        let e = &tables[node].as_ref().expect("kept table")[idx];
        let children = &td.nodes[node].children;
        match e.back {
            Back::Leaf => {}
            Back::Introduce { child, deleted: del } => {
                if del {
                    if let NiceKind::Introduce(v) = td.nodes[node].kind {
                        deleted.push(v);
                    }
                }
                stack.push((children[0], child));
            }
            Back::Forget { child } => stack.push((children[0], child)),
            Back::Join { left, right } => {
                stack.push((children[0], left));
                stack.push((children[1], right));
            }
        }
    }
    deleted.sort_unstable();
    deleted.dedup();
    deleted
}

/// Solves with a decomposition chosen automatically: exact when the graph
/// has at most 20 vertices, min-fill otherwise.
pub fn solve_auto(g: &Graph, family: &Family, opts: &SolveOptions) -> Result<Solution> {
    let td = if g.n() <= crate::treedecomp::exact::EXACT_TW_CAP {
        crate::treedecomp::exact_tw(g)?.1
    } else {
        crate::treedecomp::minfill_td(g)
    };
    solve(g, family, &crate::treedecomp::to_nice(&td)?, opts)
}
