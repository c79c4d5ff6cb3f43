use crate::error::{Error, Result};
use crate::graph::Graph;

use super::{td_from_elimination, TreeDecomposition};

pub const EXACT_TW_CAP: usize = 20;

/// Exact treewidth by dynamic programming over eliminated-vertex sets.
///
/// `tw(S ∪ {v}) = min max(tw(S), |Q(S, v)|)` where `Q(S, v)` is the set of
/// vertices outside `S ∪ {v}` reachable from `v` through `S`.
pub fn exact_tw(g: &Graph) -> Result<(usize, TreeDecomposition)> {
    let n = g.n();
    if n > EXACT_TW_CAP {
        return Err(Error::Budget(format!("exact treewidth is capped at {EXACT_TW_CAP} vertices, graph has {n}")));
    }
    if n == 0 {
        return Ok((0, td_from_elimination(g, &[])));
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u)).collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let size = 1usize << n;
    let mut tw = vec![u8::MAX; size];
    let mut last = vec![u8::MAX; size];
    tw[0] = 0;
    let mut comp_of = vec![usize::MAX; n];
    let mut comp_nb: Vec<u32> = Vec::with_capacity(n);
    for s in 0..size {
        let cur = tw[s];
        if cur == u8::MAX {
            continue;
        }
        let s32 = s as u32;
        // Components of G[S] and their open neighbourhoods.
        comp_nb.clear();
        let mut rest = s32;
        while rest != 0 {
            let start = rest.trailing_zeros() as usize;
            let mut comp = 1u32 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let mut nb = 0u32;
                let mut f = frontier;
                while f != 0 {
                    let x = f.trailing_zeros() as usize;
                    f &= f - 1;
                    nb |= adj[x];
                }
                frontier = nb & s32 & !comp;
                comp |= frontier;
            }
            let id = comp_nb.len();
            let mut c = comp;
            let mut nbh = 0u32;
            while c != 0 {
                let x = c.trailing_zeros() as usize;
                c &= c - 1;
                comp_of[x] = id;
                nbh |= adj[x];
            }
            comp_nb.push(nbh & !s32);
            rest &= !comp;
        }
        let mut out = full & !s32;
        while out != 0 {
            let v = out.trailing_zeros() as usize;
            out &= out - 1;
            let mut q = adj[v];
            let mut inside = adj[v] & s32;
            let mut seen: u32 = 0;
            while inside != 0 {
                let x = inside.trailing_zeros() as usize;
                inside &= inside - 1;
                let c = comp_of[x];
                if seen & (1 << c) == 0 {
                    seen |= 1 << c;
                    q |= comp_nb[c];
                }
            }
            q &= !s32 & !(1u32 << v);
            let val = cur.max(q.count_ones() as u8);
            let t = s | 1 << v;
            if val < tw[t] {
                tw[t] = val;
                last[t] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = size - 1;
    while s != 0 {
        let v = last[s] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    let width = tw[size - 1] as usize;
    let td = td_from_elimination(g, &order);
    debug_assert_eq!(td.width(), width);
    Ok((width, td))
}
