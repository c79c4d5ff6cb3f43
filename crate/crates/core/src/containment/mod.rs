//! Minor and topological-minor containment.

pub mod ext;
pub mod minor;
pub mod planarity;
pub mod tm;

pub use ext::ext;
pub use minor::{find_minor, has_minor, has_minor_by_closure, MinorModel};
pub use planarity::is_planar;
pub use tm::{dissolve, find_btm, has_btm, TmPair};

use crate::canon::{canonical_form_with_cap, MAX_CANON_VERTICES};
use crate::error::Result;
use crate::graph::{BoundariedGraph, Graph};

fn same_graph(a: &Graph, b: &Graph) -> bool {
    let f = |g: &Graph| canonical_form_with_cap(&BoundariedGraph::unboundaried(g.clone()), MAX_CANON_VERTICES).ok();
    a.n() == b.n() && a.m() == b.m() && f(a) == f(b)
}

/// True when no member of `family` is a minor of `g`.
///
/// Planar graphs exclude every nonplanar pattern, and a nonplanar graph
/// contains `K5` or `K3,3`; both facts are used before any search.
pub fn is_f_minor_free(g: &Graph, family: &[Graph]) -> Result<bool> {
    Ok(first_minor(g, family)?.is_none())
}

/// Index of the first member of `family` that is a minor of `g`.
pub fn first_minor(g: &Graph, family: &[Graph]) -> Result<Option<usize>> {
    for h in family {
        minor::find_minor_with_cap(&Graph::new(0), h, minor::DEFAULT_PATTERN_CAP)?;
    }
    let nonplanar: Vec<bool> = family.iter().map(|h| !is_planar(h)).collect();
    if !nonplanar.is_empty() && nonplanar.iter().any(|&x| x) {
        let planar = is_planar(g);
        if planar && nonplanar.iter().all(|&x| x) {
            return Ok(None);
        }
        if !planar {
            let k5 = family.iter().position(|h| same_graph(h, &Graph::complete(5)));
            let k33 = family.iter().position(|h| same_graph(h, &Graph::complete_bipartite(3, 3)));
            if let (Some(a), Some(b)) = (k5, k33) {
                // one of them is present; report the one found first by search
                for (i, h) in family.iter().enumerate() {
                    if i == a.min(b) {
                        break;
                    }
                    if has_minor(g, h)? {
                        return Ok(Some(i));
                    }
                }
                return Ok(Some(a.min(b)));
            }
        }
        for (i, h) in family.iter().enumerate() {
            if planar && nonplanar[i] {
                continue;
            }
            if has_minor(g, h)? {
                return Ok(Some(i));
            }
        }
        return Ok(None);
    }
    for (i, h) in family.iter().enumerate() {
        if has_minor(g, h)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_examples() {
        let kur = [Graph::complete(5), Graph::complete_bipartite(3, 3)];
        assert!(!is_f_minor_free(&Graph::complete(5), &kur).unwrap());
        assert!(is_f_minor_free(&Graph::star(4), &[Graph::complete(3)]).unwrap());
        assert!(!is_f_minor_free(&Graph::petersen(), &kur).unwrap());
        assert!(is_f_minor_free(&Graph::complete(4), &kur).unwrap());
    }
}
