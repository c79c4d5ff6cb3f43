//! Forbidden-minor families.

use crate::canon::{canonical_form_with_cap, CanonicalForm, MAX_CANON_VERTICES};
use crate::error::{Error, Result};
use crate::graph::{BoundariedGraph, Graph};

/// A finite collection of forbidden minors together with display names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    names: Vec<String>,
    patterns: Vec<Graph>,
}

/// Named single patterns accepted by [`Family::parse_names`].
pub fn named_pattern(name: &str) -> Option<Graph> {
    Some(match name {
        "K2" => Graph::complete(2),
        "K3" => Graph::complete(3),
        "K4" => Graph::complete(4),
        "K5" => Graph::complete(5),
        "C4" => Graph::cycle(4),
        "C5" => Graph::cycle(5),
        "P3" => Graph::path(3),
        "K33" => Graph::complete_bipartite(3, 3),
        "K23" => Graph::complete_bipartite(2, 3),
        _ => return None,
    })
}

/// Patterns read from files are named `G<canonical hex>`.
fn pattern_from_form_name(name: &str) -> Result<Graph> {
    let unknown = || Error::Invalid(format!("unknown pattern name {name:?}"));
    let hex = name.strip_prefix('G').ok_or_else(unknown)?;
    let g = CanonicalForm::from_hex(hex).map_err(|_| unknown())?.decode()?;
    if g.t() != 0 {
        return Err(unknown());
    }
    Ok(g.into_graph())
}

impl Family {
    /// Rejects an empty family and patterns without vertices.
    pub fn new(names: Vec<String>, patterns: Vec<Graph>) -> Result<Self> {
        if patterns.is_empty() {
            return Err(Error::Invalid("family has no patterns".into()));
        }
        if names.len() != patterns.len() {
            return Err(Error::Invalid("family names and patterns differ in number".into()));
        }
        if let Some(i) = patterns.iter().position(|p| p.n() == 0) {
            return Err(Error::Invalid(format!("pattern {} is the empty graph", names[i])));
        }
        Ok(Family { names, patterns })
    }

    pub fn vertex_cover() -> Self {
        Self::parse_names("K2").unwrap()
    }

    pub fn feedback_vertex_set() -> Self {
        Self::parse_names("K3").unwrap()
    }

    pub fn planarization() -> Self {
        Self::parse_names("K5,K33").unwrap()
    }

    /// Preset (`vertex-cover`, `fvs`, `planarization`) or a comma-separated
    /// list of named patterns such as `K4,C4`.
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "vertex-cover" | "vc" => Ok(Self::vertex_cover()),
            "fvs" | "feedback-vertex-set" => Ok(Self::feedback_vertex_set()),
            "planarization" => Ok(Self::planarization()),
            other => Self::parse_names(other),
        }
    }

    pub fn parse_names(list: &str) -> Result<Self> {
        let mut names = Vec::new();
        let mut patterns = Vec::new();
        for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let g = match named_pattern(name) {
                Some(g) => g,
                None => pattern_from_form_name(name)?,
            };
            names.push(name.to_string());
            patterns.push(g);
        }
        Family::new(names, patterns)
    }

    /// Patterns in the boundaried-graph text encoding with `t = 0`.
    pub fn parse_patterns(text: &str) -> Result<Self> {
        let mut names = Vec::new();
        let mut patterns = Vec::new();
        for g in BoundariedGraph::parse_many(text)? {
            if g.t() != 0 {
                return Err(Error::Invalid("family patterns must have an empty boundary".into()));
            }
            let form = canonical_form_with_cap(&g, MAX_CANON_VERTICES)?;
            names.push(format!("G{}", form.to_hex()));
            patterns.push(g.into_graph());
        }
        Family::new(names, patterns)
    }

    pub fn patterns(&self) -> &[Graph] {
        &self.patterns
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Comma-separated names, used in file headers and reports.
    pub fn descriptor(&self) -> String {
        self.names.join(",")
    }

    /// `max(|V(H)|, |E(H)|)` over the family.
    pub fn h(&self) -> usize {
        self.patterns.iter().map(|p| p.n().max(p.m())).max().unwrap_or(0)
    }
}
