//! Representative tables: one minimum-size member per folio class.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;

use crate::canon::{canonical_graph, CanonicalForm, MAX_CANON_VERTICES};
use crate::containment::is_f_minor_free;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::folio::{folio_in, pattern_universe, signature_of, FolioSignature, PatternUniverse};
use crate::graph::BoundariedGraph;
use crate::representatives::enumerate::enumerate_levels;

const TABLE_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub n_max: usize,
    pub m_max: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepEntry {
    /// Sorted universe indices of the class folio (empty for the dead class).
    pub members: Vec<usize>,
    /// Representative with boundary `0..t`, in canonical vertex order.
    pub rep: BoundariedGraph,
    /// Enumerated graphs in the class; zero for classes added online.
    pub population: u64,
    pub max_member_n: usize,
}

impl RepEntry {
    pub fn is_online(&self) -> bool {
        self.population == 0
    }
}

/// Result of [`RepresentativeTable::lookup_rep`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lookup {
    /// The graph contains a forbidden minor.
    Dead,
    Found(BoundariedGraph),
    /// The class was new; the graph itself now represents it.
    Inserted(BoundariedGraph),
}

#[derive(Clone, Debug)]
pub struct RepresentativeTable {
    t: usize,
    d: usize,
    family: Family,
    caps: Caps,
    entries: BTreeMap<FolioSignature, RepEntry>,
}

impl RepresentativeTable {
    pub fn new(t: usize, d: usize, family: Family, caps: Caps) -> Self {
        RepresentativeTable { t, d, family, caps, entries: BTreeMap::new() }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&FolioSignature, &RepEntry)> {
        self.entries.iter()
    }

    pub fn get(&self, sig: &FolioSignature) -> Option<&RepEntry> {
        self.entries.get(sig)
    }

    pub fn dead_entry(&self) -> Option<&RepEntry> {
        self.entries.get(&FolioSignature::dead(self.t, self.d))
    }

    fn universe(&self) -> Result<Arc<PatternUniverse>> {
        pattern_universe(self.t, self.d)
    }

    /// Signature of `g`, or the dead signature if `g` has a forbidden minor.
    pub fn classify(&self, g: &BoundariedGraph) -> Result<(FolioSignature, Vec<usize>)> {
        if g.t() != self.t {
            return Err(Error::Incompatible(format!("graph has {} boundary vertices, table {}", g.t(), self.t)));
        }
        if !is_f_minor_free(g.graph(), self.family.patterns())? {
            return Ok((FolioSignature::dead(self.t, self.d), Vec::new()));
        }
        let u = self.universe()?;
        let f = folio_in(g, &u)?;
        Ok((signature_of(&g.boundary_edges(), &f, &u), f.members()))
    }

    /// Returns the representative of `g`'s class, inserting `g` as a new
    /// class representative when the class is unknown.
    pub fn lookup_rep(&mut self, g: &BoundariedGraph) -> Result<Lookup> {
        let (sig, members) = self.classify(g)?;
        if sig.is_dead() {
            return Ok(Lookup::Dead);
        }
        if let Some(e) = self.entries.get(&sig) {
            if e.members != members {
                return Err(Error::Validation(format!("digest collision on signature {sig}")));
            }
            return Ok(Lookup::Found(e.rep.clone()));
        }
        let (rep, _) = canonical_graph(g, MAX_CANON_VERTICES)?;
        self.entries.insert(sig, RepEntry { members, rep: rep.clone(), population: 0, max_member_n: g.n() });
        Ok(Lookup::Inserted(rep))
    }

    /// Adds or replaces an entry; used by online compression.
    pub fn insert(&mut self, sig: FolioSignature, entry: RepEntry) {
        self.entries.insert(sig, entry);
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "R {TABLE_VERSION} {} {} F={} caps={},{}\n",
            self.t,
            self.d,
            self.family.descriptor(),
            self.caps.n_max,
            self.caps.m_max
        );
        for (sig, e) in &self.entries {
            let idx = if e.members.is_empty() {
                "-".to_string()
            } else {
                e.members.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
            };
            s.push_str(&format!("{} {} {} {}\n", sig.to_hex(), idx, e.rep.to_inline(), e.population));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty table file".into()))?;
        let f: Vec<&str> = header.split_whitespace().collect();
        let bad = || Error::Parse(format!("bad table header {header:?}"));
        if f.len() != 6 || f[0] != "R" || f[1] != TABLE_VERSION.to_string() {
            return Err(bad());
        }
        let t: usize = f[2].parse().map_err(|_| bad())?;
        let d: usize = f[3].parse().map_err(|_| bad())?;
        let family = Family::parse_names(f[4].strip_prefix("F=").ok_or_else(bad)?)?;
        let (n_max, m_max) = f[5].strip_prefix("caps=").and_then(|c| c.split_once(',')).ok_or_else(bad)?;
        let caps = Caps { n_max: n_max.parse().map_err(|_| bad())?, m_max: m_max.parse().map_err(|_| bad())? };
        let mut table = RepresentativeTable::new(t, d, family, caps);
        for line in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() < 5 {
                return Err(Error::Parse(format!("bad table line {line:?}")));
            }
            let sig = FolioSignature::from_hex(t, d, toks[0])?;
            let members = if toks[1] == "-" {
                Vec::new()
            } else {
                toks[1]
                    .split(',')
                    .map(|x| x.parse::<usize>().map_err(|_| Error::Parse(format!("bad index list {:?}", toks[1]))))
                    .collect::<Result<Vec<_>>>()?
            };
            let population: u64 =
                toks[toks.len() - 1].parse().map_err(|_| Error::Parse(format!("bad population in {line:?}")))?;
            let rep = BoundariedGraph::parse(&toks[2..toks.len() - 1].join(" "))?;
            if rep.t() != t {
                return Err(Error::Parse(format!("representative with {} boundary vertices in a t={t} table", rep.t())));
            }
            let max_member_n = rep.n();
            table.entries.insert(sig, RepEntry { members, rep, population, max_member_n });
        }
        Ok(table)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }
}

/// A built table together with every enumerated member per class.
pub struct TableBuild {
    pub table: RepresentativeTable,
    pub classes: BTreeMap<FolioSignature, Vec<CanonicalForm>>,
    pub enumerated: usize,
}

/// Enumerates all graphs within `caps`, groups them by folio signature and
/// keeps a minimum-size member (ties by canonical form) per class.
pub fn build_rep_table(t: usize, d: usize, family: &Family, caps: Caps) -> Result<TableBuild> {
    let u = pattern_universe(t, d)?;
    let levels = enumerate_levels(t, caps.n_max, caps.m_max, Some(family))?;
    let mut classes: BTreeMap<FolioSignature, Vec<CanonicalForm>> = BTreeMap::new();
    let mut folios: BTreeMap<FolioSignature, Vec<usize>> = BTreeMap::new();
    let mut enumerated = 0;
    for level in &levels {
        enumerated += level.forms.len();
        let classified: Vec<(FolioSignature, Vec<usize>)> = level
            .forms
            .par_iter()
            .zip(level.dead.par_iter())
            .map(|(form, &dead)| {
                if dead {
                    return Ok((FolioSignature::dead(t, d), Vec::new()));
                }
                let g = form.decode()?;
                let f = folio_in(&g, &u)?;
                Ok((signature_of(&g.boundary_edges(), &f, &u), f.members()))
            })
            .collect::<Result<_>>()?;
        for (form, (sig, members)) in level.forms.iter().zip(classified) {
            match folios.get(&sig) {
                Some(known) if *known != members => {
                    return Err(Error::Validation(format!("digest collision on signature {sig}")));
                }
                Some(_) => {}
                None => {
                    folios.insert(sig, members);
                }
            }
            classes.entry(sig).or_default().push(form.clone());
        }
    }
    let mut table = RepresentativeTable::new(t, d, family.clone(), caps);
    for (sig, forms) in &classes {
        // levels come in increasing size and are sorted by form, so the
        // first member is the minimum
        let rep = forms[0].decode()?;
        let max_member_n = forms.iter().map(CanonicalForm::n).max().unwrap_or(0);
        table.entries.insert(
            *sig,
            RepEntry { members: folios[sig].clone(), rep, population: forms.len() as u64, max_member_n },
        );
    }
    Ok(TableBuild { table, classes, enumerated })
}
