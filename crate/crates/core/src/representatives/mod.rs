//! Representative tables for the folio equivalence and tools to study them.

pub mod census;
pub mod enumerate;
pub mod probe;
pub mod table;

pub use census::{rep_census, CensusReport, CensusRow};
pub use enumerate::{enumerate_boundaried, enumerate_levels, Enumerated};
pub use probe::{partner_bank, probe_equivalence, ProbeConfig, Verdict};
pub use table::{build_rep_table, Caps, Lookup, RepEntry, RepresentativeTable, TableBuild};
