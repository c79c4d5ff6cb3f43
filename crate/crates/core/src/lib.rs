//! Exact minor-deletion on graphs of bounded treewidth.

pub mod canon;
pub mod cli;
pub mod containment;
pub mod error;
pub mod family;
pub mod folio;
pub mod graph;
pub mod instances;
pub mod representatives;
pub mod solver;
pub mod treedecomp;

pub use error::{Error, Result};
pub use graph::{BoundariedGraph, Graph};
