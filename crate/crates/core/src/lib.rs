//! Mod-p cohomology (modulo nilpotents) of rank-2 p-groups: Quillen models,
//! transfers and biset operators, GL2 composition factors, and bookkeeping
//! for stable splittings of the classifying spaces.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod gl2;
pub mod nilpotent;
pub mod quillen;
pub mod report;
pub mod splitting;
pub mod transfer;

pub use error::{Error, Result};
