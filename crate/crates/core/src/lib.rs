//! Hyperplane combinatorics of the cube complexes of right-angled Artin
//! groups, boundary products and cross ratios at finite truncation, and the
//! explicit constructions built on them.

pub mod boundary;
pub mod constructions;
pub mod cube;
pub mod error;
pub mod raag;

pub use error::{Error, Result};

/// Default radius cap for every breadth-first search.
pub const DEFAULT_CAP: u32 = 12;
