//! Laboratory for vertex-disjoint tilings of graphs by a fixed bipartite
//! pattern: threshold formulas, extremal constructions, exact and greedy
//! tilers, the augmentation machinery and regularity checkers.

mod bitset;

pub mod augment;
pub mod error;
pub mod graph;
#[cfg(feature = "cli")]
pub mod harness;
pub mod matching;
pub mod oracle;
pub mod regularity;
pub mod thresholds;
pub mod tiling;

pub use error::{Error, Result};
