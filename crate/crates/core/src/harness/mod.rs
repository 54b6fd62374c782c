//! Command-line plumbing: configuration files, seeded samplers, the
//! verification suites and parameter sweeps.

pub mod cli;
pub mod config;
pub mod samplers;
pub mod sweep;
pub mod verify;

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Capacity and search-budget errors map to 3, everything else to 2.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Capacity { .. } | Error::CopyCapExceeded { .. } | Error::TooLargeForExact { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}
