//! Process-global ceiling for exhaustive subset enumeration.
//!
//! "For all subsets" checks walk `2^n` bitmasks.  They are refused with
//! [`Error::SizeLimit`] once a carrier outgrows the ceiling so that a stray
//! 40-element input cannot wedge the process.  The command-line tool raises
//! or lowers the ceiling from the `WORKBENCH_SIZE_LIMIT` environment
//! variable; masks are 64-bit, so the ceiling is capped at 63.

use crate::error::{Error, Result};
use std::sync::atomic::{AtomicUsize, Ordering};

pub const DEFAULT_EXHAUSTIVE_CEILING: usize = 16;
pub const HARD_CEILING: usize = 63;

static CEILING: AtomicUsize = AtomicUsize::new(DEFAULT_EXHAUSTIVE_CEILING);

pub fn exhaustive_ceiling() -> usize {
    CEILING.load(Ordering::Relaxed)
}

/// Returns the ceiling actually installed (clamped to [`HARD_CEILING`]).
pub fn set_exhaustive_ceiling(n: usize) -> usize {
    let n = n.min(HARD_CEILING);
    CEILING.store(n, Ordering::Relaxed);
    n
}

pub fn check_exhaustive(size: usize) -> Result<()> {
    let limit = exhaustive_ceiling();
    if size > limit {
        Err(Error::SizeLimit { size, limit })
    } else {
        Ok(())
    }
}
