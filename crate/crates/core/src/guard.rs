//! Size limits for exhaustive routines.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{what} is limited to n <= {limit}, got n = {n}")]
pub struct GuardExceeded {
    pub what: &'static str,
    pub n: usize,
    pub limit: usize,
}

/// Errors unless `n <= limit`.
pub fn check(what: &'static str, n: usize, limit: usize) -> Result<(), GuardExceeded> {
    if n > limit {
        Err(GuardExceeded { what, n, limit })
    } else {
        Ok(())
    }
}
