//! The parameter `t(G)` (the largest `t` such that some `t`-set misses at
//! most `n - t` edges) and the missing-degree bounds tied to it.

use std::sync::atomic::{AtomicUsize, Ordering};

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::bits;
use crate::graph::Graph;
use crate::guard::{self, GuardExceeded};
use crate::par::{self, Execution};
use crate::vertex_set::VertexSet;

/// Default vertex limit for exact subset search.
pub const PARAMS_GUARD: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error(transparent)]
    Guard(#[from] GuardExceeded),
    #[error("t = {t} outside 1..={n}")]
    SetSize { t: usize, n: usize },
    #[error("needs n >= 2, got n = {0}")]
    TooFewVertices(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TsetMinimum {
    pub missing: usize,
    /// Lexicographically first `t`-set attaining the minimum.
    pub witness: VertexSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SigmaBounds {
    /// `t(G) - Δ`; may be negative.
    pub lower: i64,
    pub upper: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamReport {
    pub n: usize,
    pub t_param: usize,
    pub witness_set: VertexSet,
    pub witness_missing: usize,
    pub delta: usize,
    pub sigma_bounds: SigmaBounds,
}

/// Minimum number of missing edges over all `t`-subsets.
pub fn min_tset_missing(g: &Graph, t: usize, limit_n: usize) -> Result<TsetMinimum, ParamError> {
    min_tset_missing_with(g, t, limit_n, Execution::default())
}

pub fn min_tset_missing_with(
    g: &Graph,
    t: usize,
    limit_n: usize,
    exec: Execution,
) -> Result<TsetMinimum, ParamError> {
    let n = g.n();
    if t == 0 || t > n {
        return Err(ParamError::SetSize { t, n });
    }
    guard::check("t-set search", n, limit_n.min(64))?;
    Ok(search(g, t, t * (t - 1) / 2, exec).expect("cap admits every t-set"))
}

/// Branch-and-bound over `t`-subsets in lexicographic order, restricted to
/// sets missing at most `cap` edges. Top-level branches fix the smallest
/// member and share an incumbent.
fn search(g: &Graph, t: usize, cap: usize, exec: Execution) -> Option<TsetMinimum> {
    let n = g.n();
    let missing_rows: Vec<u64> = g
        .masks()
        .expect("n <= 64")
        .iter()
        .enumerate()
        .map(|(v, row)| bits::low_mask(n) & !row & !bits::bit(v))
        .collect();
    let shared = AtomicUsize::new(cap);
    let firsts: Vec<usize> = (0..=n - t).collect();
    let branches = par::map(exec, &firsts, |&first| {
        let mut state = Search {
            rows: &missing_rows,
            n,
            t,
            shared: &shared,
            best: None,
        };
        state.descend(bits::bit(first), 1, first + 1, 0);
        state.best
    });
    branches
        .into_iter()
        .flatten()
        .min_by_key(|&(cost, _)| cost)
        .map(|(missing, mask)| TsetMinimum {
            missing,
            witness: VertexSet::from_mask(n, mask),
        })
}

struct Search<'a> {
    rows: &'a [u64],
    n: usize,
    t: usize,
    /// Best cost found by any branch.
    shared: &'a AtomicUsize,
    /// Best cost and set in this branch.
    best: Option<(usize, u64)>,
}

impl Search<'_> {
    fn descend(&mut self, chosen: u64, size: usize, next: usize, cost: usize) {
        if size == self.t {
            let within_cap = cost <= self.shared.load(Ordering::Relaxed);
            if within_cap && self.best.is_none_or(|(c, _)| cost < c) {
                self.best = Some((cost, chosen));
                self.shared.fetch_min(cost, Ordering::Relaxed);
            }
            return;
        }
        let need = self.t - size;
        if self.n - next < need {
            return;
        }
        let mut increments: Vec<usize> = (next..self.n)
            .map(|v| (self.rows[v] & chosen).count_ones() as usize)
            .collect();
        let lower = cost + {
            let (low, nth, _) = increments.select_nth_unstable(need - 1);
            low.iter().sum::<usize>() + *nth
        };
        // a branch may tie another branch's optimum, never its own
        if lower > self.shared.load(Ordering::Relaxed) || self.best.is_some_and(|(c, _)| lower >= c)
        {
            return;
        }
        for v in next..self.n {
            if self.n - v < need {
                break;
            }
            let add = (self.rows[v] & chosen).count_ones() as usize;
            self.descend(chosen | bits::bit(v), size + 1, v + 1, cost + add);
        }
    }
}

/// Upper bound on the `t`-set minimum from averaging over all `t`-sets:
/// `missing(G) * t(t-1) / (n(n-1))`. Not exact.
pub fn averaging_upper_bound(g: &Graph, t: usize) -> Result<Ratio<u128>, ParamError> {
    let n = g.n();
    if t == 0 || t > n {
        return Err(ParamError::SetSize { t, n });
    }
    if n < 2 {
        return Ok(Ratio::from_integer(0));
    }
    let total = (n * (n - 1) / 2 - g.edge_count()) as u128;
    Ok(Ratio::new(
        total * (t * (t - 1)) as u128,
        (n * (n - 1)) as u128,
    ))
}

/// `t(G)` with a witness set, `Δ`, and the sandwich `t(G) - Δ <= σ(G) <= t(G)`.
pub fn t_param(g: &Graph, limit_n: usize) -> Result<ParamReport, ParamError> {
    t_param_with(g, limit_n, Execution::default())
}

pub fn t_param_with(g: &Graph, limit_n: usize, exec: Execution) -> Result<ParamReport, ParamError> {
    let n = g.n();
    guard::check("t-set search", n, limit_n.min(64))?;
    let delta = g.max_missing_degree().unwrap_or(0);
    let (t, found) = (1..=n)
        .rev()
        .find_map(|t| search(g, t, n - t, exec).map(|m| (t, m)))
        .unwrap_or((
            0,
            TsetMinimum {
                missing: 0,
                witness: VertexSet::new(n),
            },
        ));
    Ok(ParamReport {
        n,
        t_param: t,
        witness_set: found.witness,
        witness_missing: found.missing,
        delta,
        sigma_bounds: SigmaBounds {
            lower: t as i64 - delta as i64,
            upper: t,
        },
    })
}

/// `2nx / t^2`: if every `t`-set misses at least `x` edges, the maximum
/// missing degree is at least this.
pub fn delta_lower_bound(n: usize, x: usize, t: usize) -> Result<Ratio<u128>, ParamError> {
    if t == 0 || t > n {
        return Err(ParamError::SetSize { t, n });
    }
    Ok(Ratio::new(2 * (n * x) as u128, (t * t) as u128))
}

/// `2(n-t)(n-1) / (4(n-1) + t(t-1))`: the missing-degree threshold tied to
/// the absence of a `K_t`-subdivision.
pub fn delta_upper_bound_no_subdivision(n: usize, t: usize) -> Result<Ratio<u128>, ParamError> {
    if n < 2 {
        return Err(ParamError::TooFewVertices(n));
    }
    if t > n {
        return Err(ParamError::SetSize { t, n });
    }
    Ok(Ratio::new(
        2 * ((n - t) * (n - 1)) as u128,
        (4 * (n - 1) + t * t.saturating_sub(1)) as u128,
    ))
}
