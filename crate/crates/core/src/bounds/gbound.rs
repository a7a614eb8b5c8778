use serde::Serialize;

use super::boundt::boundt_log2;
use super::BoundError;

/// Largest `⌈Δ⌉` for which the product term is evaluated.
const MAX_CEIL_DELTA: f64 = 1e8;

/// Arguments of `g(m, x, t, d)`: at most `m` vertices after adding `Δ`,
/// every `t`-set misses at least `x` edges, maximum missing degree at most
/// `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundParams {
    pub m: usize,
    pub x: usize,
    pub t: usize,
    pub d: usize,
}

impl BoundParams {
    pub fn new(m: usize, x: usize, t: usize, d: usize) -> Self {
        Self { m, x, t, d }
    }

    /// `Δ = 2xm / t^2`.
    pub fn delta(&self) -> f64 {
        2.0 * self.x as f64 * self.m as f64 / (self.t as f64 * self.t as f64)
    }

    /// `C = m / t`.
    pub fn c(&self) -> f64 {
        self.m as f64 / self.t as f64
    }

    /// `⌈2x / t⌉`, the least admissible `D` (at least 1).
    pub fn d_min(&self) -> usize {
        (2 * self.x).div_ceil(self.t).max(1)
    }

    fn validate(&self) -> Result<(), BoundError> {
        if self.t == 0 {
            return Err(BoundError::ZeroT);
        }
        if self.x == 0 {
            return Err(BoundError::ZeroX);
        }
        if self.d_min() > self.d {
            return Err(BoundError::EmptyDRange {
                lo: self.d_min(),
                hi: self.d,
            });
        }
        if self.delta().ceil() > MAX_CEIL_DELTA {
            return Err(BoundError::DeltaTooLarge(self.delta()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case {
    /// `D > Δ`: `(D+1)^((m-t)/D + 1)` times the dense bound.
    DAboveDelta,
    /// `D <= Δ`: product over `h = D+1..⌈Δ⌉` times the dense bound.
    DAtMostDelta,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Maximizer {
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "D")]
    pub d: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundResult {
    /// Bound without the slack term.
    pub log2_bound: f64,
    pub per_t_exponent: f64,
    pub maximizer: Maximizer,
    pub case: Case,
    /// `log2(Δ)^2`: the unspecified-constant slack of the `D <= Δ` case with
    /// unit constant. Not included in `log2_bound`.
    pub slack_log2: f64,
}

/// Bound for a fixed integer `D` in `[⌈2x/t⌉, d]`.
pub fn g_bound_at(params: BoundParams, d: usize) -> Result<BoundResult, BoundError> {
    params.validate()?;
    if d < params.d_min() || d > params.d {
        return Err(BoundError::Domain(format!(
            "D = {d} outside [{}, {}]",
            params.d_min(),
            params.d
        )));
    }
    let sums = ProductSums::new(params.delta());
    Ok(evaluate(params, d, &sums))
}

/// Maximum over integer `D` in `[⌈2x/t⌉, d]` of [`g_bound_at`].
pub fn g_bound(params: BoundParams) -> Result<BoundResult, BoundError> {
    params.validate()?;
    let sums = ProductSums::new(params.delta());
    (params.d_min()..=params.d)
        .map(|d| evaluate(params, d, &sums))
        .max_by(|a, b| a.log2_bound.total_cmp(&b.log2_bound))
        .ok_or(BoundError::EmptyDRange {
            lo: params.d_min(),
            hi: params.d,
        })
}

/// Prefix sums of `log2(h+1)/h` for `h = 1..=⌈Δ⌉`.
struct ProductSums {
    ceil_delta: usize,
    prefix: Vec<f64>,
}

impl ProductSums {
    fn new(delta: f64) -> Self {
        let ceil_delta = delta.ceil().max(0.0) as usize;
        let mut prefix = Vec::with_capacity(ceil_delta + 1);
        prefix.push(0.0);
        let mut acc = 0.0;
        for h in 1..=ceil_delta {
            acc += ((h + 1) as f64).log2() / h as f64;
            prefix.push(acc);
        }
        Self { ceil_delta, prefix }
    }

    /// `Σ_{h=lo..=hi} log2(h+1)/h`, zero when empty.
    fn range(&self, lo: usize, hi: usize) -> f64 {
        if lo > hi {
            0.0
        } else {
            self.prefix[hi] - self.prefix[lo - 1]
        }
    }
}

fn evaluate(p: BoundParams, d: usize, sums: &ProductSums) -> BoundResult {
    let (m, x, t, df) = (p.m as f64, p.x as f64, p.t as f64, d as f64);
    let delta = p.delta();
    let dense = boundt_log2(t, x, df);
    let k = t * t / (2.0 * x);
    let (log2_bound, case, slack) = if df > delta {
        (
            ((m - t) / df + 1.0) * (df + 1.0).log2() + dense,
            Case::DAboveDelta,
            0.0,
        )
    } else {
        let product = k * sums.range(d + 1, sums.ceil_delta);
        let tail = (k - t / df) * (df + 1.0).log2();
        let slack = delta.max(1.0).log2().powi(2);
        (product + tail + dense, Case::DAtMostDelta, slack)
    };
    BoundResult {
        log2_bound,
        per_t_exponent: log2_bound / t,
        maximizer: Maximizer { c: p.c(), d: df },
        case,
        slack_log2: slack,
    }
}
