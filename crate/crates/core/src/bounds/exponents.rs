//! Per-`t` exponents in the limit `t -> ∞` with `n = Ct`, `x = (C-1)t`,
//! `Δ = 2C(C-1)`. Additive `o(1)` terms are dropped.

// Domain checks are written as negated comparisons so NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::sync::OnceLock;

use serde::Serialize;

use super::gbound::Case;
use super::BoundError;

/// Shift making `log2(y - s) / (y - s)` dominate `log2(1 + y) / y` for
/// `y >= 5`, so the sum over `y` is bounded by an integral.
pub const CASE2_SHIFT: f64 = 1.95;

/// Exponent of the trivial bound `2^(3t)` for graphs on at most `3t` vertices.
pub const TRIVIAL_EXPONENT: f64 = 3.0;

/// `h(D) = (log2(D+1) - (1 - log2(1 + 2^(-1/D)))) / D`. Rises on
/// `[1, 1.6]` and decreases afterwards; over the integers only `h(1) < h(2)`
/// breaks monotonicity.
pub fn h(d: f64) -> f64 {
    ((d + 1.0).log2() - (1.0 - (1.0 + (-1.0 / d).exp2()).log2())) / d
}

/// `1 + (C-1) h(D)`: the exponent when `D >= Δ`.
pub fn case1_exponent(c: f64, d: f64) -> Result<f64, BoundError> {
    if !(c > 1.0) {
        return Err(BoundError::Domain(format!("case 1 needs C > 1, got {c}")));
    }
    if !(d >= 1.0) {
        return Err(BoundError::Domain(format!("case 1 needs D >= 1, got {d}")));
    }
    Ok(1.0 + (c - 1.0) * h(d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case2Policy {
    /// Reject `C < 3`.
    Strict,
    /// Return the trivial exponent for `C < 3`.
    TrivialBelowThree,
}

/// Exponent when `D <= Δ`, after bounding the sum by an integral and
/// choosing `D` separately for each summand:
/// `1 + (log2²(2C(C-1) - s) - log2²(2(C-1) - s)) / (4(C-1)) + log2(2C(C-1) + 1) / (2C)`.
pub fn case2_exponent(c: f64, policy: Case2Policy) -> Result<f64, BoundError> {
    if !(c >= 3.0) {
        return match policy {
            Case2Policy::Strict => Err(BoundError::Domain(format!("case 2 needs C >= 3, got {c}"))),
            Case2Policy::TrivialBelowThree => Ok(TRIVIAL_EXPONENT),
        };
    }
    let delta = 2.0 * c * (c - 1.0);
    let sq = |y: f64| (y - CASE2_SHIFT).log2().powi(2);
    Ok(1.0
        + (sq(delta) - sq(2.0 * (c - 1.0))) / (4.0 * (c - 1.0))
        + (delta + 1.0).log2() / (2.0 * c))
}

/// Whether `log2(y - s)/(y - s) >= log2(1 + y)/y` with `s` = [`CASE2_SHIFT`].
pub fn shifted_log_ratio_dominates(y: f64) -> bool {
    let z = y - CASE2_SHIFT;
    z.log2() / z >= (1.0 + y).log2() / y
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RefinedPoint {
    pub value: f64,
    #[serde(rename = "D")]
    pub d: usize,
    pub case: Case,
}

/// Per-`t` exponent of the uncollapsed product bound, maximized over integer
/// `D >= max(1, 2(C-1))`:
///
/// - `D < Δ`: `A + B + E + b(D)` where, with `k = 1/(2(C-1))` and
///   `c = ⌈Δ⌉`, `A = (C - (c-1)k) log2(c+1) / c`,
///   `B = k Σ_{h=D+1}^{c-1} log2(h+1)/h`, `E = (k - 1/D) log2(D+1)` and
///   `b(D) = 1 - (C-1)(1 - log2(1 + 2^(-1/D)))/D`. `⌈Δ⌉` stays exact since
///   `Δ` does not grow with `t`; the floors inside the product only shift
///   exponents by `O(1)` and vanish per `t`.
/// - `D >= Δ`: [`case1_exponent`] at the least such admissible `D`, or at
///   `D = 2` when that least value is 1, since `h` decreases on integers
///   from 2 on.
pub fn refined_exponent(c: f64) -> Result<RefinedPoint, BoundError> {
    if !(c > 1.0) || !c.is_finite() {
        return Err(BoundError::Domain(format!(
            "refined exponent needs C > 1, got {c}"
        )));
    }
    let delta = 2.0 * c * (c - 1.0);
    let ceil_delta = delta.ceil() as usize;
    let lo = ((2.0 * (c - 1.0)).ceil() as usize).max(1);
    let k = 1.0 / (2.0 * (c - 1.0));
    let sums = log_ratio_prefix(ceil_delta);
    let cd = ceil_delta as f64;
    let a = (c - (cd - 1.0) * k) * (cd + 1.0).log2() / cd;

    let above_d = ceil_delta.max(lo);
    let mut best = RefinedPoint {
        value: case1_exponent(c, above_d as f64)?,
        d: above_d,
        case: Case::DAboveDelta,
    };
    if above_d == 1 && case1_exponent(c, 2.0)? > best.value {
        best.value = case1_exponent(c, 2.0)?;
        best.d = 2;
    }
    for d in lo..ceil_delta {
        let df = d as f64;
        let b = k * (sums[ceil_delta - 1] - sums[d]);
        let e = (k - 1.0 / df) * (df + 1.0).log2();
        let dense = 1.0 - (c - 1.0) * (1.0 - (1.0 + (-1.0 / df).exp2()).log2()) / df;
        let value = a + b + e + dense;
        if value > best.value {
            best = RefinedPoint {
                value,
                d,
                case: Case::DAtMostDelta,
            };
        }
    }
    Ok(best)
}

/// `prefix[j] = Σ_{h=1}^{j} log2(h+1)/h`, shared across calls.
fn log_ratio_prefix(upto: usize) -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    // covers C up to 10^3
    const SIZE: usize = 2_000_001;
    let table = TABLE.get_or_init(|| {
        let mut v = Vec::with_capacity(SIZE);
        v.push(0.0);
        let mut acc = 0.0;
        for h in 1..SIZE {
            acc += ((h + 1) as f64).log2() / h as f64;
            v.push(acc);
        }
        v
    });
    assert!(upto < SIZE, "⌈Δ⌉ = {upto} exceeds the prefix table");
    table
}
