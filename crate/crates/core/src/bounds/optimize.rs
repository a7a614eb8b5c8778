//! Maximization of the per-`t` exponents over `C`.
//!
//! A logarithmic grid in `C - 1` locates the best region; golden-section
//! search and shrinking local grids then refine it. Several objectives jump
//! where `⌈Δ⌉` or the admissible integer range of `D` changes, so the local
//! grids keep the search honest where golden-section assumes unimodality.

use serde::Serialize;

use super::exponents::{
    case1_exponent, case2_exponent, refined_exponent, Case2Policy, TRIVIAL_EXPONENT,
};
use super::BoundError;
use crate::par::{self, Execution};

const C_MIN: f64 = 1.0 + 1e-6;
const C_MAX: f64 = 1e3;
const GRID_POINTS: usize = 400;
const LOCAL_POINTS: usize = 21;
const TOLERANCE: f64 = 1e-6;
const MAX_ROUNDS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstantMode {
    /// `max(case 1, case 2, trivial)`, integer `D`.
    Coarse,
    /// The uncollapsed product bound; the trivial branch is reported but
    /// excluded.
    Refined,
    /// Case 1 alone at `D = 2C(C-1)`.
    Case1,
    /// Case 2 alone over `C >= 3`.
    Case2,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchSup {
    pub branch: &'static str,
    pub value: f64,
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "D")]
    pub d: f64,
    /// Whether the branch takes part in the reported constant.
    pub included: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Convergence {
    pub evaluations: usize,
    pub rounds: usize,
    /// Width in `ln(C - 1)` of the final bracket.
    pub bracket_width: f64,
    /// Gain of the last refinement round.
    pub last_improvement: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantReport {
    pub mode: ConstantMode,
    pub constant: f64,
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub branch: &'static str,
    pub branches: Vec<BranchSup>,
    pub convergence: Convergence,
}

pub fn optimize_constant(mode: ConstantMode) -> Result<ConstantReport, BoundError> {
    optimize_constant_with(mode, Execution::default())
}

pub fn optimize_constant_with(
    mode: ConstantMode,
    exec: Execution,
) -> Result<ConstantReport, BoundError> {
    let case1_real = |c: f64| {
        let d = (2.0 * c * (c - 1.0)).max(1.0);
        (case1_exponent(c, d).unwrap_or(f64::NEG_INFINITY), d)
    };
    // least admissible integer D >= Δ, or 2 when that is 1 and h(2) > h(1)
    let case1_int = |c: f64| {
        let least = (2.0 * c * (c - 1.0)).max(2.0 * (c - 1.0)).max(1.0).ceil();
        [least, least.max(2.0)]
            .into_iter()
            .map(|d| (case1_exponent(c, d).unwrap_or(f64::NEG_INFINITY), d))
            .fold(
                (f64::NEG_INFINITY, least),
                |a, b| if b.0 > a.0 { b } else { a },
            )
    };
    let case2 = |c: f64| {
        let v = case2_exponent(c, Case2Policy::Strict).unwrap_or(f64::NEG_INFINITY);
        (v, 2.0 * c * (c - 1.0))
    };
    let refined = |c: f64| match refined_exponent(c) {
        Ok(p) => (p.value, p.d as f64),
        Err(_) => (f64::NEG_INFINITY, f64::NAN),
    };
    let trivial = BranchSup {
        branch: "trivial",
        value: TRIVIAL_EXPONENT,
        c: 3.0,
        d: f64::NAN,
        included: true,
    };

    let (branches, convergence) = match mode {
        ConstantMode::Case1 => {
            let (b, conv) = sup("case1", exec, C_MIN, C_MAX, case1_real);
            (vec![b], conv)
        }
        ConstantMode::Case2 => {
            let (b, conv) = sup("case2", exec, 3.0, C_MAX, case2);
            (vec![b], conv)
        }
        ConstantMode::Coarse => {
            let (b1, c1) = sup("case1", exec, C_MIN, C_MAX, case1_int);
            let (b2, c2) = sup("case2", exec, 3.0, C_MAX, case2);
            (vec![b1, b2, trivial], merge(c1, c2))
        }
        ConstantMode::Refined => {
            let (b, conv) = sup("refined", exec, C_MIN, C_MAX, refined);
            (
                vec![
                    b,
                    BranchSup {
                        included: false,
                        ..trivial
                    },
                ],
                conv,
            )
        }
    };
    let best = branches
        .iter()
        .filter(|b| b.included)
        .max_by(|a, b| a.value.total_cmp(&b.value))
        .expect("at least one branch is included")
        .clone();
    // the report keeps NaN out of JSON
    let d = if best.d.is_nan() { 0.0 } else { best.d };
    Ok(ConstantReport {
        mode,
        constant: best.value,
        c: best.c,
        d,
        branch: best.branch,
        branches: branches
            .into_iter()
            .map(|b| BranchSup {
                d: if b.d.is_nan() { 0.0 } else { b.d },
                ..b
            })
            .collect(),
        convergence,
    })
}

fn merge(a: Convergence, b: Convergence) -> Convergence {
    Convergence {
        evaluations: a.evaluations + b.evaluations,
        rounds: a.rounds.max(b.rounds),
        bracket_width: a.bracket_width.max(b.bracket_width),
        last_improvement: a.last_improvement.max(b.last_improvement),
        converged: a.converged && b.converged,
    }
}

/// Supremum of `f(C).0` over `C` in `[lo, hi]`; `f(C).1` is the `D` used.
fn sup<F>(branch: &'static str, exec: Execution, lo: f64, hi: f64, f: F) -> (BranchSup, Convergence)
where
    F: Fn(f64) -> (f64, f64) + Sync + Send,
{
    // search variable u = ln(C - 1)
    let to_c = |u: f64| 1.0 + u.exp();
    let (u_lo, u_hi) = ((lo - 1.0).ln(), (hi - 1.0).ln());
    let step = (u_hi - u_lo) / (GRID_POINTS - 1) as f64;
    let grid = par::map_range(exec, GRID_POINTS, |i| {
        let u = u_lo + step * i as f64;
        let c = to_c(u).clamp(lo, hi);
        let (v, d) = f(c);
        (u, v, c, d)
    });
    let mut evaluations = GRID_POINTS;
    let (i, &(mut bu, mut bv, mut bc, mut bd)) = grid
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .1.total_cmp(&b.1 .1).then(b.0.cmp(&a.0)))
        .expect("grid is non-empty");
    let mut left = grid[i.saturating_sub(1)].0;
    let mut right = grid[(i + 1).min(GRID_POINTS - 1)].0;

    let eval = |u: f64, evaluations: &mut usize| {
        *evaluations += 1;
        let c = to_c(u).clamp(lo, hi);
        let (v, d) = f(c);
        (v, c, d)
    };

    // golden-section on the bracket
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (left, right);
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let mut f1 = eval(x1, &mut evaluations);
    let mut f2 = eval(x2, &mut evaluations);
    while b - a > 1e-12 {
        for (x, (v, c, d)) in [(x1, f1), (x2, f2)] {
            if v > bv {
                (bu, bv, bc, bd) = (x, v, c, d);
            }
        }
        if f1.0 >= f2.0 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = eval(x1, &mut evaluations);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = eval(x2, &mut evaluations);
        }
    }

    // shrinking local grids around the incumbent
    let mut rounds = 0;
    let mut last_improvement = f64::INFINITY;
    let half = (right - left) / 2.0;
    left = bu - half;
    right = bu + half;
    while rounds < MAX_ROUNDS {
        rounds += 1;
        let width = right - left;
        let before = bv;
        let h = width / (LOCAL_POINTS - 1) as f64;
        for j in 0..LOCAL_POINTS {
            let u = (left + h * j as f64).clamp(u_lo, u_hi);
            let (v, c, d) = eval(u, &mut evaluations);
            if v > bv {
                (bu, bv, bc, bd) = (u, v, c, d);
            }
        }
        last_improvement = bv - before;
        left = bu - h;
        right = bu + h;
        if last_improvement < TOLERANCE * 1e-6 && right - left < 1e-9 {
            break;
        }
    }
    let width = right - left;
    (
        BranchSup {
            branch,
            value: bv,
            c: bc,
            d: bd,
            included: true,
        },
        Convergence {
            evaluations,
            rounds,
            bracket_width: width,
            last_improvement,
            converged: last_improvement < TOLERANCE,
        },
    )
}
