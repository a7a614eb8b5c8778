//! Consistency checks of the `g` evaluator against the one-step recursion
//! and the monotonicity of `g` in each argument.

use serde::Serialize;

use super::gbound::{g_bound, BoundParams};
use super::BoundError;

const SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    M,
    X,
    T,
    D,
}

impl Direction {
    const ALL: [Direction; 4] = [Direction::M, Direction::X, Direction::T, Direction::D];

    fn step(self, p: BoundParams) -> BoundParams {
        let mut q = p;
        match self {
            Direction::M => q.m += 1,
            Direction::X => q.x += 1,
            Direction::T => q.t += 1,
            Direction::D => q.d += 1,
        }
        q
    }

    /// `g` should not decrease along `m`, `t`, `d` nor increase along `x`.
    fn increasing(self) -> bool {
        self != Direction::X
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointCheck {
    pub direction: Direction,
    pub from: BoundParams,
    pub before: f64,
    /// `None` when the stepped parameters leave the evaluator's domain.
    pub after: Option<f64>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecursionStep {
    pub delta1: usize,
    /// `log2(Δ₁ + 1) + log2 g(m - Δ₁, x, t, Δ₁)`.
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecursionReport {
    pub params: BoundParams,
    pub log2_g: f64,
    /// Some `Δ₁ <= d` has `g(m,x,t,d) <= (Δ₁+1) g(m-Δ₁,x,t,Δ₁)`.
    pub holds: bool,
    /// The smallest right-hand side among admissible `Δ₁`.
    pub tightest: Option<RecursionStep>,
    /// The largest right-hand side; `g` closes the induction when this is at
    /// most `log2_g`.
    pub loosest: Option<RecursionStep>,
    pub closes_induction: bool,
    pub point_checks: Vec<PointCheck>,
    pub monotone: bool,
}

fn point_check(p: BoundParams, direction: Direction) -> Result<PointCheck, BoundError> {
    let before = g_bound(p)?.log2_bound;
    let after = g_bound(direction.step(p)).ok().map(|r| r.log2_bound);
    let ok = match after {
        None => true,
        Some(a) if direction.increasing() => a >= before - SLACK,
        Some(a) => a <= before + SLACK,
    };
    Ok(PointCheck {
        direction,
        from: p,
        before,
        after,
        ok,
    })
}

pub fn g_recursion_check(p: BoundParams) -> Result<RecursionReport, BoundError> {
    let log2_g = g_bound(p)?.log2_bound;
    let steps: Vec<RecursionStep> = (p.d_min()..=p.d)
        .filter(|&d1| d1 < p.m)
        .filter_map(|d1| {
            let inner = g_bound(BoundParams::new(p.m - d1, p.x, p.t, d1)).ok()?;
            Some(RecursionStep {
                delta1: d1,
                rhs: ((d1 + 1) as f64).log2() + inner.log2_bound,
            })
        })
        .collect();
    let tightest = steps.iter().min_by(|a, b| a.rhs.total_cmp(&b.rhs)).cloned();
    let loosest = steps.iter().max_by(|a, b| a.rhs.total_cmp(&b.rhs)).cloned();
    let point_checks = Direction::ALL
        .iter()
        .map(|&d| point_check(p, d))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RecursionReport {
        params: p,
        log2_g,
        holds: steps.iter().any(|s| log2_g <= s.rhs + SLACK),
        closes_induction: loosest.as_ref().is_none_or(|s| s.rhs <= log2_g + SLACK),
        tightest,
        loosest,
        monotone: point_checks.iter().all(|c| c.ok),
        point_checks,
    })
}

/// Failed single-step monotonicity checks over the given lattice points.
pub fn monotonicity_scan(points: &[BoundParams]) -> Vec<PointCheck> {
    points
        .iter()
        .flat_map(|&p| Direction::ALL.map(|d| point_check(p, d)))
        .filter_map(Result::ok)
        .filter(|c| !c.ok)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recursion_at_reference_point() {
        let r = g_recursion_check(BoundParams::new(40, 10, 10, 8)).unwrap();
        assert!(r.holds);
        assert!((r.log2_g - 24.761).abs() < 1e-3, "{}", r.log2_g);
        assert_eq!(r.point_checks.len(), 4);
    }

    #[test]
    fn evaluator_drops_between_29_and_30() {
        let bad = monotonicity_scan(&[BoundParams::new(29, 10, 10, 8)]);
        assert!(bad
            .iter()
            .any(|c| c.direction == Direction::M && c.after.unwrap() < c.before));
    }

    #[test]
    fn outside_domain_is_skipped() {
        // x + 1 = 16 needs D >= 4 > d
        let r = g_recursion_check(BoundParams::new(40, 15, 10, 3)).unwrap();
        let x = r
            .point_checks
            .iter()
            .find(|c| c.direction == Direction::X)
            .unwrap();
        assert_eq!(x.after, None);
        assert!(x.ok);
    }
}
