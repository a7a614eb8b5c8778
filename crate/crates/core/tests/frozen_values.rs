//! Numbers recomputed here from their defining formulas by plain grid scans
//! and frozen, then compared against the library's optimizer.

use clique_extremal::bounds::{
    boundt_value, optimize_constant, refined_exponent, BoundParams, ConstantMode,
};

fn log2(x: f64) -> f64 {
    x.log2()
}

/// Case 1 straight from its definition at `D = Δ = 2C(C-1)`.
fn case1_direct(c: f64) -> f64 {
    let d = 2.0 * c * (c - 1.0);
    let dense_loss = 1.0 - log2(1.0 + 2f64.powf(-1.0 / d));
    1.0 + (c - 1.0) * (log2(d + 1.0) - dense_loss) / d
}

/// Case 2 from its definition, for `C >= 3`.
fn case2_direct(c: f64) -> f64 {
    let s = 1.95;
    let delta = 2.0 * c * (c - 1.0);
    let sq = |y: f64| log2(y - s) * log2(y - s);
    1.0 + (sq(delta) - sq(2.0 * (c - 1.0))) / (4.0 * (c - 1.0)) + log2(delta + 1.0) / (2.0 * c)
}

fn grid_max(lo: f64, hi: f64, points: usize, f: impl Fn(f64) -> f64) -> (f64, f64) {
    (0..=points)
        .map(|i| lo * (hi / lo).powf(i as f64 / points as f64))
        .map(|c| (f(c), c))
        .fold(
            (f64::NEG_INFINITY, 0.0),
            |a, b| if b.0 > a.0 { b } else { a },
        )
}

const CASE1: f64 = 1.61098;
const CASE2: f64 = 2.91048;
const REFINED: f64 = 1.81587;

#[test]
fn case1_supremum() {
    let (scan, _) = grid_max(1.000_001, 1000.0, 200_000, case1_direct);
    assert!((scan - CASE1).abs() < 2e-5, "{scan}");
    let r = optimize_constant(ConstantMode::Case1).unwrap();
    assert!(
        r.constant >= scan - 1e-9 && r.constant - scan < 1e-5,
        "{} vs {scan}",
        r.constant
    );
    assert!(r.constant <= 1.64);
}

#[test]
fn case2_supremum_and_maximizer() {
    let (scan, at) = grid_max(3.0, 1000.0, 200_000, case2_direct);
    assert!((scan - CASE2).abs() < 2e-5, "{scan}");
    assert!((at - 3.597).abs() < 0.01, "{at}");
    let r = optimize_constant(ConstantMode::Case2).unwrap();
    assert!((r.constant - scan).abs() < 1e-5);
    assert!((r.c - at).abs() < 0.01);
    assert!(r.constant <= 2.92);
}

#[test]
fn coarse_constant_is_the_trivial_three() {
    let r = optimize_constant(ConstantMode::Coarse).unwrap();
    assert!((r.constant - 3.0).abs() <= 1e-6);
}

#[test]
fn refined_supremum() {
    let (scan, at) = grid_max(1.01, 50.0, 4000, |c| refined_exponent(c).unwrap().value);
    assert!((scan - REFINED).abs() < 5e-5, "{scan} at {at}");
    let r = optimize_constant(ConstantMode::Refined).unwrap();
    assert!(r.constant >= scan - 1e-9 && r.constant - scan < 1e-4);
    assert!((r.c - 4.945).abs() < 0.01, "{}", r.c);
    assert_eq!(r.d, 10.0);
    assert!((1.70..=1.8165).contains(&r.constant));
}

#[test]
fn dense_bound_at_twelve_six_two() {
    // 2^9 (1 + 2^(-1/2))^3
    let expected = (512.0 * (1.0 + 0.5f64.sqrt()).powi(3)).log2();
    let v = boundt_value(12, 6, 2).unwrap();
    assert!((v.log2_bound - expected).abs() < 1e-12);
    assert!((v.log2_bound - 11.3146).abs() < 1e-4);
    assert_eq!(*v.clique_number_bound.numer(), 9);
    assert_eq!(*v.clique_number_bound.denom(), 1);
}

#[test]
fn bound_params_accessors() {
    let p = BoundParams::new(40, 10, 10, 8);
    assert_eq!(p.c(), 4.0);
    assert_eq!(p.delta(), 8.0);
    assert_eq!(p.d_min(), 2);
}
