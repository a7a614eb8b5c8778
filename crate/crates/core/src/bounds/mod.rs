//! Log-space evaluators for the clique-count bounds and the optimizer for
//! their exponential constants. All values are base-2 logarithms.

mod boundt;
mod exponents;
mod gbound;
mod optimize;
mod recursion;

use thiserror::Error;

pub use boundt::{boundt_log2, boundt_value, BoundtValue};
pub use exponents::{
    case1_exponent, case2_exponent, h, refined_exponent, shifted_log_ratio_dominates, Case2Policy,
    RefinedPoint, CASE2_SHIFT, TRIVIAL_EXPONENT,
};
pub use gbound::{g_bound, g_bound_at, BoundParams, BoundResult, Case, Maximizer};
pub use optimize::{
    optimize_constant, optimize_constant_with, BranchSup, ConstantMode, ConstantReport, Convergence,
};
pub use recursion::{g_recursion_check, monotonicity_scan, Direction, PointCheck, RecursionReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error("D must be at least 1")]
    ZeroD,
    #[error("t must be at least 1")]
    ZeroT,
    #[error("x must be at least 1")]
    ZeroX,
    #[error("no integer D in [{lo}, {hi}]")]
    EmptyDRange { lo: usize, hi: usize },
    #[error("{0}")]
    Domain(String),
    #[error("Δ = {0} is too large to evaluate the product term")]
    DeltaTooLarge(f64),
}
