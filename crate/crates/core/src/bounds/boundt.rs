use num_rational::Ratio;
use serde::Serialize;

use super::BoundError;

/// Bounds for a `t`-vertex graph with `x` missing edges whose complement has
/// maximum degree `D`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundtValue {
    /// `log2( 2^(t - x/D) (1 + 2^(-1/D))^(x/D) )`.
    pub log2_bound: f64,
    /// `t - x/D`, exact.
    pub clique_number_bound: Ratio<i64>,
}

pub fn boundt_value(t: usize, x: usize, d: usize) -> Result<BoundtValue, BoundError> {
    if d == 0 {
        return Err(BoundError::ZeroD);
    }
    if t == 0 {
        return Err(BoundError::ZeroT);
    }
    let (t, x, d) = (t as i64, x as i64, d as i64);
    Ok(BoundtValue {
        log2_bound: boundt_log2(t as f64, x as f64, d as f64),
        clique_number_bound: Ratio::new(t * d - x, d),
    })
}

/// Real-argument form used by the evaluators.
pub fn boundt_log2(t: f64, x: f64, d: f64) -> f64 {
    let r = x / d;
    t - r + r * (1.0 + (-1.0 / d).exp2()).log2()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        // 2^6 (3/2)^4 = 324
        let v = boundt_value(10, 4, 1).unwrap();
        assert!((v.log2_bound - 324f64.log2()).abs() < 1e-12);
        assert_eq!(v.clique_number_bound, Ratio::from_integer(6));
        let v = boundt_value(9, 0, 3).unwrap();
        assert_eq!(v.log2_bound, 9.0);
        let v = boundt_value(12, 6, 2).unwrap();
        let expected = 9.0 + 3.0 * (1.0 + 0.5f64.sqrt()).log2();
        assert!((v.log2_bound - expected).abs() < 1e-12);
        assert!((v.log2_bound - 11.3146).abs() < 1e-4);
        assert_eq!(v.clique_number_bound, Ratio::from_integer(9));
        assert_eq!(
            boundt_value(5, 3, 2).unwrap().clique_number_bound,
            Ratio::new(7, 2)
        );
        assert_eq!(boundt_value(5, 3, 0), Err(BoundError::ZeroD));
    }

    #[test]
    fn large_t_is_finite() {
        let v = boundt_log2(1e6, 5e5, 1e3);
        assert!(v.is_finite() && v < 1e6);
    }
}
