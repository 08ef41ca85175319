//! Branching-factor arithmetic for the search-tree analysis.
//!
//! A branching rule that reduces the budget by `c_1, ..., c_l` across its
//! branches yields the recurrence T(k) <= sum T(k - c_i) + 1, whose solution
//! grows like x^k where x is the unique root >= 1 of
//! f(x) = 1 - sum x^(-c_i). This module computes that root and carries the
//! fixed decrement vectors of the solver's branching steps.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum RecurrenceError {
    #[error("decrement vector is empty")]
    Empty,
    #[error("decrement at index {0} is zero; every branch must consume budget")]
    ZeroDecrement(usize),
    #[error("tolerance {0} is not positive")]
    BadTolerance(f64),
}

/// Worst-case decrement vectors of the branching steps, paired with the
/// step names used in solver statistics. Reduction-only steps (trivial
/// components, tails, the bipartite rule, and the once-per-component
/// 3-regular split) have no vector here because they do not drive the
/// exponential growth.
pub const STEP_VECTORS: [(&str, &[usize]); 6] = [
    ("dominated", &[1, 2]),
    ("satellite_deg4", &[1, 4, 4, 4, 4]),
    ("normal_deg4", &[1, 4, 5, 5, 5, 5]),
    ("chain", &[2, 3, 3, 3]),
    ("triangle_neighbor", &[3, 3, 3, 3, 3]),
    ("deg2_with_deg3", &[2, 3, 3, 3, 4]),
];

/// Largest branching factor over all solver steps (attained by the
/// satellite step), i.e. the base of the whole-algorithm running-time bound.
pub const WORST_CASE_FACTOR: f64 = 1.7485;

fn f(x: f64, decrements: &[usize]) -> f64 {
    1.0 - decrements.iter().map(|&c| x.powi(-(c as i32))).sum::<f64>()
}

/// The root x* >= 1 of f(x) = 1 - sum x^(-c_i), found by bisection;
/// returns a value with |f(x*)| < tol. A single branch solves to exactly 1.
pub fn branching_factor(decrements: &[usize], tol: f64) -> Result<f64, RecurrenceError> {
    if decrements.is_empty() {
        return Err(RecurrenceError::Empty);
    }
    if let Some(i) = decrements.iter().position(|&c| c == 0) {
        return Err(RecurrenceError::ZeroDecrement(i));
    }
    if !(tol > 0.0) {
        return Err(RecurrenceError::BadTolerance(tol));
    }
    let l = decrements.len();
    if l == 1 {
        return Ok(1.0);
    }
    // f(1) = 1 - l < 0 and f(l + 1) > 0 since already the largest branch term
    // alone satisfies l * x^(-1) < 1 at x = l + 1; f is strictly increasing
    // on [1, oo), so the root is bracketed.
    let (mut lo, mut hi) = (1.0f64, (l + 1) as f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let val = f(mid, decrements);
        if val.abs() < tol {
            return Ok(mid);
        }
        if val < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // 200 halvings of an interval of width <= l shrink it far below any
    // reasonable tolerance; reaching here means tol was near subnormal.
    Ok(0.5 * (lo + hi))
}

/// Default tolerance used by the CLI and the frozen-value tests.
pub const DEFAULT_TOL: f64 = 1e-9;
