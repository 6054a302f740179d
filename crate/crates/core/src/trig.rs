//! Numeric certification of the cosine-product identities behind the
//! closed-form determinants:
//!
//! * `∏_{m=1}^{k} cos(2mπ/(2k+1)) = (-1)^k ∏_{m=1}^{k} cos((2m-1)π/(2k+1))`
//! * `∏_{m=1}^{k} cos(mπ/(k+1)) = sin((k+1)π/2) / 2^k`
//! * `(∏_{m=1}^{k} cos(2mπ/(2k+1)))² = 4^{-k}`

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

/// Absolute tolerance for `k <= ABSOLUTE_UP_TO`.
pub const ABS_TOL: f64 = 1e-12;
/// Relative tolerance beyond that; both sides decay like `4^{-k}`.
pub const REL_TOL: f64 = 1e-10;
pub const ABSOLUTE_UP_TO: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub k: u32,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_error: f64,
    /// Absolute bound `abs_error` was compared against.
    pub tolerance: f64,
    pub passed: bool,
}

impl IdentityReport {
    fn new(k: u32, lhs: f64, rhs: f64) -> Self {
        let abs_error = (lhs - rhs).abs();
        let tolerance = if k <= ABSOLUTE_UP_TO || rhs == 0.0 {
            ABS_TOL
        } else {
            REL_TOL * rhs.abs()
        };
        IdentityReport {
            k,
            lhs,
            rhs,
            abs_error,
            tolerance,
            passed: abs_error <= tolerance,
        }
    }
}

fn cos_product(k: u32, angle: impl Fn(u32) -> f64) -> f64 {
    (1..=k).map(|m| angle(m).cos()).product()
}

/// `sin(j·π/2)` from `j mod 4`, exact for every `j`.
pub fn sin_half_turns(j: u64) -> f64 {
    match j % 4 {
        1 => 1.0,
        3 => -1.0,
        _ => 0.0,
    }
}

pub fn check_parity_identity(k: u32) -> IdentityReport {
    assert!(k >= 1);
    let d = f64::from(2 * k + 1);
    let lhs = cos_product(k, |m| f64::from(2 * m) * PI / d);
    let odd = cos_product(k, |m| f64::from(2 * m - 1) * PI / d);
    let rhs = if k.is_multiple_of(2) { odd } else { -odd };
    IdentityReport::new(k, lhs, rhs)
}

pub fn check_halfrange_product(k: u32) -> IdentityReport {
    assert!(k >= 1);
    let d = f64::from(k + 1);
    let lhs = cos_product(k, |m| f64::from(m) * PI / d);
    let rhs = sin_half_turns(u64::from(k) + 1) * 0.5f64.powi(k as i32);
    IdentityReport::new(k, lhs, rhs)
}

pub fn check_squared_product(k: u32) -> IdentityReport {
    assert!(k >= 1);
    let d = f64::from(2 * k + 1);
    let p = cos_product(k, |m| f64::from(2 * m) * PI / d);
    IdentityReport::new(k, p * p, 0.25f64.powi(k as i32))
}

/// All three identities for `k = 1 ..= max_k`, grouped by identity.
pub fn check_all(max_k: u32) -> Vec<(&'static str, IdentityReport)> {
    let mut out = Vec::with_capacity(3 * max_k as usize);
    for k in 1..=max_k {
        out.push(("parity", check_parity_identity(k)));
    }
    for k in 1..=max_k {
        out.push(("halfrange", check_halfrange_product(k)));
    }
    for k in 1..=max_k {
        out.push(("squared", check_squared_product(k)));
    }
    out
}
