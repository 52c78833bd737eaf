//! Associated Laguerre polynomials `L_n^(alpha)` with integer superscript.
//!
//! The admissible labels are `n >= 0` and `n + alpha >= 0`, which is exactly the
//! range where the plane-harmonic labels satisfy `j - m in N`. Within that range
//! the polynomial is evaluated by the ascending three-term recurrence in degree,
//! carried in double-word arithmetic so that the cancellation occurring for
//! negative `alpha` near the origin does not destroy relative accuracy.

mod exact;
mod recurrence;

pub use exact::ExactPolynomial;
pub use recurrence::{recurrence_residual, RecurrenceCheck, Relation, RelationResidual};

use statrs::function::gamma::ln_gamma;

use crate::compensated::DoubleWord;
use crate::error::{domain, Result};

/// Labels `(n, alpha)` of an associated Laguerre polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaguerreIndex {
    n: u32,
    alpha: i32,
}

impl LaguerreIndex {
    pub fn new(n: i64, alpha: i64) -> Result<Self> {
        if n < 0 {
            return domain(format!("negative degree n = {n}"));
        }
        if n + alpha < 0 {
            return domain(format!("n + alpha = {} is negative (n = {n}, alpha = {alpha})", n + alpha));
        }
        if n > u32::MAX as i64 || alpha.abs() > i32::MAX as i64 {
            return domain("label out of range");
        }
        Ok(LaguerreIndex { n: n as u32, alpha: alpha as i32 })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alpha(&self) -> i32 {
        self.alpha
    }
}

/// Degree recurrence for any integer `alpha`; negative degree yields 0.
pub(crate) fn eval_raw(n: i64, alpha: i64, y: f64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    let a = alpha as f64;
    let mut prev = DoubleWord::from_f64(1.0);
    if n == 0 {
        return 1.0;
    }
    let mut curr = DoubleWord::diff(1.0 + a, y);
    for k in 1..n {
        let kf = k as f64;
        let lead = DoubleWord::diff(2.0 * kf + 1.0 + a, y);
        let next = lead
            .mul(curr)
            .add(prev.mul_f64(-(kf + a)))
            .div_f64(kf + 1.0);
        prev = curr;
        curr = next;
    }
    curr.to_f64()
}

/// Value at `y` for labels that may have left the admissible set through a shift.
///
/// Negative degree is 0; a non-negative degree with `n + alpha < 0` is a domain error.
pub(crate) fn eval_shifted(n: i64, alpha: i64, y: f64) -> Result<f64> {
    if n < 0 {
        return Ok(0.0);
    }
    let idx = LaguerreIndex::new(n, alpha)?;
    Ok(laguerre_eval(idx, y))
}

/// `L_n^(alpha)(y)` with the normalization `L_n^(alpha)(0) = C(n + alpha, n)`.
pub fn laguerre_eval(idx: LaguerreIndex, y: f64) -> f64 {
    eval_raw(idx.n as i64, idx.alpha as i64, y)
}

/// Evaluates `L_n^(-a)(y)` through `(-y)^a (n - a)!/n! L_(n-a)^(a)(y)` for `0 <= a <= n`.
///
/// `idx.alpha()` must be non-positive.
pub fn laguerre_reflect(idx: LaguerreIndex, y: f64) -> Result<f64> {
    if idx.alpha > 0 {
        return domain(format!("reflection needs alpha <= 0, got {}", idx.alpha));
    }
    let a = idx.alpha.unsigned_abs();
    if a > idx.n {
        return domain(format!("|alpha| = {a} exceeds n = {}", idx.n));
    }
    let reduced = idx.n - a;
    // (n - a)!/n! = 1/((n - a + 1) ... n)
    let mut ratio = 1.0;
    for k in (reduced + 1)..=idx.n {
        ratio /= k as f64;
    }
    let power = (-y).powi(a as i32);
    Ok(power * ratio * eval_raw(reduced as i64, a as i64, y))
}

/// First or second derivative in `y`, from `d/dy L_n^(alpha) = -L_(n-1)^(alpha+1)`.
pub fn laguerre_deriv(idx: LaguerreIndex, y: f64, order: u32) -> Result<f64> {
    let n = idx.n as i64;
    let a = idx.alpha as i64;
    match order {
        1 => Ok(-eval_raw(n - 1, a + 1, y)),
        2 => Ok(eval_raw(n - 2, a + 2, y)),
        _ => domain(format!("derivative order must be 1 or 2, got {order}")),
    }
}

/// `sqrt((j + m)! / (j - m)!)` for half-integer `j`, `m` given as `2j`, `2m`.
pub fn factorial_ratio_sqrt(two_j: i64, two_m: i64) -> Result<f64> {
    let gap = two_j - two_m.abs();
    if two_j < 0 || gap < 0 || gap % 2 != 0 {
        return domain(format!(
            "j - |m| must be a non-negative integer (2j = {two_j}, 2m = {two_m})"
        ));
    }
    let upper = ((two_j + two_m) / 2) as f64;
    let lower = ((two_j - two_m) / 2) as f64;
    Ok((0.5 * (ln_gamma(upper + 1.0) - ln_gamma(lower + 1.0))).exp())
}
