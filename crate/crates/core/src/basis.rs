//! Normalized radial functions on the half-line and the plane harmonics built from them.
//!
//! The radial function for labels `(j, m)` is
//! `sqrt((j+m)!/(j-m)!) y^(-m) e^(-y/2) L_(j+m)^(-2m)(y)`. For `m > 0` the
//! negative power of `y` is cancelled analytically with the Laguerre reflection
//! identity, which gives
//! `(-1)^(2m) sqrt((j-m)!/(j+m)!) y^m e^(-y/2) L_(j-m)^(2m)(y)`.
//! The factor `(-1)^(2m)` is kept: the functions for `m` and `-m` agree only up
//! to that sign, so they differ in sign for half-integer `m`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::laguerre::{eval_raw, factorial_ratio_sqrt, laguerre_eval, LaguerreIndex};

/// Labels `(j, m)` stored as `(2j, 2m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpinIndex {
    two_j: u32,
    two_m: i32,
}

impl SpinIndex {
    pub fn new(two_j: i64, two_m: i64) -> Result<Self> {
        if two_j < 0 {
            return domain(format!("2j = {two_j} is negative"));
        }
        let gap = two_j - two_m.abs();
        if gap < 0 {
            return domain(format!("|m| exceeds j (2j = {two_j}, 2m = {two_m})"));
        }
        if gap % 2 != 0 {
            return domain(format!("2j = {two_j} and 2m = {two_m} differ in parity"));
        }
        if two_j > i32::MAX as i64 {
            return domain("2j out of range");
        }
        Ok(SpinIndex { two_j: two_j as u32, two_m: two_m as i32 })
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn two_m(&self) -> i32 {
        self.two_m
    }

    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    pub fn m(&self) -> f64 {
        self.two_m as f64 / 2.0
    }

    pub fn sector(&self) -> Sector {
        Sector::of_two_m(self.two_m as i64)
    }

    /// Neighbour with `m` shifted by `delta` (in whole units), if still inside the multiplet.
    pub fn shifted(&self, delta: i32) -> Option<SpinIndex> {
        SpinIndex::new(self.two_j as i64, self.two_m as i64 + 2 * delta as i64).ok()
    }

    /// All labels of one multiplet, `m` ascending.
    pub fn multiplet(two_j: u32) -> impl Iterator<Item = SpinIndex> {
        let two_j = two_j as i32;
        (0..=two_j).map(move |k| SpinIndex { two_j: two_j as u32, two_m: -two_j + 2 * k })
    }
}

impl fmt::Display for SpinIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn half(x: i64) -> String {
            if x % 2 == 0 {
                format!("{}", x / 2)
            } else {
                format!("{x}/2")
            }
        }
        write!(f, "(j={}, m={})", half(self.two_j as i64), half(self.two_m as i64))
    }
}

/// Parity class of `2m`: integer or half-integer labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sector {
    Integer,
    HalfInteger,
}

impl Sector {
    pub fn of_two_m(two_m: i64) -> Sector {
        if two_m.rem_euclid(2) == 0 {
            Sector::Integer
        } else {
            Sector::HalfInteger
        }
    }

    /// Parity of `2j` (and `2m`) in this sector.
    pub fn parity(self) -> u32 {
        match self {
            Sector::Integer => 0,
            Sector::HalfInteger => 1,
        }
    }

    /// Every label of the sector with `j <= j_max`, sorted by `(2j, 2m)`.
    pub fn labels(self, two_j_max: u32) -> Vec<SpinIndex> {
        (0..=two_j_max)
            .filter(|tj| tj % 2 == self.parity())
            .flat_map(SpinIndex::multiplet)
            .collect()
    }
}

/// A point `(y, phi)` of the half-plane `[0, inf) x [-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanePoint {
    pub y: f64,
    pub phi: f64,
}

impl PlanePoint {
    pub fn new(y: f64, phi: f64) -> Result<Self> {
        if !(y.is_finite() && y >= 0.0) {
            return domain(format!("y = {y} must be finite and non-negative"));
        }
        if !(-PI..=PI).contains(&phi) {
            return domain(format!("phi = {phi} outside [-pi, pi]"));
        }
        Ok(PlanePoint { y, phi })
    }
}

/// `(n, alpha) -> (j, m) = (n + alpha/2, -alpha/2)`.
pub fn index_to_spin(idx: LaguerreIndex) -> SpinIndex {
    let two_j = 2 * idx.n() as i64 + idx.alpha() as i64;
    let two_m = -(idx.alpha() as i64);
    SpinIndex::new(two_j, two_m).expect("admissible Laguerre labels map to valid spin labels")
}

/// `(j, m) -> (n, alpha) = (j + m, -2m)`.
pub fn spin_to_index(s: SpinIndex) -> LaguerreIndex {
    let n = (s.two_j as i64 + s.two_m as i64) / 2;
    LaguerreIndex::new(n, -(s.two_m as i64)).expect("valid spin labels map to admissible Laguerre labels")
}

/// `y^(k/2)` for `k >= 0`.
fn half_power(y: f64, two_mu: u32) -> f64 {
    let whole = y.powi((two_mu / 2) as i32);
    if two_mu % 2 == 1 {
        whole * y.sqrt()
    } else {
        whole
    }
}

/// Pieces of the cancelled form `c y^mu e^(-y/2) P(y)` with `P = L_(j-|m|)^(2|m|)`.
struct CancelledForm {
    prefactor: f64,
    two_mu: u32,
    degree: i64,
    order: i64,
}

impl CancelledForm {
    fn new(s: SpinIndex) -> Self {
        let two_mu = s.two_m.unsigned_abs();
        let magnitude = factorial_ratio_sqrt(s.two_j as i64, -(two_mu as i64))
            .expect("valid spin labels");
        // (-1)^(2m) from the reflection identity, for m > 0 only
        let sign = if s.two_m > 0 && s.two_m % 2 != 0 { -1.0 } else { 1.0 };
        CancelledForm {
            prefactor: sign * magnitude,
            two_mu,
            degree: (s.two_j as i64 - two_mu as i64) / 2,
            order: two_mu as i64,
        }
    }

    fn polynomial(&self, y: f64, derivative: u32) -> f64 {
        let k = derivative as i64;
        let sign = if derivative % 2 == 1 { -1.0 } else { 1.0 };
        sign * eval_raw(self.degree - k, self.order + k, y)
    }
}

/// `(c, 2 mu, k, a)` with the radial function equal to `c y^mu e^(-y/2) L_k^(a)(y)`.
pub(crate) fn cancelled_parts(s: SpinIndex) -> (f64, u32, i64, i64) {
    let form = CancelledForm::new(s);
    (form.prefactor, form.two_mu, form.degree, form.order)
}

/// The normalized radial function, evaluated in its cancelled form (valid at `y = 0`).
pub fn radial(s: SpinIndex, y: f64) -> Result<f64> {
    if !(y.is_finite() && y >= 0.0) {
        return domain(format!("y = {y} must be finite and non-negative"));
    }
    let form = CancelledForm::new(s);
    Ok(form.prefactor * half_power(y, form.two_mu) * (-0.5 * y).exp() * form.polynomial(y, 0))
}

/// The radial function evaluated straight from its definition, without the
/// reflection identity. Requires `y > 0`.
pub fn radial_literal(s: SpinIndex, y: f64) -> Result<f64> {
    if !(y.is_finite() && y > 0.0) {
        return domain(format!("literal form needs y > 0, got {y}"));
    }
    let idx = spin_to_index(s);
    let prefactor = factorial_ratio_sqrt(s.two_j as i64, s.two_m as i64)?;
    Ok(prefactor * y.powf(-s.m()) * (-0.5 * y).exp() * laguerre_eval(idx, y))
}

/// Value, first and second derivative of the radial function at `y`.
///
/// `y = 0` is accepted only for `m = 0`.
pub fn radial_jet(s: SpinIndex, y: f64) -> Result<[f64; 3]> {
    let form = CancelledForm::new(s);
    if !y.is_finite() || y < 0.0 || (y == 0.0 && form.two_mu != 0) {
        return domain(format!("derivatives need y > 0 (or m = 0 and y >= 0), got y = {y}"));
    }
    let mu = form.two_mu as f64 / 2.0;
    let p = form.polynomial(y, 0);
    let dp = form.polynomial(y, 1);
    let d2p = form.polynomial(y, 2);
    let (u, du) = if form.two_mu == 0 { (-0.5, 0.0) } else { (mu / y - 0.5, -mu / (y * y)) };
    let envelope = form.prefactor * half_power(y, form.two_mu) * (-0.5 * y).exp();
    Ok([
        envelope * p,
        envelope * (u * p + dp),
        envelope * ((u * u + du) * p + 2.0 * u * dp + d2p),
    ])
}

/// Analytic derivative of order 1 or 2 of the radial function.
pub fn radial_deriv(s: SpinIndex, y: f64, order: u32) -> Result<f64> {
    match order {
        1 | 2 => Ok(radial_jet(s, y)?[order as usize]),
        _ => domain(format!("derivative order must be 1 or 2, got {order}")),
    }
}

/// The first `count` derivatives (starting with the value) of the radial function,
/// by the Leibniz rule over `y^mu`, `e^(-y/2)` and the polynomial factor.
///
/// `y = 0` is accepted only for `m = 0`.
pub fn radial_derivatives(s: SpinIndex, y: f64, count: usize) -> Result<Vec<f64>> {
    let form = CancelledForm::new(s);
    if !y.is_finite() || y < 0.0 || (y == 0.0 && form.two_mu != 0) {
        return domain(format!("derivatives need y > 0 (or m = 0 and y >= 0), got y = {y}"));
    }
    let mu = form.two_mu as f64 / 2.0;
    // derivatives of y^mu and of the polynomial
    let mut power = Vec::with_capacity(count);
    let mut falling = 1.0;
    for i in 0..count {
        power.push(if falling == 0.0 { 0.0 } else { falling * y.powf(mu - i as f64) });
        falling *= mu - i as f64;
    }
    let poly: Vec<f64> = (0..count as u32).map(|i| form.polynomial(y, i)).collect();
    let envelope = form.prefactor * (-0.5 * y).exp();
    // (y^mu P)^(k), then the exponential factor
    let mut inner = vec![0.0; count];
    for (k, slot) in inner.iter_mut().enumerate() {
        let mut binom = 1.0;
        for i in 0..=k {
            *slot += binom * power[i] * poly[k - i];
            binom = binom * (k - i) as f64 / (i + 1) as f64;
        }
    }
    Ok((0..count)
        .map(|k| {
            let mut sum = 0.0;
            let mut binom = 1.0;
            for i in 0..=k {
                sum += binom * (-0.5f64).powi(i as i32) * inner[k - i];
                binom = binom * (k - i) as f64 / (i + 1) as f64;
            }
            envelope * sum
        })
        .collect())
}

/// Plane harmonic `e^(i m phi)` times the radial function.
pub fn harmonic(s: SpinIndex, p: PlanePoint) -> Result<Complex64> {
    let r = radial(s, p.y)?;
    Ok(Complex64::from_polar(1.0, s.m() * p.phi) * r)
}

/// Residual of `y f'' + f' - (m^2/y) f - (y/4) f + (j + 1/2) f` for the radial function.
pub fn ode_residual(s: SpinIndex, y: f64) -> Result<f64> {
    if !(y.is_finite() && y > 0.0) {
        return domain(format!("ode residual needs y > 0, got {y}"));
    }
    let [f, df, d2f] = radial_jet(s, y)?;
    let m = s.m();
    Ok(y * d2f + df - m * m / y * f - 0.25 * y * f + (s.j() + 0.5) * f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(two_j: i64, two_m: i64) -> SpinIndex {
        SpinIndex::new(two_j, two_m).unwrap()
    }

    #[test]
    fn index_maps() {
        let i = |n, a| LaguerreIndex::new(n, a).unwrap();
        assert_eq!(index_to_spin(i(0, 0)), s(0, 0));
        assert_eq!(index_to_spin(i(1, -1)), s(1, 1));
        assert_eq!(index_to_spin(i(3, 2)), s(8, -2));
        assert_eq!(spin_to_index(s(0, 0)), i(0, 0));
        assert_eq!(spin_to_index(s(1, 1)), i(1, -1));
        assert_eq!(spin_to_index(s(4, -2)), i(1, 2));
    }

    #[test]
    fn spin_index_validation() {
        assert!(SpinIndex::new(1, 0).is_err());
        assert!(SpinIndex::new(2, 4).is_err());
        assert!(SpinIndex::new(-2, 0).is_err());
        assert!(SpinIndex::new(3, -3).is_ok());
    }

    #[test]
    fn radial_examples() {
        let e = (-0.5f64).exp();
        assert!((radial(s(1, -1), 1.0).unwrap() - e).abs() < 1e-15);
        assert!(radial(s(2, 0), 1.0).unwrap().abs() < 1e-16);
        assert!((radial(s(1, 1), 1.0).unwrap() + e).abs() < 1e-15);
    }

    #[test]
    fn radial_at_origin() {
        assert_eq!(radial(s(0, 0), 0.0).unwrap(), 1.0);
        assert_eq!(radial(s(3, 1), 0.0).unwrap(), 0.0);
        assert!(radial_literal(s(3, 1), 0.0).is_err());
    }

    #[test]
    fn derivative_examples() {
        assert!((radial_deriv(s(0, 0), 2.0, 1).unwrap() + (-1f64).exp() / 2.0).abs() < 1e-15);
        assert!((radial_deriv(s(2, 0), 1.0, 1).unwrap() + (-0.5f64).exp()).abs() < 1e-15);
        assert!(radial_deriv(s(2, 0), 1.0, 3).is_err());
        assert!(radial_jet(s(1, 1), 0.0).is_err());
    }

    #[test]
    fn derivative_matches_central_differences() {
        let h = 1e-5;
        for two_j in 0..6 {
            for sp in SpinIndex::multiplet(two_j) {
                for &y in &[0.4, 1.3, 4.0] {
                    let jet = radial_jet(sp, y).unwrap();
                    let fd1 = (radial(sp, y + h).unwrap() - radial(sp, y - h).unwrap()) / (2.0 * h);
                    let fd2 = (radial_deriv(sp, y + h, 1).unwrap() - radial_deriv(sp, y - h, 1).unwrap())
                        / (2.0 * h);
                    assert!((jet[1] - fd1).abs() < 1e-8, "{sp} y={y}");
                    assert!((jet[2] - fd2).abs() < 1e-8, "{sp} y={y}");
                }
            }
        }
    }

    #[test]
    fn higher_derivatives_match_differences_of_lower_ones() {
        let sp = s(5, -1);
        let y = 1.7;
        let h = 1e-5;
        let at = radial_derivatives(sp, y, 5).unwrap();
        assert!(radial_derivatives(sp, 0.0, 2).is_err());
        let up = radial_derivatives(sp, y + h, 4).unwrap();
        let down = radial_derivatives(sp, y - h, 4).unwrap();
        for k in 0..4 {
            let fd = (up[k] - down[k]) / (2.0 * h);
            assert!((fd - at[k + 1]).abs() < 1e-6 * (1.0 + at[k + 1].abs()), "order {}", k + 1);
        }
        let jet = radial_jet(sp, y).unwrap();
        for k in 0..3 {
            assert!((jet[k] - at[k]).abs() < 1e-14 * (1.0 + jet[k].abs()));
        }
    }

    #[test]
    fn harmonic_examples() {
        let v = harmonic(s(2, 0), PlanePoint::new(1.0, 2.3).unwrap()).unwrap();
        assert!(v.norm() < 1e-16);
        let r = (-0.5f64).exp();
        let v = harmonic(s(1, -1), PlanePoint::new(1.0, 0.0).unwrap()).unwrap();
        assert!((v - Complex64::new(r, 0.0)).norm() < 1e-15);
        let v = harmonic(s(1, -1), PlanePoint::new(1.0, PI).unwrap()).unwrap();
        assert!((v - Complex64::new(0.0, -r)).norm() < 1e-15);
    }

    #[test]
    fn half_integer_harmonics_are_antiperiodic() {
        let sp = s(3, 1);
        let a = harmonic(sp, PlanePoint::new(0.8, -PI).unwrap()).unwrap();
        let b = harmonic(sp, PlanePoint::new(0.8, PI).unwrap()).unwrap();
        assert!((a + b).norm() < 1e-15);
    }

    #[test]
    fn ode_examples() {
        assert!(ode_residual(s(0, 0), 1.0).unwrap().abs() < 1e-15);
        assert!(ode_residual(s(4, 2), 0.5).unwrap().abs() < 1e-14);
        assert!(ode_residual(s(1, 1), 3.0).unwrap().abs() < 1e-15);
        assert!(ode_residual(s(1, 1), 0.0).is_err());
    }

    #[test]
    fn plane_point_bounds() {
        assert!(PlanePoint::new(-1.0, 0.0).is_err());
        assert!(PlanePoint::new(1.0, 3.5).is_err());
    }

    #[test]
    fn sector_labels() {
        let labels = Sector::HalfInteger.labels(3);
        assert_eq!(labels.len(), 2 + 4);
        assert!(labels.iter().all(|l| l.sector() == Sector::HalfInteger));
        assert_eq!(Sector::Integer.labels(0), vec![s(0, 0)]);
    }
}
