//! A rotation carried out by the differential operators themselves.
//!
//! `e^(-i b Jy)` is summed as a power series whose terms apply
//! `Jy = (J+ - J-) / 2i` to the basis functions as differential operators.
//! Every intermediate function has the form `y^mu e^(-y/2) Q(y)` with `Q` a
//! Laurent polynomial with rational coefficients, so the derivatives are exact
//! and the result owes nothing to the matrix elements used by [`super::rotate`].
//! The `J3` factors act on basis functions as the phases `e^(-i a m)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{CoefficientBlock, RotationSpec};
use crate::algebra::{build_operator, OperatorExpr, OperatorName, RewriteRuleSet};
use crate::basis::{cancelled_parts, PlanePoint, Sector, SpinIndex};
use crate::error::{domain, Result};
use crate::laguerre::ExactPolynomial;
use crate::quadrature::PlaneFunction;

/// `sum_a q_a y^a`.
#[derive(Debug, Clone, Default, PartialEq)]
struct Laurent(BTreeMap<i32, BigRational>);

impl Laurent {
    fn add_term(&mut self, power: i32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(power).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&power);
        }
    }

    fn add(&mut self, other: &Laurent) {
        for (p, c) in &other.0 {
            self.add_term(*p, c.clone());
        }
    }

    fn eval(&self, y: f64) -> f64 {
        self.0.iter().map(|(p, c)| c.to_f64().unwrap_or(f64::NAN) * y.powi(*p)).sum()
    }

    /// `Q -> Q' + (mu / y - 1/2) Q`, the derivative of `y^mu e^(-y/2) Q`
    /// stripped of the envelope.
    fn envelope_derivative(&self, mu: &BigRational) -> Laurent {
        let mut out = Laurent::default();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        for (p, c) in &self.0 {
            out.add_term(p - 1, c * (BigRational::from_integer(BigInt::from(*p)) + mu));
            out.add_term(*p, -(c * &half));
        }
        out
    }
}

fn rational_half(two_x: i64) -> BigRational {
    BigRational::new(BigInt::from(two_x), BigInt::from(2))
}

/// Applies a phase-uniform expression to `y^mu e^(-y/2) Q` carrying labels `(j, m)`.
fn apply(expr: &OperatorExpr, q: &Laurent, mu: &BigRational, two_j: u32, two_m: i32) -> Result<Laurent> {
    let (j, m) = (rational_half(two_j as i64), rational_half(two_m as i64));
    let max_d = expr.max_derivative() as usize;
    let mut derivs = vec![q.clone()];
    for _ in 0..max_d {
        let next = derivs.last().expect("non-empty").envelope_derivative(mu);
        derivs.push(next);
    }
    let mut out = Laurent::default();
    for (mono, c) in expr.terms() {
        if !c.im.is_zero() {
            return domain("complex coefficients are not supported here");
        }
        let scalar = &c.re * num_traits::pow(m.clone(), mono.m as usize) * num_traits::pow(j.clone(), mono.j as usize);
        for (p, x) in &derivs[mono.d as usize].0 {
            out.add_term(p + mono.y, x * &scalar);
        }
    }
    Ok(out)
}

/// Series terms of one basis function: for every order `k`, the Laurent
/// factors of `(J+ - J-)^k Z` keyed by the label `2m` they carry.
struct BasisSeries {
    label: SpinIndex,
    prefactor: f64,
    mu: f64,
    orders: Vec<BTreeMap<i32, Laurent>>,
}

/// The plane function `D(r) f` for `f` synthesized from a block.
pub struct OperatorRotated {
    block: CoefficientBlock,
    rotation: RotationSpec,
    series: Vec<BasisSeries>,
}

impl OperatorRotated {
    /// Uses enough series terms for `(|b| j_max)^k / k!` to drop below `1e-17`.
    pub fn new(block: &CoefficientBlock, rotation: RotationSpec) -> Result<Self> {
        let rules = RewriteRuleSet::standard();
        let raise = build_operator(OperatorName::KPlus, &rules)?;
        let lower = build_operator(OperatorName::KMinus, &rules)?;
        let x = rotation.b.abs() * block.two_j_max() as f64 / 2.0;
        let mut terms = 1;
        let mut size = 1.0;
        while size > 1e-17 || (terms as f64) < x {
            size *= x / terms as f64;
            terms += 1;
        }
        let mut series = Vec::new();
        for (s, _) in block.iter() {
            let (prefactor, two_mu, degree, order) = cancelled_parts(s);
            let mu = rational_half(two_mu as i64);
            let start = {
                let mut q = Laurent::default();
                for (p, c) in ExactPolynomial::laguerre(degree, order).coefficients().iter().enumerate() {
                    q.add_term(p as i32, c.clone());
                }
                q
            };
            let mut orders = vec![BTreeMap::from([(s.two_m(), start)])];
            for _ in 1..terms {
                let mut next: BTreeMap<i32, Laurent> = BTreeMap::new();
                for (&tm, q) in orders.last().expect("non-empty") {
                    for (expr, shift, negate) in [(&raise, 2, false), (&lower, -2, true)] {
                        if (tm + shift).unsigned_abs() > s.two_j() {
                            continue;
                        }
                        let mut out = apply(expr, q, &mu, s.two_j(), tm)?;
                        if negate {
                            out.0.values_mut().for_each(|c| *c = -c.clone());
                        }
                        next.entry(tm + shift).or_default().add(&out);
                    }
                }
                orders.push(next);
            }
            series.push(BasisSeries { label: s, prefactor, mu: two_mu as f64 / 2.0, orders });
        }
        Ok(OperatorRotated { block: block.clone(), rotation, series })
    }

    pub fn series_terms(&self) -> usize {
        self.series.first().map_or(0, |s| s.orders.len())
    }
}

impl PlaneFunction for OperatorRotated {
    fn sector(&self) -> Sector {
        self.block.sector()
    }

    fn value(&self, p: PlanePoint) -> Complex64 {
        let r = self.rotation;
        // (-i b)^k / k! Jy^k = (-b/2)^k / k! (J+ - J-)^k, with the phases e^(+-i phi) kept by label
        let mut total = Complex64::new(0.0, 0.0);
        for bs in &self.series {
            let c = self.block.get(bs.label) * Complex64::from_polar(1.0, -r.c * bs.label.m());
            let envelope = bs.prefactor * p.y.powf(bs.mu) * (-0.5 * p.y).exp();
            let mut weight = 1.0;
            for (k, by_label) in bs.orders.iter().enumerate() {
                if k > 0 {
                    weight *= -r.b / 2.0 / k as f64;
                }
                for (&tm, q) in by_label {
                    let m = tm as f64 / 2.0;
                    let phase = Complex64::from_polar(1.0, m * (p.phi - r.a));
                    total += c * phase * (weight * envelope * q.eval(p.y));
                }
            }
        }
        total
    }

    fn j_bound(&self) -> Option<f64> {
        Some(self.block.two_j_max() as f64 / 2.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::{analyze, rotate};

    #[test]
    fn unrotated_function_is_the_synthesis() {
        let block = CoefficientBlock::random(Sector::HalfInteger, 5, 2);
        let f = OperatorRotated::new(&block, RotationSpec::identity()).unwrap();
        for (y, phi) in [(0.3, 0.1), (4.0, -2.0)] {
            let p = PlanePoint { y, phi };
            assert!((f.value(p) - block.value(p)).norm() < 1e-13);
        }
    }

    #[test]
    fn operator_rotation_matches_matrix_rotation() {
        for (sector, two_j_max) in [(Sector::Integer, 4), (Sector::HalfInteger, 3)] {
            let block = CoefficientBlock::random(sector, two_j_max, 5);
            let r = RotationSpec::new(0.9, 0.6, -0.4).unwrap();
            let f = OperatorRotated::new(&block, r).unwrap();
            let via_operators = analyze(&f, sector, two_j_max).unwrap();
            let via_matrices = rotate(&block, &r).unwrap();
            let gap = via_operators.max_abs_diff(&via_matrices);
            assert!(gap < 1e-9, "{gap}");
        }
    }
}
