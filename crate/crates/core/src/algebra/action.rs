//! Numerical action of operator expressions on basis functions.
//!
//! A monomial `Y^a D^d M^p J^q` acts on a function carrying labels `(j, m)` by
//! reading `m^p j^q`, differentiating `d` times and multiplying by `y^a`.
//! Compositions are evaluated on jets (value plus derivatives at one point),
//! tracking which label each intermediate function carries. That makes the
//! checks here independent of any rewrite rule set.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::expr::{coeff_to_c64, Coeff, Monomial, OperatorExpr};
use super::operators::{build_operator, OperatorName};
use super::rewrite::RewriteRuleSet;
use crate::basis::{radial, radial_derivatives, PlanePoint, SpinIndex};
use crate::error::{domain, Result};
use crate::quadrature::gauss_laguerre;

/// Derivatives `g, g', g'', ...` at a point `y` of the radial part of a
/// function `e^(i k phi / 2) g(y)` that carries the labels `(j, m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    pub y: f64,
    pub two_j: u32,
    pub two_m: i32,
    /// Angular dependence `e^(i two_phase phi / 2)`.
    pub two_phase: i32,
    pub derivs: Vec<Complex64>,
}

impl Jet {
    /// The jet of a basis function with `count` entries.
    pub fn basis(s: SpinIndex, y: f64, count: usize) -> Result<Self> {
        let derivs = radial_derivatives(s, y, count)?
            .into_iter()
            .map(|v| Complex64::new(v, 0.0))
            .collect();
        Ok(Jet { y, two_j: s.two_j(), two_m: s.two_m(), two_phase: s.two_m(), derivs })
    }

    pub fn value(&self) -> Complex64 {
        self.derivs[0]
    }

    /// The function value at angle `phi`.
    pub fn value_at(&self, phi: f64) -> Complex64 {
        self.derivs[0] * Complex64::from_polar(1.0, self.two_phase as f64 * phi / 2.0)
    }

    pub fn order(&self) -> usize {
        self.derivs.len().saturating_sub(1)
    }

    /// Applies `expr`, whose output carries label `m + two_shift / 2`.
    ///
    /// Every monomial must carry the same phase tag.
    pub fn apply(&self, expr: &OperatorExpr, two_shift: i32) -> Result<Jet> {
        let tags: Vec<i32> = {
            let mut t: Vec<i32> = expr.terms().map(|(m, _)| m.two_dm).collect();
            t.dedup();
            t
        };
        if tags.len() > 1 {
            return domain("expression mixes phase tags; apply each tag separately");
        }
        let derivs = self.apply_terms(expr.terms())?;
        Ok(Jet {
            y: self.y,
            two_j: self.two_j,
            two_m: self.two_m + two_shift,
            two_phase: self.two_phase + tags.first().copied().unwrap_or(0),
            derivs,
        })
    }

    fn apply_terms<'a>(
        &self,
        terms: impl Iterator<Item = (&'a Monomial, &'a Coeff)>,
    ) -> Result<Vec<Complex64>> {
        let terms: Vec<_> = terms.collect();
        let max_d = terms.iter().map(|(m, _)| m.d as usize).max().unwrap_or(0);
        if max_d > self.order() {
            return domain(format!(
                "jet of order {} cannot absorb a derivative of order {max_d}",
                self.order()
            ));
        }
        let out_len = self.derivs.len() - max_d;
        let (j, m) = (self.two_j as f64 / 2.0, self.two_m as f64 / 2.0);
        let mut out = vec![Complex64::new(0.0, 0.0); out_len];
        for (mono, c) in terms {
            if mono.y < 0 && self.y == 0.0 {
                return domain("a negative power of y survives at y = 0");
            }
            let scalar = coeff_to_c64(c) * m.powi(mono.m as i32) * j.powi(mono.j as i32);
            let shifted = &self.derivs[mono.d as usize..];
            for (k, slot) in out.iter_mut().enumerate() {
                *slot += scalar * leibniz_power(self.y, mono.y, k, shifted);
            }
        }
        Ok(out)
    }
}

/// `(y^a g)^(k)` from the derivatives of `g`.
fn leibniz_power(y: f64, a: i32, k: usize, g: &[Complex64]) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut binom = 1.0;
    let mut falling = 1.0;
    for i in 0..=k {
        if falling == 0.0 {
            break;
        }
        sum += g[k - i] * (binom * falling * y.powi(a - i as i32));
        binom = binom * (k - i) as f64 / (i + 1) as f64;
        falling *= (a - i as i32) as f64;
    }
    sum
}

fn total_derivatives(ops: &[(OperatorExpr, i32)]) -> usize {
    ops.iter().map(|(e, _)| e.max_derivative() as usize).sum()
}

/// Evaluates `expr` on the plane harmonic `s` at `p`.
pub fn apply_to_basis(expr: &OperatorExpr, s: SpinIndex, p: PlanePoint) -> Result<Complex64> {
    let jet = Jet::basis(s, p.y, expr.max_derivative() as usize + 1)?;
    let mut by_tag: BTreeMap<i32, OperatorExpr> = BTreeMap::new();
    for (mono, c) in expr.terms() {
        by_tag.entry(mono.two_dm).or_insert_with(OperatorExpr::zero).add_term(*mono, c.clone());
    }
    let mut total = Complex64::new(0.0, 0.0);
    for part in by_tag.values() {
        total += jet.apply(part, 0)?.value_at(p.phi);
    }
    Ok(total)
}

/// Applies a product of named operators (leftmost acts last) to the harmonic
/// `s` at `p`, each factor reading the labels of the function it acts on.
pub fn apply_product(ops: &[OperatorName], s: SpinIndex, p: PlanePoint) -> Result<Complex64> {
    let rules = RewriteRuleSet::standard();
    let built: Vec<(OperatorExpr, i32)> = ops
        .iter()
        .map(|&op| Ok((build_operator(op, &rules)?, op.two_shift())))
        .collect::<Result<_>>()?;
    let mut jet = Jet::basis(s, p.y, total_derivatives(&built) + 1)?;
    for (expr, shift) in built.iter().rev() {
        jet = jet.apply(expr, *shift)?;
    }
    Ok(jet.value_at(p.phi))
}

/// `sqrt((j -/+ m)(j +/- m + 1))`, the coefficient of `K+-` on a basis function.
pub fn ladder_coefficient(s: SpinIndex, two_shift: i32) -> f64 {
    let (j, m) = (s.j(), s.m());
    let sign = two_shift.signum() as f64;
    ((j - sign * m) * (j + sign * m + 1.0)).max(0.0).sqrt()
}

/// Interior nodes used to sample identities for the labels `s`.
pub fn sample_nodes(s: SpinIndex) -> Vec<f64> {
    let n = s.two_j() as usize / 2 + 2;
    gauss_laguerre(n, s.two_m().unsigned_abs() as f64)
        .expect("small rules always converge")
        .nodes()
        .to_vec()
}

/// Sup-norm comparison of two sampled functions, relative to the larger of
/// their sup norms and of `reference`.
pub fn relative_gap(lhs: &[Complex64], rhs: &[Complex64], reference: f64) -> f64 {
    let sup = |v: &[Complex64]| v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let diff = lhs.iter().zip(rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let scale = sup(lhs).max(sup(rhs)).max(reference);
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

fn sup_radial(s: SpinIndex, nodes: &[f64]) -> f64 {
    nodes.iter().map(|&y| radial(s, y).unwrap_or(0.0).abs()).fold(0.0, f64::max)
}

/// Relative gap between `K+- L_j^m` and `c L_j^(m+-1)` over the sample nodes.
///
/// When the target label leaves the multiplet the right side is zero and the
/// gap is measured against the size of `L_j^m`.
pub fn ladder_residual(s: SpinIndex, raise: bool) -> Result<f64> {
    let (op, shift) = if raise { (OperatorName::KPlus, 2) } else { (OperatorName::KMinus, -2) };
    let nodes = sample_nodes(s);
    let coeff = ladder_coefficient(s, shift);
    let target = s.shifted(shift / 2);
    let mut lhs = Vec::with_capacity(nodes.len());
    let mut rhs = Vec::with_capacity(nodes.len());
    for &y in &nodes {
        lhs.push(apply_product(&[op], s, PlanePoint { y, phi: 0.0 })?);
        rhs.push(match target {
            Some(t) => Complex64::new(coeff * radial(t, y)?, 0.0),
            None => Complex64::new(0.0, 0.0),
        });
    }
    Ok(relative_gap(&lhs, &rhs, sup_radial(s, &nodes)))
}

/// Relative size of `E L_j^m` over the sample nodes, against
/// `max(1, |L|, |y L''|)`.
pub fn kernel_residual(s: SpinIndex) -> Result<f64> {
    let e = build_operator(OperatorName::E, &RewriteRuleSet::standard())?;
    let mut worst: f64 = 0.0;
    for y in sample_nodes(s) {
        let jet = Jet::basis(s, y, 3)?;
        let value = jet.apply(&e, 0)?.value().norm();
        let scale = 1f64.max(jet.derivs[0].norm()).max((y * jet.derivs[2]).norm());
        worst = worst.max(value / scale);
    }
    Ok(worst)
}

/// The su(2) relations evaluated on one basis function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Residuals {
    /// `[K+, K-] - 2 K3`.
    pub commutator: f64,
    /// `[K3, K+] - K+`.
    pub raise: f64,
    /// `[K3, K-] + K-`.
    pub lower: f64,
    /// `K3^2 + {K+, K-}/2 - j(j+1)`.
    pub casimir: f64,
    /// `J3^2 + {J+, J-}/2 - j(j+1)` on the plane harmonic.
    pub plane_casimir: f64,
}

impl Su2Residuals {
    pub fn max(&self) -> f64 {
        [self.commutator, self.raise, self.lower, self.casimir, self.plane_casimir]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// Relative residuals of the su(2) relations on `s`, sampled at the nodes and
/// at a few angles.
pub fn su2_residuals(s: SpinIndex) -> Result<Su2Residuals> {
    use OperatorName::{JMinus, JPlus, KMinus, KPlus, J3, K3};
    let nodes = sample_nodes(s);
    let reference = sup_radial(s, &nodes);
    let (j, m) = (s.j(), s.m());
    let casimir = j * (j + 1.0);
    let phis = [0.0, 1.1, -2.5];

    let mut cols: [(Vec<Complex64>, Vec<Complex64>); 5] = Default::default();
    for &y in &nodes {
        for &phi in &phis {
            let p = PlanePoint { y, phi };
            let at = |ops: &[OperatorName]| apply_product(ops, s, p);
            let z = crate::basis::harmonic(s, p)?;
            let pm = at(&[KPlus, KMinus])?;
            let mp = at(&[KMinus, KPlus])?;
            let rows = [
                (pm - mp, z * (2.0 * m)),
                (at(&[K3, KPlus])? - at(&[KPlus, K3])?, at(&[KPlus])?),
                (at(&[K3, KMinus])? - at(&[KMinus, K3])?, -at(&[KMinus])?),
                (at(&[K3, K3])? + (pm + mp) * 0.5, z * casimir),
                (
                    at(&[J3, J3])? + (at(&[JPlus, JMinus])? + at(&[JMinus, JPlus])?) * 0.5,
                    z * casimir,
                ),
            ];
            for (col, (l, r)) in cols.iter_mut().zip(rows) {
                col.0.push(l);
                col.1.push(r);
            }
        }
    }
    let gap = |k: usize| relative_gap(&cols[k].0, &cols[k].1, reference);
    Ok(Su2Residuals {
        commutator: gap(0),
        raise: gap(1),
        lower: gap(2),
        casimir: gap(3),
        plane_casimir: gap(4),
    })
}
