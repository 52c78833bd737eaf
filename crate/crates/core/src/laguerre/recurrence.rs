//! First-order differential recurrences linking neighbouring Laguerre labels.
//!
//! Four elementary relations shift `n` or `alpha` by one. Two composed relations
//! shift `(n, alpha)` by `(-1, +2)` and `(+1, -2)`; their commonly printed forms
//! carry wrong coefficients, so each composed relation is evaluated both as
//! printed and in the form obtained by composing the elementary relations and
//! eliminating the second derivative with the Laguerre differential equation.

use super::{eval_shifted, laguerre_deriv, laguerre_eval, LaguerreIndex};
use crate::error::{domain, Result};

/// Identifies one recurrence relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// `[y d/dy + (n + 1 + alpha - y)] L_n^a = (n + 1) L_(n+1)^a`
    RaiseDegree,
    /// `[-y d/dy + n] L_n^a = (n + alpha) L_(n-1)^a`
    LowerDegree,
    /// `[-d/dy + 1] L_n^a = L_n^(a+1)`
    RaiseOrder,
    /// `[y d/dy + alpha] L_n^a = (n + alpha) L_n^(a-1)`
    LowerOrder,
    /// Shift `(n, alpha) -> (n - 1, alpha + 2)`.
    ///
    /// Printed: `[d/dy + n/(alpha+1)] L_n^a = -alpha/(alpha+1) L_(n-1)^(a+2)`.
    /// Corrected: the right-hand coefficient is `-y/(alpha+1)`.
    LowerDegreeRaiseOrderTwo,
    /// Shift `(n, alpha) -> (n + 1, alpha - 2)`.
    ///
    /// Printed: `[y(alpha-1) d/dy - y(n + 3alpha/2) + alpha(alpha-1)] L_n^a
    /// = (j + alpha)(alpha + 1) L_(n+1)^(a-2)` with `j = n + alpha/2`.
    /// Corrected: `[y(alpha-1) d/dy - y(n + alpha) + alpha(alpha-1)] L_n^a
    /// = (n + 1)(n + alpha) L_(n+1)^(a-2)`.
    RaiseDegreeLowerOrderTwo,
}

impl Relation {
    pub const ELEMENTARY: [Relation; 4] = [
        Relation::RaiseDegree,
        Relation::LowerDegree,
        Relation::RaiseOrder,
        Relation::LowerOrder,
    ];

    pub const COMPOSED: [Relation; 2] =
        [Relation::LowerDegreeRaiseOrderTwo, Relation::RaiseDegreeLowerOrderTwo];

    pub fn is_composed(self) -> bool {
        Self::COMPOSED.contains(&self)
    }

    pub fn name(self) -> &'static str {
        match self {
            Relation::RaiseDegree => "raise_degree",
            Relation::LowerDegree => "lower_degree",
            Relation::RaiseOrder => "raise_order",
            Relation::LowerOrder => "lower_order",
            Relation::LowerDegreeRaiseOrderTwo => "lower_degree_raise_order_two",
            Relation::RaiseDegreeLowerOrderTwo => "raise_degree_lower_order_two",
        }
    }
}

/// `|LHS - RHS|` together with the magnitude of the largest term involved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelationResidual {
    pub residual: f64,
    pub scale: f64,
}

impl RelationResidual {
    fn from_terms(lhs_terms: &[f64], rhs: f64) -> Self {
        let lhs: f64 = lhs_terms.iter().sum();
        let scale = lhs_terms.iter().fold(rhs.abs(), |acc, t| acc.max(t.abs()));
        RelationResidual { residual: (lhs - rhs).abs(), scale }
    }

    /// Residual divided by the largest term (or returned as is when every term vanishes).
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.residual / self.scale
        } else {
            self.residual
        }
    }
}

/// Residuals of one relation at one point.
///
/// `corrected` is present only for the composed relations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecurrenceCheck {
    pub as_printed: RelationResidual,
    pub corrected: Option<RelationResidual>,
}

pub fn recurrence_residual(relation: Relation, idx: LaguerreIndex, y: f64) -> Result<RecurrenceCheck> {
    let n = idx.n() as i64;
    let a = idx.alpha() as i64;
    let nf = n as f64;
    let af = a as f64;
    let l = laguerre_eval(idx, y);
    let dl = laguerre_deriv(idx, y, 1)?;

    let elementary = |lhs: &[f64], rhs: f64| RecurrenceCheck {
        as_printed: RelationResidual::from_terms(lhs, rhs),
        corrected: None,
    };

    let check = match relation {
        Relation::RaiseDegree => {
            let rhs = (nf + 1.0) * eval_shifted(n + 1, a, y)?;
            elementary(&[y * dl, (nf + 1.0 + af - y) * l], rhs)
        }
        Relation::LowerDegree => {
            let rhs = (nf + af) * eval_shifted(n - 1, a, y)?;
            elementary(&[-y * dl, nf * l], rhs)
        }
        Relation::RaiseOrder => {
            let rhs = eval_shifted(n, a + 1, y)?;
            elementary(&[-dl, l], rhs)
        }
        Relation::LowerOrder => {
            let rhs = (nf + af) * eval_shifted(n, a - 1, y)?;
            elementary(&[y * dl, af * l], rhs)
        }
        Relation::LowerDegreeRaiseOrderTwo => {
            if a == -1 {
                return domain("the (n-1, alpha+2) relation is singular at alpha = -1");
            }
            let target = eval_shifted(n - 1, a + 2, y)?;
            let lhs = [dl, nf / (af + 1.0) * l];
            RecurrenceCheck {
                as_printed: RelationResidual::from_terms(&lhs, -af / (af + 1.0) * target),
                corrected: Some(RelationResidual::from_terms(&lhs, -y / (af + 1.0) * target)),
            }
        }
        Relation::RaiseDegreeLowerOrderTwo => {
            let target = eval_shifted(n + 1, a - 2, y)?;
            let j = nf + af / 2.0;
            let printed_lhs = [
                y * (af - 1.0) * dl,
                -y * (nf + 1.5 * af) * l,
                af * (af - 1.0) * l,
            ];
            let corrected_lhs = [y * (af - 1.0) * dl, -y * (nf + af) * l, af * (af - 1.0) * l];
            RecurrenceCheck {
                as_printed: RelationResidual::from_terms(&printed_lhs, (j + af) * (af + 1.0) * target),
                corrected: Some(RelationResidual::from_terms(
                    &corrected_lhs,
                    (nf + 1.0) * (nf + af) * target,
                )),
            }
        }
    };
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(n: i64, a: i64) -> LaguerreIndex {
        LaguerreIndex::new(n, a).unwrap()
    }

    #[test]
    fn raise_degree_holds() {
        let r = recurrence_residual(Relation::RaiseDegree, idx(1, 0), 0.7).unwrap();
        assert!(r.as_printed.residual < 1e-15);
        assert!(r.corrected.is_none());
    }

    #[test]
    fn printed_lowering_composite_fails_at_the_first_nontrivial_label() {
        let r = recurrence_residual(Relation::LowerDegreeRaiseOrderTwo, idx(1, 0), 1.0).unwrap();
        assert!((r.as_printed.residual - 1.0).abs() < 1e-15);
        assert!(r.corrected.unwrap().residual < 1e-15);
    }

    #[test]
    fn lower_degree_at_degree_zero_uses_zero_for_negative_degree() {
        let r = recurrence_residual(Relation::LowerDegree, idx(0, 2), 3.0).unwrap();
        assert_eq!(r.as_printed.residual, 0.0);
    }

    #[test]
    fn shifts_leaving_the_domain_are_errors() {
        // (n, alpha - 1) = (2, -3) has n + alpha < 0
        assert!(recurrence_residual(Relation::LowerOrder, idx(2, -2), 1.0).is_err());
        assert!(recurrence_residual(Relation::LowerDegreeRaiseOrderTwo, idx(2, -1), 1.0).is_err());
    }
}
