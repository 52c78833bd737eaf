//! The named operators of the realization.

use std::fmt;
use std::str::FromStr;

use super::expr::{rational, FreeExpr, OperatorExpr, Symbol};
use super::rewrite::{normal_form, RewriteRuleSet};
use crate::error::{Error, Result};

use Symbol::{Yinv, D, J, M, Y};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperatorName {
    /// Radial operator whose kernel contains every basis function.
    E,
    KPlus,
    KMinus,
    K3,
    JPlus,
    JMinus,
    J3,
}

impl OperatorName {
    pub const ALL: [OperatorName; 7] = [
        OperatorName::E,
        OperatorName::KPlus,
        OperatorName::KMinus,
        OperatorName::K3,
        OperatorName::JPlus,
        OperatorName::JMinus,
        OperatorName::J3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            OperatorName::E => "E",
            OperatorName::KPlus => "K+",
            OperatorName::KMinus => "K-",
            OperatorName::K3 => "K3",
            OperatorName::JPlus => "J+",
            OperatorName::JMinus => "J-",
            OperatorName::J3 => "J3",
        }
    }

    /// Change of `2m` produced on a basis function.
    pub fn two_shift(self) -> i32 {
        match self {
            OperatorName::KPlus | OperatorName::JPlus => 2,
            OperatorName::KMinus | OperatorName::JMinus => -2,
            _ => 0,
        }
    }
}

impl fmt::Display for OperatorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OperatorName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OperatorName::ALL
            .into_iter()
            .find(|op| op.as_str() == s)
            .ok_or_else(|| Error::UnknownOperator(s.to_string()))
    }
}

fn sym(s: Symbol) -> FreeExpr {
    FreeExpr::symbol(s)
}

fn num(n: i64, d: i64) -> FreeExpr {
    FreeExpr::scalar(rational(n, d))
}

/// `K+ = -2 D (M + 1/2) + 2 Y^-1 M (M + 1/2) - (J + 1/2)`.
fn k_plus() -> FreeExpr {
    let m_half = &sym(M) + &num(1, 2);
    let a = (&sym(D) * &m_half).scale_rational(&rational(-2, 1));
    let b = (&(&sym(Yinv) * &sym(M)) * &m_half).scale_rational(&rational(2, 1));
    &(&a + &b) - &(&sym(J) + &num(1, 2))
}

/// `K- = 2 D (M - 1/2) + 2 Y^-1 M (M - 1/2) - (J + 1/2)`.
fn k_minus() -> FreeExpr {
    let m_half = &sym(M) - &num(1, 2);
    let a = (&sym(D) * &m_half).scale_rational(&rational(2, 1));
    let b = (&(&sym(Yinv) * &sym(M)) * &m_half).scale_rational(&rational(2, 1));
    &(&a + &b) - &(&sym(J) + &num(1, 2))
}

/// `E = Y D^2 + D - Y^-1 M^2 - Y/4 + J + 1/2`.
fn e_operator() -> FreeExpr {
    let ydd = &(&sym(Y) * &sym(D)) * &sym(D);
    let mm = &(&sym(Yinv) * &sym(M)) * &sym(M);
    let y4 = sym(Y).scale_rational(&rational(1, 4));
    &(&(&(&(&ydd + &sym(D)) - &mm) - &y4) + &sym(J)) + &num(1, 2)
}

/// The operator as a word expression, before normal ordering.
pub fn operator_words(name: OperatorName) -> FreeExpr {
    match name {
        OperatorName::E => e_operator(),
        OperatorName::KPlus => k_plus(),
        OperatorName::KMinus => k_minus(),
        OperatorName::K3 | OperatorName::J3 => sym(M),
        OperatorName::JPlus => &FreeExpr::phase(2) * &k_plus(),
        OperatorName::JMinus => &FreeExpr::phase(-2) * &k_minus(),
    }
}

/// The operator in normal form under the given rules.
pub fn build_operator(name: OperatorName, rules: &RewriteRuleSet) -> Result<OperatorExpr> {
    normal_form(&operator_words(name), rules)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for op in OperatorName::ALL {
            assert_eq!(op.as_str().parse::<OperatorName>().unwrap(), op);
        }
        assert_eq!("K0".parse::<OperatorName>(), Err(Error::UnknownOperator("K0".into())));
    }

    #[test]
    fn ladder_operators_are_first_order() {
        let r = RewriteRuleSet::standard();
        for op in [OperatorName::KPlus, OperatorName::KMinus, OperatorName::JPlus] {
            assert_eq!(build_operator(op, &r).unwrap().max_derivative(), 1);
        }
        assert_eq!(build_operator(OperatorName::E, &r).unwrap().max_derivative(), 2);
    }

    #[test]
    fn phase_tags_follow_the_shift() {
        let r = RewriteRuleSet::standard();
        let jp = build_operator(OperatorName::JPlus, &r).unwrap();
        assert!(jp.terms().all(|(m, _)| m.two_dm == 2));
        let kp = build_operator(OperatorName::KPlus, &r).unwrap();
        assert!(kp.terms().all(|(m, _)| m.two_dm == 0));
    }
}
