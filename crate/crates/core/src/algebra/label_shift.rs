//! Compositions with explicit label bookkeeping.
//!
//! Here `M` and `J` are scalars: the labels of the function being acted on.
//! An operator is `sum c y^a D^d m^p j^q` together with the change it makes to
//! `2m`. Composing `A B` substitutes `m -> m + shift(B)` in `A`, so no
//! commutation axiom for `M` is needed. Second derivatives can then be
//! eliminated with the radial operator `E`, exhibiting `X = Q E + R`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::expr::{rational, real_coeff, Monomial, OperatorExpr};
use crate::error::{domain, Result};

/// `(power of y, order of D, power of m, power of j)`.
type Key = (i32, u32, u32, u32);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedOperator {
    terms: BTreeMap<Key, BigRational>,
    two_shift: i32,
}

fn add_into(terms: &mut BTreeMap<Key, BigRational>, key: Key, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let slot = terms.entry(key).or_insert_with(BigRational::zero);
    *slot += c;
    if slot.is_zero() {
        terms.remove(&key);
    }
}

fn binomial(n: u32, k: u32) -> BigRational {
    let mut b = BigRational::one();
    for i in 0..k {
        b = b * BigRational::from_integer(BigInt::from(n - i)) / BigRational::from_integer(BigInt::from(i + 1));
    }
    b
}

/// `(a)(a-1)...(a-i+1)`.
fn falling(a: i32, i: u32) -> BigRational {
    (0..i as i32).fold(BigRational::one(), |acc, t| acc * BigRational::from_integer(BigInt::from(a - t)))
}

impl ShiftedOperator {
    pub fn zero() -> Self {
        ShiftedOperator { terms: BTreeMap::new(), two_shift: 0 }
    }

    pub fn term(y: i32, d: u32, m: u32, j: u32, c: BigRational, two_shift: i32) -> Self {
        let mut terms = BTreeMap::new();
        add_into(&mut terms, (y, d, m, j), c);
        ShiftedOperator { terms, two_shift }
    }

    pub fn scalar(c: BigRational) -> Self {
        Self::term(0, 0, 0, 0, c, 0)
    }

    /// Reads a canonical expression; phase tags are not allowed.
    pub fn from_expr(expr: &OperatorExpr, two_shift: i32) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (mono, c) in expr.terms() {
            if mono.two_dm != 0 || !c.im.is_zero() {
                return domain("label-shift calculus takes real expressions without phase tags");
            }
            add_into(&mut terms, (mono.y, mono.d, mono.m, mono.j), c.re.clone());
        }
        Ok(ShiftedOperator { terms, two_shift })
    }

    /// The same terms as a canonical expression, `M` and `J` reading labels.
    pub fn to_expr(&self) -> OperatorExpr {
        let mut out = OperatorExpr::zero();
        for (&(y, d, m, j), c) in &self.terms {
            out.add_term(Monomial { y, d, m, j, two_dm: 0 }, real_coeff(c.clone()));
        }
        out
    }

    pub fn two_shift(&self) -> i32 {
        self.two_shift
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_derivative(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Replaces `m` by `m + delta`.
    fn shift_label(&self, delta: &BigRational) -> Self {
        let mut terms = BTreeMap::new();
        for (&(y, d, p, j), c) in &self.terms {
            let mut dpow = BigRational::one();
            for k in (0..=p).rev() {
                add_into(&mut terms, (y, d, k, j), c * binomial(p, k) * &dpow);
                dpow *= delta;
            }
        }
        ShiftedOperator { terms, two_shift: self.two_shift }
    }

    /// `self` applied after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        let delta = rational(other.two_shift as i64, 2);
        let left = self.shift_label(&delta);
        let mut terms = BTreeMap::new();
        for (&(a, d, p1, j1), c1) in &left.terms {
            for (&(b, e, p2, j2), c2) in &other.terms {
                // y^a D^d y^b = sum_i C(d,i) (b)_i y^(a+b-i) D^(d-i)
                for i in 0..=d {
                    let f = falling(b, i);
                    if f.is_zero() {
                        break;
                    }
                    let c = c1 * c2 * binomial(d, i) * f;
                    add_into(&mut terms, (a + b - i as i32, d - i + e, p1 + p2, j1 + j2), c);
                }
            }
        }
        ShiftedOperator { terms, two_shift: self.two_shift + other.two_shift }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut terms = BTreeMap::new();
        for (k, x) in &self.terms {
            add_into(&mut terms, *k, x * c);
        }
        ShiftedOperator { terms, two_shift: self.two_shift }
    }

    /// Sum; both operands must shift the label identically.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if !self.is_zero() && !other.is_zero() && self.two_shift != other.two_shift {
            return domain("cannot add operators with different label shifts");
        }
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            add_into(&mut terms, *k, c.clone());
        }
        let two_shift = if self.is_zero() { other.two_shift } else { self.two_shift };
        Ok(ShiftedOperator { terms, two_shift })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// Writes `self = Q E + R` with `R` of derivative order at most one,
    /// where `E = y D^2 + D - m^2/y - y/4 + j + 1/2`.
    pub fn reduce_mod_e(&self) -> (ShiftedOperator, ShiftedOperator) {
        // D^2 = y^-1 E + (-y^-1 D + m^2 y^-2 + 1/4 - (j + 1/2) y^-1)
        let tail = {
            let mut t = ShiftedOperator::term(-1, 1, 0, 0, rational(-1, 1), 0);
            for piece in [
                ShiftedOperator::term(-2, 0, 2, 0, rational(1, 1), 0),
                ShiftedOperator::scalar(rational(1, 4)),
                ShiftedOperator::term(-1, 0, 0, 1, rational(-1, 1), 0),
                ShiftedOperator::term(-1, 0, 0, 0, rational(-1, 2), 0),
            ] {
                t = t.add(&piece).expect("label preserving");
            }
            t
        };
        let inv_y = ShiftedOperator::term(-1, 0, 0, 0, BigRational::one(), 0);
        let mut quotient = ShiftedOperator { terms: BTreeMap::new(), two_shift: self.two_shift };
        let mut rest = self.clone();
        loop {
            let high = rest.terms.iter().find(|(k, _)| k.1 >= 2).map(|(k, c)| (*k, c.clone()));
            let Some(((y, d, p, j), c)) = high else { break };
            rest.terms.remove(&(y, d, p, j));
            // c y^a D^(d-2) m^p j^q composed with D^2; m and j commute with everything here
            let outer = ShiftedOperator::term(y, d - 2, p, j, c, 0);
            let q = outer.compose(&inv_y);
            let r = outer.compose(&tail);
            for (k, x) in q.terms {
                add_into(&mut quotient.terms, k, x);
            }
            for (k, x) in r.terms {
                add_into(&mut rest.terms, k, x);
            }
        }
        (quotient, rest)
    }
}

impl fmt::Display for ShiftedOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}
