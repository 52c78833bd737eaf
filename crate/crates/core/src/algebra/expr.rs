//! Noncommutative expressions in `Y`, `Y^-1`, `D`, `M`, `J` with exact coefficients.
//!
//! [`FreeExpr`] holds arbitrary words and is what products produce.
//! [`OperatorExpr`] holds only canonical monomials
//! `Y^a (Y^-1)^b D^d M^p J^q` with `a * b = 0`; it is the output of normal ordering.
//! Both carry a phase tag `dm` (in half units) standing for a factor
//! `e^(i dm phi / 2)` that commutes with every symbol.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact Gaussian-rational coefficient.
pub type Coeff = Complex<BigRational>;

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn real_coeff(r: BigRational) -> Coeff {
    Complex::new(r, BigRational::zero())
}

pub fn coeff_to_c64(c: &Coeff) -> Complex64 {
    Complex64::new(c.re.to_f64().unwrap_or(f64::NAN), c.im.to_f64().unwrap_or(f64::NAN))
}

fn fmt_coeff(c: &Coeff) -> String {
    if c.im.is_zero() {
        format!("{}", c.re)
    } else if c.re.is_zero() {
        format!("({}i)", c.im)
    } else {
        let sign = if c.im < BigRational::zero() { "-" } else { "+" };
        let im = if c.im < BigRational::zero() { -c.im.clone() } else { c.im.clone() };
        format!("({}{sign}{}i)", c.re, im)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// Multiplication by `y`.
    Y,
    /// Multiplication by `1/y`.
    Yinv,
    /// `d/dy`.
    D,
    /// Reads the label `m`.
    M,
    /// Reads the label `j`.
    J,
}

impl Symbol {
    pub const ALL: [Symbol; 5] = [Symbol::Y, Symbol::Yinv, Symbol::D, Symbol::M, Symbol::J];

    /// Position in canonical order; `Y` and `Y^-1` share the first slot.
    pub fn rank(self) -> u8 {
        match self {
            Symbol::Y | Symbol::Yinv => 0,
            Symbol::D => 1,
            Symbol::M => 2,
            Symbol::J => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::Y => "Y",
            Symbol::Yinv => "Yinv",
            Symbol::D => "D",
            Symbol::M => "M",
            Symbol::J => "J",
        }
    }
}

/// A canonical monomial `Y^y D^d M^m J^j` (negative `y` meaning powers of `Y^-1`),
/// together with its phase tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub y: i32,
    pub d: u32,
    pub m: u32,
    pub j: u32,
    pub two_dm: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { y: 0, d: 0, m: 0, j: 0, two_dm: 0 };

    pub fn degree(&self) -> u32 {
        self.y.unsigned_abs() + self.d + self.m + self.j
    }

    fn sort_key(&self) -> (i32, u32, i32, u32, u32, u32) {
        (self.two_dm, self.degree(), self.y, self.d, self.m, self.j)
    }

    /// The word spelling this monomial in canonical order.
    pub fn word(&self) -> Vec<Symbol> {
        let mut w = Vec::with_capacity(self.degree() as usize);
        let ysym = if self.y >= 0 { Symbol::Y } else { Symbol::Yinv };
        w.extend(std::iter::repeat_n(ysym, self.y.unsigned_abs() as usize));
        w.extend(std::iter::repeat_n(Symbol::D, self.d as usize));
        w.extend(std::iter::repeat_n(Symbol::M, self.m as usize));
        w.extend(std::iter::repeat_n(Symbol::J, self.j as usize));
        w
    }

    /// Reads a word as a canonical monomial, or `None` if it is out of order.
    pub fn from_word(word: &[Symbol], two_dm: i32) -> Option<Monomial> {
        let mut mono = Monomial { two_dm, ..Monomial::ONE };
        let mut last_rank = 0;
        let mut seen_y = None;
        for &s in word {
            if s.rank() < last_rank {
                return None;
            }
            last_rank = s.rank();
            match s {
                Symbol::Y | Symbol::Yinv => {
                    if seen_y.is_some_and(|prev| prev != s) {
                        return None;
                    }
                    seen_y = Some(s);
                    mono.y += if s == Symbol::Y { 1 } else { -1 };
                }
                Symbol::D => mono.d += 1,
                Symbol::M => mono.m += 1,
                Symbol::J => mono.j += 1,
            }
        }
        Some(mono)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = if self.y >= 0 { (self.y, 0) } else { (0, -self.y) };
        write!(f, "Y^{a} Yinv^{b} D^{} M^{} J^{}", self.d, self.m, self.j)?;
        if self.two_dm != 0 {
            write!(f, " dm={}/2", self.two_dm)?;
        }
        Ok(())
    }
}

/// A word of symbols plus a phase tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub symbols: Vec<Symbol>,
    pub two_dm: i32,
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            write!(f, "1")?;
        } else {
            let names: Vec<&str> = self.symbols.iter().map(|s| s.name()).collect();
            write!(f, "{}", names.join("·"))?;
        }
        if self.two_dm != 0 {
            write!(f, " dm={}/2", self.two_dm)?;
        }
        Ok(())
    }
}

fn insert_term<K: Ord>(terms: &mut BTreeMap<K, Coeff>, key: K, c: Coeff) {
    if c.is_zero() {
        return;
    }
    let entry = terms.entry(key);
    match entry {
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let sum = o.get().clone() + c;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

/// Linear combination of arbitrary words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FreeExpr {
    terms: BTreeMap<Word, Coeff>,
}

impl FreeExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(BigRational::one())
    }

    pub fn scalar(r: BigRational) -> Self {
        Self::from_word(Vec::new(), 0, real_coeff(r))
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::from_word(vec![s], 0, real_coeff(BigRational::one()))
    }

    /// The commuting phase factor `e^(i dm phi / 2)`.
    pub fn phase(two_dm: i32) -> Self {
        Self::from_word(Vec::new(), two_dm, real_coeff(BigRational::one()))
    }

    pub fn from_word(symbols: Vec<Symbol>, two_dm: i32, c: Coeff) -> Self {
        let mut e = Self::zero();
        insert_term(&mut e.terms, Word { symbols, two_dm }, c);
        e
    }

    /// Product of the given symbols in order.
    pub fn word(symbols: &[Symbol]) -> Self {
        Self::from_word(symbols.to_vec(), 0, real_coeff(BigRational::one()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn add_term(&mut self, word: Word, c: Coeff) {
        insert_term(&mut self.terms, word, c);
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(&real_coeff(r.clone()))
    }

    /// Reads every word as a canonical monomial without rewriting.
    pub fn to_canonical(&self) -> Result<OperatorExpr> {
        let mut out = OperatorExpr::zero();
        for (w, c) in &self.terms {
            let mono = Monomial::from_word(&w.symbols, w.two_dm)
                .ok_or_else(|| Error::NotCanonical(w.to_string()))?;
            out.add_term(mono, c.clone());
        }
        Ok(out)
    }
}

impl Add for &FreeExpr {
    type Output = FreeExpr;

    fn add(self, rhs: &FreeExpr) -> FreeExpr {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Add for FreeExpr {
    type Output = FreeExpr;

    fn add(self, rhs: FreeExpr) -> FreeExpr {
        &self + &rhs
    }
}

impl Neg for &FreeExpr {
    type Output = FreeExpr;

    fn neg(self) -> FreeExpr {
        let mut out = FreeExpr::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl Sub for &FreeExpr {
    type Output = FreeExpr;

    fn sub(self, rhs: &FreeExpr) -> FreeExpr {
        self + &(-rhs)
    }
}

impl Sub for FreeExpr {
    type Output = FreeExpr;

    fn sub(self, rhs: FreeExpr) -> FreeExpr {
        &self - &rhs
    }
}

impl Mul for &FreeExpr {
    type Output = FreeExpr;

    fn mul(self, rhs: &FreeExpr) -> FreeExpr {
        let mut out = FreeExpr::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                let mut symbols = wa.symbols.clone();
                symbols.extend_from_slice(&wb.symbols);
                out.add_term(Word { symbols, two_dm: wa.two_dm + wb.two_dm }, ca * cb);
            }
        }
        out
    }
}

impl Mul for FreeExpr {
    type Output = FreeExpr;

    fn mul(self, rhs: FreeExpr) -> FreeExpr {
        &self * &rhs
    }
}

/// Linear combination of canonical monomials with zero coefficients pruned.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OperatorExpr {
    terms: BTreeMap<Monomial, Coeff>,
}

impl OperatorExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial, c: Coeff) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        insert_term(&mut self.terms, m, c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Coeff> {
        self.terms.get(m)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn max_derivative(&self) -> u32 {
        self.terms.keys().map(|m| m.d).max().unwrap_or(0)
    }

    pub fn to_free(&self) -> FreeExpr {
        let mut out = FreeExpr::zero();
        for (m, c) in &self.terms {
            out.add_term(Word { symbols: m.word(), two_dm: m.two_dm }, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term(*m, x * c);
        }
        out
    }

    /// One term per line: `coeff Y^a Yinv^b D^d M^p J^q [dm=k/2]`, monomials sorted.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (m, c) in &self.terms {
            out.push_str(&format!("{} {m}\n", fmt_coeff(c)));
        }
        out
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(m, c)| format!("{} {m}", fmt_coeff(c))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &OperatorExpr {
    type Output = OperatorExpr;

    fn add(self, rhs: &OperatorExpr) -> OperatorExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Neg for &OperatorExpr {
    type Output = OperatorExpr;

    fn neg(self) -> OperatorExpr {
        let mut out = OperatorExpr::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Sub for &OperatorExpr {
    type Output = OperatorExpr;

    fn sub(self, rhs: &OperatorExpr) -> OperatorExpr {
        self + &(-rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_words_round_trip() {
        let m = Monomial { y: -2, d: 1, m: 3, j: 0, two_dm: 2 };
        assert_eq!(Monomial::from_word(&m.word(), 2), Some(m));
        assert_eq!(Monomial::from_word(&[Symbol::D, Symbol::Y], 0), None);
        assert_eq!(Monomial::from_word(&[Symbol::Y, Symbol::Yinv], 0), None);
    }

    #[test]
    fn serialization_format() {
        let mut e = OperatorExpr::zero();
        e.add_term(Monomial { y: 0, d: 1, m: 1, j: 0, two_dm: 0 }, real_coeff(rational(-2, 1)));
        e.add_term(Monomial { y: -1, d: 0, m: 0, j: 0, two_dm: 2 }, real_coeff(rational(1, 2)));
        assert_eq!(e.serialize(), "-2 Y^0 Yinv^0 D^1 M^1 J^0\n1/2 Y^0 Yinv^1 D^0 M^0 J^0 dm=2/2\n");
    }

    #[test]
    fn zero_coefficients_are_pruned() {
        let x = FreeExpr::symbol(Symbol::D);
        assert!((&x - &x).is_zero());
        let c = x.to_canonical().unwrap();
        assert!((&c - &c).is_zero());
    }

    #[test]
    fn products_add_phase_tags() {
        let p = &FreeExpr::phase(2) * &FreeExpr::phase(-2);
        assert_eq!(p, FreeExpr::one());
    }
}
