//! Exact rational polynomials, used as the referee for floating-point evaluation.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial in `y` with exact rational coefficients; `coefficients[k]` multiplies `y^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPolynomial {
    coefficients: Vec<BigRational>,
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl ExactPolynomial {
    pub fn new(mut coefficients: Vec<BigRational>) -> Self {
        while coefficients.last().is_some_and(|c| c.is_zero()) {
            coefficients.pop();
        }
        ExactPolynomial { coefficients }
    }

    pub fn zero() -> Self {
        ExactPolynomial { coefficients: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `y`.
    pub fn y() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    /// `L_n^(alpha)` from the explicit series
    /// `sum_k (-1)^k C(n + alpha, n - k) y^k / k!`, with the binomial read as
    /// the polynomial `(alpha + k + 1)_(n - k) / (n - k)!` so that negative
    /// `alpha` is covered. Negative `n` gives the zero polynomial.
    pub fn laguerre(n: i64, alpha: i64) -> Self {
        if n < 0 {
            return Self::zero();
        }
        let mut coefficients = Vec::with_capacity(n as usize + 1);
        let mut k_factorial = BigInt::one();
        for k in 0..=n {
            if k > 0 {
                k_factorial *= BigInt::from(k);
            }
            let mut num = BigInt::one();
            let mut den = BigInt::one();
            for i in 1..=(n - k) {
                num *= BigInt::from(alpha + k + i);
                den *= BigInt::from(i);
            }
            den *= &k_factorial;
            let mut c = BigRational::new(num, den);
            if k % 2 == 1 {
                c = -c;
            }
            coefficients.push(c);
        }
        Self::new(coefficients)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn derivative(&self) -> Self {
        let coefficients = self
            .coefficients
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rational(k as i64))
            .collect();
        Self::new(coefficients)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coefficients.iter().map(|x| x * c).collect())
    }

    /// Exact value at a rational point.
    pub fn eval(&self, y: &BigRational) -> BigRational {
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * y + c)
    }

    /// Exact value at the rational number a double represents.
    pub fn eval_f64(&self, y: f64) -> BigRational {
        let y = BigRational::from_float(y).expect("finite evaluation point");
        self.eval(&y)
    }

    /// Largest absolute coefficient, as a float.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.coefficients
            .iter()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }
}

impl Add for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn add(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        let len = self.coefficients.len().max(rhs.coefficients.len());
        let zero = BigRational::zero();
        let coefficients = (0..len)
            .map(|k| {
                self.coefficients.get(k).unwrap_or(&zero) + rhs.coefficients.get(k).unwrap_or(&zero)
            })
            .collect();
        ExactPolynomial::new(coefficients)
    }
}

impl Neg for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn neg(self) -> ExactPolynomial {
        ExactPolynomial::new(self.coefficients.iter().map(|c| -c).collect())
    }
}

impl Sub for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn sub(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn mul(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return ExactPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (k, b) in rhs.coefficients.iter().enumerate() {
                out[i + k] += a * b;
            }
        }
        ExactPolynomial::new(out)
    }
}
