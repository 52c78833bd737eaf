//! Rotations of coefficient blocks, `D = e^(-i a J3) e^(-i b Jy) e^(-i c J3)`
//! (z-y-z Euler angles), with each factor obtained by exponentiating the
//! multiplet's generator matrix.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::CoefficientBlock;
use crate::basis::SpinIndex;
use crate::error::{Error, Result};

/// Largest accepted entry of `D^H D - I`.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;

const TAYLOR_TERMS: usize = 30;

/// Euler angles `(a, b, c)` in radians, z-y-z convention.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationSpec {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl RotationSpec {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::Domain(format!("Euler angles must be finite, got ({a}, {b}, {c})")));
        }
        Ok(RotationSpec { a, b, c })
    }

    pub fn identity() -> Self {
        RotationSpec { a: 0.0, b: 0.0, c: 0.0 }
    }

    /// Angles of `self` applied after `first`, read off the product of the
    /// spin-1/2 matrices so that the double cover is respected.
    pub fn after(&self, first: &RotationSpec) -> RotationSpec {
        let u = su2_matrix(self) * su2_matrix(first);
        let b = 2.0 * u[(1, 0)].norm().atan2(u[(0, 0)].norm());
        // u00 = e^(i(a+c)/2) cos(b/2), u10 = -e^(-i(a-c)/2) sin(b/2)
        let sum = if u[(0, 0)].norm() > 0.0 { 2.0 * u[(0, 0)].arg() } else { 0.0 };
        let diff = if u[(1, 0)].norm() > 0.0 { -2.0 * (-u[(1, 0)]).arg() } else { 0.0 };
        RotationSpec { a: 0.5 * (sum + diff), b, c: 0.5 * (sum - diff) }
    }
}

/// The spin-1/2 matrix of a rotation, rows and columns ordered `m = -1/2, +1/2`.
pub fn su2_matrix(r: &RotationSpec) -> Matrix2<Complex64> {
    let (cb, sb) = ((r.b / 2.0).cos(), (r.b / 2.0).sin());
    let e = |t: f64| Complex64::from_polar(1.0, t);
    Matrix2::new(
        e((r.a + r.c) / 2.0) * cb,
        e((r.a - r.c) / 2.0) * sb,
        -e(-(r.a - r.c) / 2.0) * sb,
        e(-(r.a + r.c) / 2.0) * cb,
    )
}

/// `e^A` by scaling and squaring around a truncated Taylor series.
pub fn expm(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = a.nrows();
    let norm = (0..n)
        .map(|col| (0..n).map(|row| a[(row, col)].norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = a / Complex64::new(2f64.powi(squarings as i32), 0.0);
    let mut sum = DMatrix::<Complex64>::identity(n, n);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    for k in 1..=TAYLOR_TERMS {
        term = &term * &scaled / Complex64::new(k as f64, 0.0);
        sum += &term;
        if term.iter().all(|z| z.norm() <= f64::EPSILON * 1e-3) {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `J3`, `J+` and `J-` on one multiplet, basis ordered by ascending `m`.
fn generators(two_j: u32) -> (DMatrix<Complex64>, DMatrix<Complex64>, DMatrix<Complex64>) {
    let dim = two_j as usize + 1;
    let j = two_j as f64 / 2.0;
    let j3 = DMatrix::from_fn(dim, dim, |r, c| {
        if r == c {
            Complex64::new(-j + r as f64, 0.0)
        } else {
            Complex64::default()
        }
    });
    let jp = DMatrix::from_fn(dim, dim, |r, c| {
        let m = -j + c as f64;
        if r == c + 1 {
            Complex64::new(((j - m) * (j + m + 1.0)).sqrt(), 0.0)
        } else {
            Complex64::default()
        }
    });
    let jm = jp.transpose();
    (j3, jp, jm)
}

fn unitarity_defect(d: &DMatrix<Complex64>) -> f64 {
    let n = d.nrows();
    let prod = d.adjoint() * d - DMatrix::<Complex64>::identity(n, n);
    prod.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// The `(2j+1) x (2j+1)` matrix of a rotation on one multiplet.
pub fn rotation_matrix(two_j: u32, r: &RotationSpec) -> Result<DMatrix<Complex64>> {
    let (j3, jp, jm) = generators(two_j);
    let minus_i = Complex64::new(0.0, -1.0);
    // Jy = (J+ - J-) / 2i
    let jy = (&jp - &jm) / Complex64::new(0.0, 2.0);
    let d = expm(&(&j3 * (minus_i * r.a))) * expm(&(&jy * (minus_i * r.b))) * expm(&(&j3 * (minus_i * r.c)));
    let defect = unitarity_defect(&d);
    if defect.is_nan() || defect > UNITARITY_TOLERANCE {
        return Err(Error::NonUnitary(defect));
    }
    Ok(d)
}

/// `c' = D c` on every multiplet of the block.
pub fn rotate(block: &CoefficientBlock, r: &RotationSpec) -> Result<CoefficientBlock> {
    let mut out = block.clone();
    for two_j in (0..=block.two_j_max()).filter(|tj| tj % 2 == block.sector().parity()) {
        let labels: Vec<SpinIndex> = SpinIndex::multiplet(two_j).collect();
        if !labels.iter().any(|s| block.contains(*s)) {
            continue;
        }
        let c = nalgebra::DVector::from_iterator(labels.len(), labels.iter().map(|s| block.get(*s)));
        let rotated = rotation_matrix(two_j, r)? * c;
        out.replace_multiplet(&labels, rotated.as_slice());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::Sector;
    use std::f64::consts::PI;

    #[test]
    fn identity_rotation_is_exact() {
        let block = CoefficientBlock::random(Sector::Integer, 6, 1);
        assert_eq!(rotate(&block, &RotationSpec::identity()).unwrap(), block);
    }

    #[test]
    fn full_turn_is_the_double_cover_sign() {
        let r = RotationSpec::new(0.0, 2.0 * PI, 0.0).unwrap();
        for two_j in 0..=8u32 {
            let d = rotation_matrix(two_j, &r).unwrap();
            let sign = if two_j % 2 == 1 { -1.0 } else { 1.0 };
            let dim = two_j as usize + 1;
            let expected = DMatrix::<Complex64>::identity(dim, dim) * Complex64::new(sign, 0.0);
            assert!((d - expected).iter().all(|z| z.norm() < 1e-12), "2j = {two_j}");
        }
    }

    #[test]
    fn spin_half_matrix_agrees_with_the_closed_form() {
        let r = RotationSpec::new(0.3, 1.1, -2.0).unwrap();
        let d = rotation_matrix(1, &r).unwrap();
        let u = su2_matrix(&r);
        for row in 0..2 {
            for col in 0..2 {
                assert!((d[(row, col)] - u[(row, col)]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn small_wigner_matrix_for_spin_one() {
        // d^1_{1,0}(b) = -sin(b)/sqrt 2 at row m' = 1, column m = 0
        let b = 0.7;
        let d = rotation_matrix(2, &RotationSpec::new(0.0, b, 0.0).unwrap()).unwrap();
        assert!((d[(2, 1)].re + b.sin() / 2f64.sqrt()).abs() < 1e-14);
        assert!((d[(2, 2)].re - (1.0 + b.cos()) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn composition_matches_matrix_products() {
        let r1 = RotationSpec::new(0.4, 2.9, -1.2).unwrap();
        let r2 = RotationSpec::new(-2.2, 0.8, 3.0).unwrap();
        let r21 = r2.after(&r1);
        for two_j in [1u32, 2, 5, 8] {
            let lhs = rotation_matrix(two_j, &r2).unwrap() * rotation_matrix(two_j, &r1).unwrap();
            let rhs = rotation_matrix(two_j, &r21).unwrap();
            assert!((lhs - rhs).iter().all(|z| z.norm() < 1e-12), "2j = {two_j}");
        }
    }

    #[test]
    fn expm_of_a_rotation_generator() {
        let theta = 1.3;
        let a = DMatrix::from_row_slice(
            2,
            2,
            &[Complex64::default(), Complex64::new(-theta, 0.0), Complex64::new(theta, 0.0), Complex64::default()],
        );
        let e = expm(&a);
        assert!((e[(0, 0)].re - theta.cos()).abs() < 1e-15);
        assert!((e[(1, 0)].re - theta.sin()).abs() < 1e-15);
    }
}
