//! Generalized Gauss-Laguerre rules and the inner products they realize on the
//! half-line `[0, inf)` and on the half-plane `[0, inf) x [-pi, pi]`.
//!
//! Nodes are the eigenvalues of the symmetric tridiagonal Jacobi matrix of the
//! weight `y^alpha e^(-y)` (diagonal `2k + alpha + 1`, off-diagonal
//! `sqrt(k (k + alpha))`), found with an implicit-shift QL iteration. The
//! squared first component of each normalized eigenvector is
//! `1 / sum_k p_k(x)^2` with `p_k` the orthonormal polynomials; it is evaluated
//! from that closed form instead of from accumulated rotations, which keeps the
//! tiny weights of the outer nodes accurate to a few ulps.

use std::f64::consts::PI;

use num_complex::Complex64;
use statrs::function::gamma::gamma;

use crate::basis::{radial, PlanePoint, Sector, SpinIndex};
use crate::error::{domain, Error, Result};

const MAX_SWEEPS: usize = 50;

/// Nodes and weights of a Gauss rule for `int_0^inf y^alpha e^(-y) f(y) dy`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    order: usize,
    alpha: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// `sum_i w_i f(x_i)`, approximating `int_0^inf y^alpha e^(-y) f(y) dy`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.pairs().map(|(x, w)| w * f(x)).sum()
    }

    /// Rule moment of `y^k`; exact (`Gamma(k + alpha + 1)`) for `k <= 2N - 1`.
    pub fn moment(&self, k: u32) -> f64 {
        self.integrate(|x| x.powi(k as i32))
    }

    /// CSV with one `node,weight` pair per line, preceded by a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("node,weight\n");
        for (x, w) in self.pairs() {
            out.push_str(&format!("{x:.17e},{w:.17e}\n"));
        }
        out
    }
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// sub-diagonal `off` (`off.len() == diag.len() - 1`), ascending.
pub(crate) fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n.saturating_sub(1)].copy_from_slice(off);

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if sweeps == MAX_SWEEPS {
                return Err(Error::NonConvergence { index: l, iterations: sweeps });
            }
            sweeps += 1;

            // Wilkinson-type shift from the leading 2x2 block
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.total_cmp(b));
    Ok(d)
}

/// Generalized Gauss-Laguerre rule of order `n` for the weight `y^alpha e^(-y)`.
pub fn gauss_laguerre(n: usize, alpha: f64) -> Result<QuadratureRule> {
    if n == 0 {
        return domain("rule order must be at least 1");
    }
    if !(alpha.is_finite() && alpha > -1.0) {
        return domain(format!("alpha = {alpha} must exceed -1"));
    }
    let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
    let off: Vec<f64> = (1..n).map(|k| (k as f64 * (k as f64 + alpha)).sqrt()).collect();
    let nodes = tridiagonal_eigenvalues(&diag, &off)?;

    let total = gamma(alpha + 1.0);
    let weights = nodes
        .iter()
        .map(|&x| {
            let (mut prev, mut curr) = (0.0, 1.0);
            let mut norm = 1.0;
            for k in 0..n - 1 {
                let next = ((x - diag[k]) * curr - if k > 0 { off[k - 1] * prev } else { 0.0 }) / off[k];
                prev = curr;
                curr = next;
                norm += curr * curr;
            }
            total / norm
        })
        .collect();

    Ok(QuadratureRule { order: n, alpha, nodes, weights })
}

/// A real function on the half-line, optionally reporting the largest `j` it involves.
pub trait HalfLineFunction {
    fn value(&self, y: f64) -> f64;

    fn j_bound(&self) -> Option<f64> {
        None
    }
}

impl<F: Fn(f64) -> f64> HalfLineFunction for F {
    fn value(&self, y: f64) -> f64 {
        self(y)
    }
}

impl HalfLineFunction for SpinIndex {
    fn value(&self, y: f64) -> f64 {
        radial(*self, y).expect("finite non-negative node")
    }

    fn j_bound(&self) -> Option<f64> {
        Some(self.j())
    }
}

fn check_bound(bound: Option<f64>, j_cap: u32) -> Result<()> {
    match bound {
        Some(found) if found > j_cap as f64 => Err(Error::DegreeOverflow { found, cap: j_cap as f64 }),
        _ => Ok(()),
    }
}

/// Exact rule for products `f g` of radial functions with `|m| = |two_m|/2` and `j <= j_cap`.
pub fn halfline_rule(two_m: i32, j_cap: u32) -> Result<QuadratureRule> {
    gauss_laguerre(j_cap as usize + 1, two_m.unsigned_abs() as f64)
}

/// Sum over a rule whose weight `y^alpha e^(-y)` has been divided out of the integrand.
fn reduced_sum<F: FnMut(f64) -> T, T>(rule: &QuadratureRule, mut f: F) -> T
where
    T: std::iter::Sum + std::ops::Mul<f64, Output = T>,
{
    let a = rule.alpha();
    rule.pairs()
        .map(|(x, w)| f(x) * (w * x.exp() * x.powf(-a)))
        .sum()
}

/// `int_0^inf f g dy` for functions of the form `poly(y) y^|m| e^(-y/2)` with
/// polynomial degree at most `j_cap - |m|`; both `e^(-y/2)` factors and
/// `y^(2|m|)` are absorbed into the rule weight, making the result exact.
pub fn halfline_inner<F, G>(f: &F, g: &G, two_m: i32, j_cap: u32) -> Result<f64>
where
    F: HalfLineFunction + ?Sized,
    G: HalfLineFunction + ?Sized,
{
    check_bound(f.j_bound(), j_cap)?;
    check_bound(g.j_bound(), j_cap)?;
    let rule = halfline_rule(two_m, j_cap)?;
    Ok(reduced_sum(&rule, |y| f.value(y) * g.value(y)))
}

/// A complex function on the half-plane confined to one sector.
pub trait PlaneFunction {
    fn sector(&self) -> Sector;

    fn value(&self, p: PlanePoint) -> Complex64;

    fn j_bound(&self) -> Option<f64> {
        None
    }

    /// Angular modes (as `2m`) the function is known to be confined to.
    fn modes(&self) -> Option<Vec<i32>> {
        None
    }
}

impl PlaneFunction for SpinIndex {
    fn sector(&self) -> Sector {
        SpinIndex::sector(self)
    }

    fn value(&self, p: PlanePoint) -> Complex64 {
        crate::basis::harmonic(*self, p).expect("valid plane point")
    }

    fn j_bound(&self) -> Option<f64> {
        Some(self.j())
    }

    fn modes(&self) -> Option<Vec<i32>> {
        Some(vec![self.two_m()])
    }
}

/// Wraps a closure as a plane function of a declared sector.
pub struct SectorFn<F> {
    sector: Sector,
    f: F,
}

impl<F: Fn(PlanePoint) -> Complex64> SectorFn<F> {
    pub fn new(sector: Sector, f: F) -> Self {
        SectorFn { sector, f }
    }
}

impl<F: Fn(PlanePoint) -> Complex64> PlaneFunction for SectorFn<F> {
    fn sector(&self) -> Sector {
        self.sector
    }

    fn value(&self, p: PlanePoint) -> Complex64 {
        (self.f)(p)
    }
}

/// Equispaced angles `-pi + 2 pi k / n_phi`, `k = 0..n_phi`.
pub fn angular_grid(n_phi: usize) -> Vec<f64> {
    (0..n_phi).map(|k| -PI + 2.0 * PI * k as f64 / n_phi as f64).collect()
}

/// Smallest angular resolution accepted by [`plane_inner`] for a given `j_cap`.
pub fn min_angular_points(j_cap: u32) -> usize {
    4 * j_cap as usize + 1
}

/// The `m`-th angular Fourier coefficient `(1/2pi) int e^(-i m phi) f dphi`,
/// sampled at every node of `rule`.
pub fn angular_mode<F: PlaneFunction + ?Sized>(
    f: &F,
    two_m: i32,
    rule: &QuadratureRule,
    phis: &[f64],
) -> Vec<Complex64> {
    let m = two_m as f64 / 2.0;
    let phases: Vec<Complex64> = phis.iter().map(|&phi| Complex64::from_polar(1.0, -m * phi)).collect();
    let scale = 1.0 / phis.len() as f64;
    rule.nodes()
        .iter()
        .map(|&y| {
            let sum: Complex64 = phis
                .iter()
                .zip(&phases)
                .map(|(&phi, &ph)| ph * f.value(PlanePoint { y, phi }))
                .sum();
            sum * scale
        })
        .collect()
}

/// `(1/2pi) int_-pi^pi dphi int_0^inf dy F* G` for finite combinations of plane
/// harmonics with `j <= j_cap` in a single sector.
///
/// The measure is `dy dphi / 2pi`, not the polar `y dy dphi`.
pub fn plane_inner<F, G>(f: &F, g: &G, j_cap: u32, n_phi: usize) -> Result<Complex64>
where
    F: PlaneFunction + ?Sized,
    G: PlaneFunction + ?Sized,
{
    if f.sector() != g.sector() {
        return Err(Error::SectorMismatch(format!(
            "{:?} and {:?} harmonics are not orthogonal over a single period",
            f.sector(),
            g.sector()
        )));
    }
    check_bound(f.j_bound(), j_cap)?;
    check_bound(g.j_bound(), j_cap)?;
    let needed = min_angular_points(j_cap);
    if n_phi < needed {
        return domain(format!("n_phi = {n_phi} is below the required {needed} for j_cap = {j_cap}"));
    }

    let mut modes: Vec<i32> = {
        let parity = f.sector().parity() as i32;
        let cap = 2 * j_cap as i32;
        (-cap..=cap).filter(|tm| tm.rem_euclid(2) == parity).collect()
    };
    for known in [f.modes(), g.modes()].into_iter().flatten() {
        modes.retain(|tm| known.contains(tm));
    }

    let phis = angular_grid(n_phi);
    let mut total = Complex64::new(0.0, 0.0);
    for two_m in modes {
        let rule = halfline_rule(two_m, j_cap)?;
        let fm = angular_mode(f, two_m, &rule, &phis);
        let gm = angular_mode(g, two_m, &rule, &phis);
        let a = rule.alpha();
        total += rule
            .pairs()
            .zip(fm.iter().zip(&gm))
            .map(|((x, w), (a_f, a_g))| a_f.conj() * a_g * (w * x.exp() * x.powf(-a)))
            .sum::<Complex64>();
    }
    Ok(total)
}
