//! Coefficient blocks, analysis and synthesis of plane functions, and rotations.

mod block;
mod equivariance;
mod rotation;

pub use block::{BlockJson, CoeffJson, CoefficientBlock};
pub use equivariance::OperatorRotated;
pub use rotation::{expm, rotate, rotation_matrix, su2_matrix, RotationSpec, UNITARITY_TOLERANCE};

use num_complex::Complex64;

use crate::basis::{PlanePoint, Sector};
use crate::error::{Error, Result};
use crate::quadrature::{angular_grid, angular_mode, gauss_laguerre, PlaneFunction, QuadratureRule};

/// Extra `j` levels of resolution used when sampling a function that may not
/// be band-limited.
pub const DEFAULT_BAND_MARGIN: u32 = 8;

/// Sampling resolution for [`analyze`] and [`parseval_gap`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    pub band_margin: u32,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling { band_margin: DEFAULT_BAND_MARGIN }
    }
}

impl Sampling {
    /// Radial rule order, exact for products of functions with `2j <= two_j_max + 2 margin`.
    fn radial_order(&self, two_j_max: u32) -> usize {
        (two_j_max / 2 + self.band_margin) as usize + 1
    }

    fn angular_points(&self, two_j_max: u32) -> usize {
        2 * (two_j_max + 2 * self.band_margin) as usize + 1
    }

    fn rule(&self, two_m: i32, two_j_max: u32) -> Result<QuadratureRule> {
        gauss_laguerre(self.radial_order(two_j_max), two_m.unsigned_abs() as f64)
    }
}

fn check_sector<F: PlaneFunction + ?Sized>(f: &F, sector: Sector) -> Result<()> {
    if f.sector() != sector {
        return Err(Error::SectorMismatch(format!(
            "function lives in the {:?} sector, analysis requested for {:?}",
            f.sector(),
            sector
        )));
    }
    Ok(())
}

/// `sum_i w_i e^(x_i) x_i^(-alpha) a_i` over a rule.
fn reduced_weights(rule: &QuadratureRule) -> Vec<f64> {
    let a = rule.alpha();
    rule.pairs().map(|(x, w)| w * x.exp() * x.powf(-a)).collect()
}

/// Coefficients `c_jm = <Z_jm, f>` for every label of the sector with `j <= j_max`.
pub fn analyze<F: PlaneFunction + ?Sized>(f: &F, sector: Sector, two_j_max: u32) -> Result<CoefficientBlock> {
    analyze_with(f, sector, two_j_max, Sampling::default())
}

pub fn analyze_with<F: PlaneFunction + ?Sized>(
    f: &F,
    sector: Sector,
    two_j_max: u32,
    sampling: Sampling,
) -> Result<CoefficientBlock> {
    check_sector(f, sector)?;
    let mut block = CoefficientBlock::new(sector, two_j_max);
    let phis = angular_grid(sampling.angular_points(two_j_max));
    let parity = sector.parity() as i32;
    for two_m in (-(two_j_max as i32)..=two_j_max as i32).filter(|tm| tm.rem_euclid(2) == parity) {
        let rule = sampling.rule(two_m, two_j_max)?;
        let mode = angular_mode(f, two_m, &rule, &phis);
        let weights = reduced_weights(&rule);
        for s in sector.labels(two_j_max).into_iter().filter(|s| s.two_m() == two_m) {
            let radial: Vec<f64> =
                rule.nodes().iter().map(|&y| crate::basis::radial(s, y)).collect::<Result<_>>()?;
            let c: Complex64 = mode.iter().zip(&radial).zip(&weights).map(|((fm, r), w)| fm * (r * w)).sum();
            block.set(s, c)?;
        }
    }
    Ok(block)
}

/// `sum c_jm Z_jm(p)`.
pub fn synthesize(block: &CoefficientBlock, p: PlanePoint) -> Complex64 {
    block.value(p)
}

/// Plane norm `(1/2pi) int |f|^2 dy dphi`, resolved up to `j_max + margin`.
pub fn plane_norm_sq<F: PlaneFunction + ?Sized>(f: &F, sector: Sector, two_j_max: u32, sampling: Sampling) -> Result<f64> {
    let reach = two_j_max + 2 * sampling.band_margin;
    let phis = angular_grid(sampling.angular_points(two_j_max));
    let parity = sector.parity() as i32;
    let mut total = 0.0;
    for two_m in (-(reach as i32)..=reach as i32).filter(|tm| tm.rem_euclid(2) == parity) {
        let rule = sampling.rule(two_m, two_j_max)?;
        let mode = angular_mode(f, two_m, &rule, &phis);
        total += mode.iter().zip(reduced_weights(&rule)).map(|(fm, w)| fm.norm_sqr() * w).sum::<f64>();
    }
    Ok(total)
}

/// `| ||f||^2 - sum |c_jm|^2 |`.
pub fn parseval_gap<F: PlaneFunction + ?Sized>(f: &F, sector: Sector, two_j_max: u32) -> Result<f64> {
    check_sector(f, sector)?;
    let sampling = Sampling::default();
    let norm = plane_norm_sq(f, sector, two_j_max, sampling)?;
    let block = analyze_with(f, sector, two_j_max, sampling)?;
    Ok((norm - block.norm_sq()).abs())
}
