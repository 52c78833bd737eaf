use num_complex::Complex64;

use super::{max_of, CheckRecord, VerifyOptions};
use crate::algebra::action::sample_nodes;
use crate::basis::{harmonic, ode_residual, radial, radial_jet, PlanePoint, Sector, SpinIndex};
use crate::error::Result;
use crate::quadrature::{halfline_inner, min_angular_points, plane_inner};

/// Every label with `2j <= two_j_max`, both sectors.
pub(crate) fn labels(two_j_max: u32) -> Vec<SpinIndex> {
    (0..=two_j_max).flat_map(SpinIndex::multiplet).collect()
}

pub(crate) fn gram_gap<F>(labels: &[SpinIndex], mut inner: F) -> Result<f64>
where
    F: FnMut(SpinIndex, SpinIndex) -> Result<Complex64>,
{
    let mut worst: f64 = 0.0;
    for (k, &a) in labels.iter().enumerate() {
        for &b in &labels[k..] {
            let expected = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((inner(a, b)? - Complex64::new(expected, 0.0)).norm());
        }
    }
    Ok(worst)
}

pub(super) fn checks(opts: &VerifyOptions) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let all = labels(opts.two_j_max);

    let mut ode = Vec::new();
    let mut signed = Vec::new();
    let mut unsigned = Vec::new();
    let mut m0 = Vec::new();
    for &s in &all {
        for y in sample_nodes(s) {
            let [f, _, d2f] = radial_jet(s, y)?;
            ode.push(ode_residual(s, y)?.abs() / 1f64.max(f.abs()).max((y * d2f).abs()));
            let mirror = SpinIndex::new(s.two_j() as i64, -(s.two_m() as i64))?;
            let (a, b) = (radial(s, y)?, radial(mirror, y)?);
            let sign = if s.two_m() % 2 != 0 { -1.0 } else { 1.0 };
            let scale = a.abs().max(b.abs());
            if scale > 0.0 {
                signed.push((a - sign * b).abs() / scale);
                if s.two_m() % 2 != 0 {
                    unsigned.push((a - b).abs() / scale);
                }
            }
            if s.two_m() == 0 {
                for phi in [-3.0, -1.0, 0.5, 2.9] {
                    let z = harmonic(s, PlanePoint { y, phi })?;
                    m0.push(z.im.abs().max((z.re - a).abs()));
                }
            }
        }
    }
    out.push(opts.check("basis.ode", "radial differential equation", max_of(ode)));
    out.push(opts.check(
        "basis.reflection.signed",
        "m -> -m symmetry with the factor (-1)^(2m)",
        max_of(signed),
    ));
    if !unsigned.is_empty() {
        out.push(opts.erratum(
            "basis.reflection.unsigned",
            "m -> -m symmetry as printed, without sign",
            unsigned.iter().copied().fold(f64::INFINITY, f64::min),
            "the printed symmetry omits the factor (-1)^(2m); for half-integer m the functions \
             for m and -m differ in sign",
        ));
    }
    out.push(opts.check("basis.m0-real", "m = 0 harmonics are real and angle independent", max_of(m0)));

    let mut ortho: f64 = 0.0;
    for two_m in -(opts.two_j_max as i32)..=opts.two_j_max as i32 {
        let same_m: Vec<SpinIndex> = all.iter().copied().filter(|s| s.two_m() == two_m).collect();
        let gap = gram_gap(&same_m, |a, b| {
            Ok(Complex64::new(halfline_inner(&a, &b, two_m, opts.two_j_max.div_ceil(2))?, 0.0))
        })?;
        ortho = ortho.max(gap);
    }
    out.push(opts.check("basis.orthonormality", "half-line orthonormality at fixed m", ortho));

    let two_cap = opts.capped(12);
    let j_cap = two_cap.div_ceil(2);
    let mut plane: f64 = 0.0;
    for sector in [Sector::Integer, Sector::HalfInteger] {
        let sector_labels = sector.labels(two_cap);
        let gap = gram_gap(&sector_labels, |a, b| plane_inner(&a, &b, j_cap, min_angular_points(j_cap)))?;
        plane = plane.max(gap);
    }
    out.push(opts.check("basis.plane-orthonormality", "plane orthonormality within a sector", plane));
    Ok(out)
}
