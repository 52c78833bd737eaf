use num_complex::Complex64;

use super::{max_of, CheckRecord, VerifyOptions};
use crate::basis::{Sector, SpinIndex};
use crate::error::Result;
use crate::transform::{
    analyze, parseval_gap, rotate, rotation_matrix, CoefficientBlock, OperatorRotated, RotationSpec,
};

fn sectors(two_j_max: u32) -> Vec<(Sector, u32)> {
    let mut out = vec![(Sector::Integer, two_j_max - two_j_max % 2)];
    if two_j_max >= 1 {
        out.push((Sector::HalfInteger, two_j_max - (1 - two_j_max % 2)));
    }
    out
}

const ROTATIONS: [(f64, f64, f64); 3] = [(0.3, 1.1, -2.0), (-2.2, 2.9, 0.7), (4.0, -0.6, 1.3)];

pub(super) fn checks(opts: &VerifyOptions) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let two_cap = opts.capped(12);
    let (mut roundtrip, mut parseval, mut above) = (Vec::new(), Vec::new(), Vec::new());
    let (mut unitarity, mut multiplets, mut group, mut turn) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let mut equivariance = Vec::new();
    for (k, (sector, cap)) in sectors(two_cap).into_iter().enumerate() {
        let block = CoefficientBlock::random(sector, cap, opts.seed.wrapping_add(k as u64));
        let back = analyze(&block, sector, cap)?;
        roundtrip.push(back.max_abs_diff(&block));
        parseval.push(parseval_gap(&block, sector, cap)?);
        let top = SpinIndex::new(cap as i64 + 2, sector.parity() as i64)?;
        above.push((parseval_gap(&top, sector, cap)? - 1.0).abs());

        let rotations: Vec<RotationSpec> =
            ROTATIONS.iter().map(|&(a, b, c)| RotationSpec::new(a, b, c)).collect::<Result<_>>()?;
        for r in &rotations {
            let rotated = rotate(&block, r)?;
            unitarity.push((rotated.norm_sq() - block.norm_sq()).abs() / block.norm_sq().max(1.0));
            let before = block.multiplet_norms();
            let after = rotated.multiplet_norms();
            multiplets.push(max_of(before.iter().map(|(tj, n)| (n - after[tj]).abs())));
        }
        for pair in rotations.windows(2) {
            let (r1, r2) = (pair[0], pair[1]);
            let twice = rotate(&rotate(&block, &r1)?, &r2)?;
            let once = rotate(&block, &r2.after(&r1))?;
            group.push(twice.max_abs_diff(&once));
        }
        let full = rotate(&block, &RotationSpec::new(0.0, 2.0 * std::f64::consts::PI, 0.0)?)?;
        let sign = if sector == Sector::HalfInteger { -1.0 } else { 1.0 };
        turn.push(full.max_abs_diff(&block.scaled(Complex64::new(sign, 0.0))));
        for two_j in (sector.parity()..=cap).step_by(2) {
            let d = rotation_matrix(two_j, &rotations[0])?;
            let n = d.nrows();
            let defect = (d.adjoint() * &d - nalgebra::DMatrix::<Complex64>::identity(n, n))
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            unitarity.push(defect);
        }

        let small = opts.capped(6).min(cap);
        let small = if small % 2 != sector.parity() { small.saturating_sub(1) } else { small };
        if small % 2 == sector.parity() {
            let b = CoefficientBlock::random(sector, small, opts.seed.wrapping_add(17 + k as u64));
            let r = RotationSpec::new(0.9, 0.6, -0.4)?;
            let via_operators = analyze(&OperatorRotated::new(&b, r)?, sector, small)?;
            equivariance.push(via_operators.max_abs_diff(&rotate(&b, &r)?));
        }
    }
    out.push(opts.check("transform.roundtrip", "analysis inverts synthesis", max_of(roundtrip)));
    out.push(opts.check("transform.parseval", "Parseval identity for band-limited input", max_of(parseval)));
    out.push(opts.check(
        "transform.parseval.above-cap",
        "a harmonic above the cap has Parseval gap 1",
        max_of(above),
    ));
    out.push(opts.check("transform.rotation.unitarity", "rotations are unitary", max_of(unitarity)));
    out.push(opts.check(
        "transform.rotation.multiplet-norms",
        "rotations preserve each multiplet norm",
        max_of(multiplets),
    ));
    out.push(opts.check("transform.rotation.group-law", "D(r2) D(r1) = D(r2 r1)", max_of(group)));
    out.push(opts.check("transform.rotation.full-turn", "a 2pi turn multiplies by (-1)^(2j)", max_of(turn)));
    out.push(opts.check(
        "transform.equivariance",
        "rotating through the differential generators matches the matrix rotation",
        max_of(equivariance),
    ));
    Ok(out)
}
