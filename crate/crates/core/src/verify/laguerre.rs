use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{max_of, CheckRecord, VerifyOptions};
use crate::error::Result;
use crate::laguerre::{
    laguerre_deriv, laguerre_eval, laguerre_reflect, recurrence_residual, ExactPolynomial, LaguerreIndex, Relation,
};

pub(crate) const GRID_Y: [f64; 4] = [0.1, 1.0, 5.0, 20.0];
pub(crate) const MAX_DEGREE: i64 = 12;
pub(crate) const MAX_ORDER: i64 = 6;

/// Every admissible `(n, alpha)` with `n <= 12` and `|alpha| <= 6`.
pub(crate) fn grid() -> impl Iterator<Item = LaguerreIndex> {
    (0..=MAX_DEGREE)
        .flat_map(|n| (-MAX_ORDER..=MAX_ORDER).map(move |a| (n, a)))
        .filter_map(|(n, a)| LaguerreIndex::new(n, a).ok())
}

/// Relative error of a double against an exact value (absolute when the value is zero).
pub(crate) fn exact_relative(approx: f64, exact: &BigRational) -> f64 {
    let Some(approx_q) = BigRational::from_float(approx) else { return f64::NAN };
    let diff = (approx_q - exact).abs();
    if exact.is_zero() {
        diff.to_f64().unwrap_or(f64::NAN)
    } else {
        (diff / exact.abs()).to_f64().unwrap_or(f64::NAN)
    }
}

/// Central difference of an exact polynomial, Richardson-extrapolated once,
/// with step `2^-20`; all arithmetic exact.
pub(crate) fn exact_difference_derivative(p: &ExactPolynomial, y: f64) -> BigRational {
    let y = BigRational::from_float(y).expect("finite grid point");
    let central = |h: &BigRational| (p.eval(&(&y + h)) - p.eval(&(&y - h))) / (h * BigInt::from(2));
    let h = BigRational::new(BigInt::from(1), BigInt::from(1 << 20));
    let coarse = central(&h);
    let fine = central(&(&h / BigInt::from(2)));
    (fine * BigInt::from(4) - coarse) / BigInt::from(3)
}

fn kebab(relation: Relation) -> String {
    relation.name().replace('_', "-")
}

pub(super) fn checks(opts: &VerifyOptions) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();

    let mut oracle = Vec::new();
    let mut reflection = Vec::new();
    let mut derivative = Vec::new();
    for idx in grid() {
        let exact = ExactPolynomial::laguerre(idx.n() as i64, idx.alpha() as i64);
        for y in GRID_Y {
            oracle.push(exact_relative(laguerre_eval(idx, y), &exact.eval_f64(y)));
            if idx.alpha() <= 0 {
                let direct = laguerre_eval(idx, y);
                let reflected = laguerre_reflect(idx, y)?;
                let scale = direct.abs().max(reflected.abs());
                reflection.push(if scale > 0.0 { (direct - reflected).abs() / scale } else { 0.0 });
            }
            let fd = exact_difference_derivative(&exact, y);
            let analytic = laguerre_deriv(idx, y, 1)?;
            let gap = BigRational::from_float(analytic).expect("finite derivative") - fd;
            derivative.push(gap.abs().to_f64().unwrap_or(f64::NAN));
        }
    }
    out.push(opts.check(
        "laguerre.oracle",
        "three-term recurrence against the exact series",
        max_of(oracle),
    ));
    out.push(opts.check(
        "laguerre.reflection",
        "reflection identity for negative superscript",
        max_of(reflection),
    ));
    out.push(opts.check(
        "laguerre.derivative",
        "first derivative against exact central differences",
        max_of(derivative),
    ));

    for relation in Relation::ELEMENTARY {
        let mut worst = Vec::new();
        for idx in grid() {
            for y in GRID_Y {
                if let Ok(check) = recurrence_residual(relation, idx, y) {
                    worst.push(check.as_printed.relative());
                }
            }
        }
        out.push(opts.check(
            &format!("laguerre.recurrence.{}", kebab(relation)),
            "first-order differential recurrence",
            max_of(worst),
        ));
    }

    for relation in Relation::COMPOSED {
        let mut corrected = Vec::new();
        let mut printed = Vec::new();
        for idx in grid() {
            for y in GRID_Y {
                if let Ok(check) = recurrence_residual(relation, idx, y) {
                    printed.push(check.as_printed.relative());
                    corrected.push(check.corrected.map_or(f64::NAN, |c| c.relative()));
                }
            }
        }
        let id = kebab(relation);
        out.push(opts.check(
            &format!("laguerre.composed.{id}.corrected"),
            "composed recurrence, derived from the elementary ones",
            max_of(corrected),
        ));
        let (discrepancy, note) = match relation {
            Relation::LowerDegreeRaiseOrderTwo => {
                let at = recurrence_residual(relation, LaguerreIndex::new(1, 0)?, 1.0)?;
                (
                    at.as_printed.residual,
                    "right-hand coefficient printed as -alpha/(alpha+1); \
                     at n=1, alpha=0 the sides are -y and 0. Correct coefficient: -y/(alpha+1)",
                )
            }
            Relation::RaiseDegreeLowerOrderTwo => (
                max_of(printed),
                "printed with -y(n + 3alpha/2) and right side (j+alpha)(alpha+1), j = n + alpha/2. \
                 Correct form: [y(alpha-1) d/dy - y(n+alpha) + alpha(alpha-1)] L_n^alpha \
                 = (n+1)(n+alpha) L_(n+1)^(alpha-2)",
            ),
            _ => unreachable!("only composed relations"),
        };
        out.push(opts.erratum(
            &format!("laguerre.composed.{id}.printed"),
            "composed recurrence as printed",
            discrepancy,
            note,
        ));
    }
    Ok(out)
}
