use statrs::function::gamma::{gamma, ln_gamma};

use super::{max_of, CheckRecord, VerifyOptions};
use crate::basis::SpinIndex;
use crate::error::Result;
use crate::quadrature::{gauss_laguerre, halfline_inner, min_angular_points, plane_inner};

pub(crate) const MAX_ORDER: usize = 40;
pub(crate) const EXPONENTS: [f64; 5] = [0.0, 1.0, 2.0, 3.0, 5.0];

/// Worst relative moment error `|sum w x^k / Gamma(k+alpha+1) - 1|`, `k <= 2N-1`.
pub(crate) fn moment_error(n: usize, alpha: f64) -> Result<f64> {
    let rule = gauss_laguerre(n, alpha)?;
    Ok(max_of((0..2 * n as u32).map(|k| {
        // compare in log-scaled form to stay clear of overflow
        let log_exact = ln_gamma(k as f64 + alpha + 1.0);
        let sum: f64 = rule.pairs().map(|(x, w)| (w.ln() + k as f64 * x.ln() - log_exact).exp()).sum();
        (sum - 1.0).abs()
    })))
}

pub(super) fn checks(opts: &VerifyOptions) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let mut moments = Vec::new();
    let mut sums = Vec::new();
    let mut interlacing = 0.0;
    for alpha in EXPONENTS {
        for n in 1..=MAX_ORDER {
            moments.push(moment_error(n, alpha)?);
            let rule = gauss_laguerre(n, alpha)?;
            sums.push((rule.weights().iter().sum::<f64>() / gamma(alpha + 1.0) - 1.0).abs());
            if n < MAX_ORDER {
                let next = gauss_laguerre(n + 1, alpha)?;
                let (a, b) = (rule.nodes(), next.nodes());
                let interlaced = (0..n).all(|i| b[i] < a[i] && a[i] < b[i + 1]);
                if !interlaced {
                    interlacing += 1.0;
                }
            }
        }
    }
    out.push(opts.check("quadrature.moments", "Gauss-Laguerre moment exactness", max_of(moments)));
    out.push(opts.check("quadrature.weight-sum", "weights sum to Gamma(alpha+1)", max_of(sums)));
    out.push(opts.check(
        "quadrature.interlacing",
        "nodes of consecutive orders interlace (count of violations)",
        interlacing,
    ));

    let mut reduction = Vec::new();
    let j_cap = opts.two_j_max.div_ceil(2);
    for two_j in 0..=opts.capped(12) {
        for a in SpinIndex::multiplet(two_j) {
            for b in SpinIndex::multiplet(two_j + 2).filter(|b| b.two_m() == a.two_m()) {
                let cap = j_cap.max(b.two_j().div_ceil(2));
                let plane = plane_inner(&a, &b, cap, min_angular_points(cap))?;
                let line = halfline_inner(&a, &b, a.two_m(), cap)?;
                reduction.push((plane.re - line).abs().max(plane.im.abs()));
                let plane = plane_inner(&a, &a, cap, min_angular_points(cap))?;
                let line = halfline_inner(&a, &a, a.two_m(), cap)?;
                reduction.push((plane.re - line).abs().max(plane.im.abs()));
            }
        }
    }
    out.push(opts.check(
        "quadrature.plane-vs-halfline",
        "plane inner product at equal m reduces to the half-line one",
        max_of(reduction),
    ));
    Ok(out)
}
