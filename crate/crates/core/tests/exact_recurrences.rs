//! The differential recurrences as exact polynomial identities.

use num_bigint::BigInt;
use num_rational::BigRational;
use su2_plane::laguerre::ExactPolynomial;

fn c(num: i64, den: i64) -> ExactPolynomial {
    ExactPolynomial::constant(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

fn lag(n: i64, a: i64) -> ExactPolynomial {
    ExactPolynomial::laguerre(n, a)
}

fn admissible() -> impl Iterator<Item = (i64, i64)> {
    (0..=12).flat_map(|n| (-6..=6).map(move |a| (n, a))).filter(|&(n, a)| n + a >= 0)
}

#[test]
fn elementary_relations_hold_exactly() {
    let y = ExactPolynomial::y();
    for (n, a) in admissible() {
        let l = lag(n, a);
        let dl = l.derivative();
        // y L' + (n + 1 + a - y) L = (n + 1) L_{n+1}
        let lhs = &(&y * &dl) + &(&(&c(n + 1 + a, 1) - &y) * &l);
        assert_eq!(lhs, &c(n + 1, 1) * &lag(n + 1, a), "raise degree ({n},{a})");
        // -y L' + n L = (n + a) L_{n-1}
        let lhs = &(&c(n, 1) * &l) - &(&y * &dl);
        assert_eq!(lhs, &c(n + a, 1) * &lag(n - 1, a), "lower degree ({n},{a})");
        // -L' + L = L^{a+1}
        assert_eq!(&l - &dl, lag(n, a + 1), "raise order ({n},{a})");
        if n + a > 0 {
            // y L' + a L = (n + a) L^{a-1}
            let lhs = &(&y * &dl) + &(&c(a, 1) * &l);
            assert_eq!(lhs, &c(n + a, 1) * &lag(n, a - 1), "lower order ({n},{a})");
        }
    }
}

/// `[D + n/(a+1)] L_n^a` divided by `L_(n-1)^(a+2)` is the polynomial `-y/(a+1)`,
/// not the constant `-a/(a+1)`.
#[test]
fn first_composed_relation_carries_a_factor_of_y() {
    let y = ExactPolynomial::y();
    for (n, a) in admissible().filter(|&(n, a)| n >= 1 && a != -1) {
        let l = lag(n, a);
        let lhs = &l.derivative() + &(&c(n, a + 1) * &l);
        let target = lag(n - 1, a + 2);
        assert_eq!(lhs, &(&c(-1, a + 1) * &y) * &target, "({n},{a})");
        assert_ne!(lhs, &c(-a, a + 1) * &target, "printed form holds unexpectedly at ({n},{a})");
    }
}

#[test]
fn second_composed_relation_has_coefficient_n_plus_one_times_n_plus_alpha() {
    let y = ExactPolynomial::y();
    for (n, a) in admissible().filter(|&(n, a)| n + 1 + a - 2 >= 0) {
        let l = lag(n, a);
        let lhs = &(&(&c(a - 1, 1) * &y) * &l.derivative())
            + &(&(&c(a * (a - 1), 1) - &(&c(n + a, 1) * &y)) * &l);
        assert_eq!(lhs, &c((n + 1) * (n + a), 1) * &lag(n + 1, a - 2), "({n},{a})");
    }
}

#[test]
fn second_composed_relation_as_printed_holds_only_by_coincidence() {
    let y = ExactPolynomial::y();
    let mut holds = Vec::new();
    for (n, a) in admissible().filter(|&(n, a)| n + a > 0) {
        let l = lag(n, a);
        // y(a-1)L' - y(n + 3a/2)L + a(a-1)L against (j + a)(a + 1) L_{n+1}^{a-2}, j = n + a/2
        let lhs = &(&(&c(a - 1, 1) * &y) * &l.derivative())
            + &(&(&c(a * (a - 1), 1) - &(&c(2 * n + 3 * a, 2) * &y)) * &l);
        let rhs = &c((2 * n + 3 * a) * (a + 1), 2) * &lag(n + 1, a - 2);
        if lhs == rhs {
            holds.push((n, a));
        }
    }
    // at alpha = 1 both sides are multiples of y L_n^1 and agree only when n = 1
    assert_eq!(holds, [(1, 1)]);
}
