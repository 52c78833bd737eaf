use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use su2_plane::algebra::{normal_form, RewriteRuleSet};
use su2_plane::basis::{radial, Sector, SpinIndex};
use su2_plane::laguerre::{laguerre_eval, ExactPolynomial, LaguerreIndex};
use su2_plane::transform::{rotate, rotation_matrix, CoefficientBlock, RotationSpec};
use su2_plane::verify::random_free_expr;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laguerre_matches_the_exact_series(n in 0i64..=20, a in -6i64..=8, y in 0.0f64..30.0) {
        prop_assume!(n + a >= 0);
        let idx = LaguerreIndex::new(n, a).unwrap();
        let exact = ExactPolynomial::laguerre(n, a);
        let value = exact.eval_f64(y);
        let diff = (BigRational::from_float(laguerre_eval(idx, y)).unwrap() - &value).abs();
        // relative to the sum of term magnitudes, which bounds any honest rounding
        let size: f64 = exact
            .coefficients()
            .iter()
            .enumerate()
            .map(|(k, c)| c.abs().to_f64().unwrap() * y.powi(k as i32))
            .sum();
        prop_assert!(value.is_zero() || diff.to_f64().unwrap() <= 1e-13 * size.max(1.0));
    }

    #[test]
    fn radial_functions_decay(two_j in 0u32..=16, k in 0u32..=16) {
        let k = k % (two_j + 1);
        let s = SpinIndex::new(two_j as i64, two_j as i64 - 2 * k as i64).unwrap();
        prop_assert!(radial(s, 400.0).unwrap().abs() < 1e-60);
    }

    #[test]
    fn rotation_matrices_are_unitary(two_j in 0u32..=12, a in -7.0f64..7.0, b in -7.0f64..7.0, c in -7.0f64..7.0) {
        let d = rotation_matrix(two_j, &RotationSpec::new(a, b, c).unwrap()).unwrap();
        let n = d.nrows();
        let gap = (d.adjoint() * &d - nalgebra::DMatrix::<Complex64>::identity(n, n)).norm();
        prop_assert!(gap < 1e-10);
    }

    #[test]
    fn rotations_compose(seed in 0u64..1000, a in -4.0f64..4.0, b in -4.0f64..4.0, c in -4.0f64..4.0) {
        let block = CoefficientBlock::random(Sector::HalfInteger, 5, seed);
        let r1 = RotationSpec::new(a, b, c).unwrap();
        let r2 = RotationSpec::new(c, a, b).unwrap();
        let twice = rotate(&rotate(&block, &r1).unwrap(), &r2).unwrap();
        let once = rotate(&block, &r2.after(&r1)).unwrap();
        prop_assert!(twice.max_abs_diff(&once) < 1e-10);
    }

    #[test]
    fn blocks_survive_json(seed in 0u64..1000, two_j_max in 0u32..=9) {
        let sector = if two_j_max % 2 == 0 { Sector::Integer } else { Sector::HalfInteger };
        let block = CoefficientBlock::random(sector, two_j_max, seed);
        let back = CoefficientBlock::from_json_str(&block.to_json_string()).unwrap();
        prop_assert_eq!(back, block);
    }

    #[test]
    fn normal_form_is_idempotent_and_linear(seed in 0u64..10_000) {
        let rules = RewriteRuleSet::standard();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_free_expr(&mut rng);
        let b = random_free_expr(&mut rng);
        let na = normal_form(&a, &rules).unwrap();
        let nb = normal_form(&b, &rules).unwrap();
        prop_assert_eq!(normal_form(&na.to_free(), &rules).unwrap(), na.clone());
        prop_assert_eq!(normal_form(&(&a + &b), &rules).unwrap(), &na + &nb);
    }
}
