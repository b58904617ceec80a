use hooke_core::series::{invert_euler, series_solve, EulerPolynomial, MonomialOperator, MonomialTerm, PowerSeries};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

/// `D(D + 2m)` with `m` a non-negative multiple of 1/4.
fn euler() -> impl Strategy<Value = EulerPolynomial<BigRational>> {
    (0i64..=16).prop_map(|k| EulerPolynomial::hooke(q(k, 4)))
}

/// Terms raising the degree by 1 to 4, derivative order up to 2.
fn operator() -> impl Strategy<Value = MonomialOperator<BigRational>> {
    prop::collection::vec((rational(), 1i32..=4, 0u32..=2), 1..4).prop_map(|ts| {
        MonomialOperator::new(
            ts.into_iter()
                .map(|(c, lift, order)| MonomialTerm::new(c, lift + order as i32, order))
                .collect(),
        )
    })
}

fn series(base: i64) -> impl Strategy<Value = PowerSeries<BigRational>> {
    prop::collection::vec(rational(), 1..12).prop_map(move |c| PowerSeries::new(q(base, 1), c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn annihilated_through_truncation_order(f in euler(), p in operator(), order in 2usize..24) {
        let y = series_solve(&f, &p, &BigRational::zero(), order).unwrap();
        let image = f.apply(&y) + p.apply(&y);
        for k in 0..=order as i64 {
            prop_assert!(image.coefficient_at(k).is_zero(), "exponent {k}");
        }
        prop_assert_eq!(y.coefficient_at(0), q(1, 1));
    }

    #[test]
    fn operator_action_is_linear(p in operator(), y1 in series(0), y2 in series(0), a in rational(), b in rational()) {
        let lhs = p.apply(&(y1.scale(&a) + y2.scale(&b)));
        let rhs = p.apply(&y1).scale(&a) + p.apply(&y2).scale(&b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_inverse_is_two_sided(f in euler(), y in series(1)) {
        prop_assert_eq!(invert_euler(&f, &f.apply(&y)).unwrap(), y.clone());
        prop_assert_eq!(f.apply(&invert_euler(&f, &y).unwrap()), y);
    }

    #[test]
    fn extending_truncation_keeps_prefix(f in euler(), p in operator(), order in 2usize..16, extra in 1usize..10) {
        let short = series_solve(&f, &p, &BigRational::zero(), order).unwrap();
        let long = series_solve(&f, &p, &BigRational::zero(), order + extra).unwrap();
        for k in 0..=order as i64 {
            prop_assert_eq!(short.coefficient_at(k), long.coefficient_at(k));
        }
    }

    #[test]
    fn float_engine_tracks_exact(f in euler(), p in operator(), order in 2usize..14) {
        let exact = series_solve(&f, &p, &BigRational::zero(), order).unwrap();
        let ff = EulerPolynomial::new(f.poly().map(|c| num_traits::ToPrimitive::to_f64(c).unwrap()));
        let pf = p.map(|c| num_traits::ToPrimitive::to_f64(c).unwrap());
        let approx = series_solve(&ff, &pf, &BigRational::zero(), order).unwrap();
        for k in 0..=order as i64 {
            let e = num_traits::ToPrimitive::to_f64(&exact.coefficient_at(k)).unwrap();
            let a = approx.coefficient_at(k);
            prop_assert!((e - a).abs() <= 1e-10 * e.abs().max(1e-300) + 1e-300, "{k}: {e} vs {a}");
        }
    }
}
