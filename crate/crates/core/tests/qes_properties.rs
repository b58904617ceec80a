use hooke_core::hooke::{log_grid, solve_frequencies};
use hooke_core::qes::{
    map_from_hooke, map_to_hooke, qes_condition, qes_exact_energies, qes_series, MappedState, Picture, SexticParams,
    Trial,
};
use num_rational::Rational64;
use proptest::prelude::*;

fn sextic() -> impl Strategy<Value = SexticParams> {
    (-20.0f64..20.0, 0.05f64..10.0, 0u32..6).prop_map(|(a, g, m)| SexticParams::new(a, g, m as f64).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn odd_powers_vanish(p in sextic(), e in -10.0f64..10.0, order in 2usize..30) {
        let u = qes_series(e, &p, order).unwrap();
        prop_assert!(u.coeffs().iter().skip(1).step_by(2).all(|c| *c == 0.0));
    }

    #[test]
    fn dictionary_round_trip(p in sextic(), e in -10.0f64..10.0) {
        let (back, e2) = map_to_hooke(&p, e).to_sextic();
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-14 * a.abs().max(1.0);
        prop_assert!(close(back.alpha, p.alpha) && close(back.gamma, p.gamma) && close(back.m, p.m) && close(e2, e));
    }

    #[test]
    fn residual_functional_is_non_negative(p in sextic(), e in -6.0f64..6.0) {
        let t = Trial::new(Picture::Qes(p), e, 12).unwrap();
        prop_assert!(t.residual_functional().unwrap() >= 0.0);
    }
}

/// Hooke branches at `m̃ = (2k + 1)/4` land on the polynomial-sector
/// condition, and their sextic images solve the Hooke equation back.
#[test]
fn hooke_branches_satisfy_sextic_condition() {
    let grid = log_grid(1e-3, 12.0, 400);
    for k in 0..4i64 {
        let mt = Rational64::new(2 * k + 1, 4);
        for n in 2..=4 {
            for z in [1.0, -1.0] {
                for b in solve_frequencies(n, mt, z).unwrap_or_default() {
                    let img = map_from_hooke(&b);
                    assert!(img.integer_m && img.params.m == k as f64);
                    let r = img.params.condition_residual(img.degree);
                    assert!(r < 1e-12, "n={n} k={k} Z={z}: {r}");
                    assert!((img.params.alpha - qes_condition(img.degree, k as f64, img.params.gamma)).abs() < 1e-12);
                    let u = qes_series(img.energy, &img.params, img.degree + 4).unwrap();
                    let state = MappedState { params: img.params, u };
                    assert!(state.hooke_residual(img.energy, &grid) <= 1e-9);
                }
            }
        }
    }
}

#[test]
fn exact_energies_are_residual_zeros() {
    for (n, m, gamma) in [(2usize, 0i64, 1.0), (4, 1, 2.0), (6, 0, 0.5)] {
        let p = SexticParams::new(qes_condition(n, m as f64, gamma), gamma, m as f64).unwrap();
        for e in qes_exact_energies(n, m.into(), gamma).unwrap() {
            let t = Trial::new(Picture::Qes(p), e, n + 8).unwrap();
            assert!(t.residual_functional().unwrap() < 1e-20, "n={n} E={e}");
            let off = Trial::new(Picture::Qes(p), e + 0.05, n + 8).unwrap();
            assert!(off.residual_functional().unwrap() > 1e-6);
        }
    }
}
