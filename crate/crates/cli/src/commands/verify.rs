//! Self-test battery over the closed forms, residuals and oracles.

use std::f64::consts::PI;

use clap::Args;
use hooke_core::hooke::{
    build_wavefunction, log_grid, quantization_polynomial, radial_series_operator, recurrence, solve_frequencies,
    verify_branch, CenterOfMassState, HookeParams, QuantizationBranch,
};
use hooke_core::observables::{
    closed_form_density, entropy_scan, entropy_term, fit_cm_width, linear_grid, total_entropy, AngularMethod,
    ClosedFormCase, PairCorrelation, QuadratureDensity,
};
use hooke_core::poly::Polynomial;
use hooke_core::qes::{
    map_from_hooke, map_to_hooke, qes_condition, qes_exact_energies, qes_series, variational_state, MappedState,
    Picture, SexticParams,
};
use hooke_core::series::series_solve;
use hooke_core::special::{i0e, i1e};
use num_rational::{BigRational, Rational64};
use num_traits::Zero;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::output::to_json;

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Print a JSON summary instead of one line per check.
    #[arg(long)]
    pub json: bool,
    /// Relative shift applied to the trap frequency in the residual check.
    #[arg(long, hide = true, default_value_t = 0.0, allow_hyphen_values = true)]
    pub perturb_omega: f64,
}

#[derive(Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<&'static str>,
    pub results: Vec<CheckResult>,
}

type Outcome = hooke_core::Result<(bool, String)>;

struct Check {
    name: &'static str,
    run: Box<dyn Fn() -> Outcome>,
}

fn check(name: &'static str, run: impl Fn() -> Outcome + 'static) -> Check {
    Check { name, run: Box::new(run) }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn battery(perturb_omega: f64) -> Vec<Check> {
    let mut v = vec![
        check("closed_form_n2", || {
            let mut ok = true;
            for m in 0..=8i64 {
                for z in [1i64, -1, 3, -3] {
                    let b = solve_frequencies(2, m, z as f64)?;
                    ok &= b.len() == 1 && b[0].omega_exact() == Some(q(z * z) / q(2 * (2 * m + 1)));
                }
            }
            Ok((ok, "ω̃ = Z²/(2(2m+1)), m = 0..8, Z = ±1, ±3".into()))
        }),
        check("closed_form_n3", || {
            let mut ok = true;
            for m in 0..=8i64 {
                for z in [1i64, -1, 3, -3] {
                    let b = solve_frequencies(3, m, z as f64)?;
                    ok &= !b.is_empty() && b.iter().all(|b| b.omega_exact() == Some(q(z * z) / q(4 * (4 * m + 3))));
                }
            }
            Ok((ok, "ω̃ = Z²/(4(4m+3)), m = 0..8, Z = ±1, ±3".into()))
        }),
        check("closed_form_n4", || {
            let mut worst = 0.0f64;
            for m in 0..=8i64 {
                for z in [1.0f64, -1.0, 3.0, -3.0] {
                    let mf = m as f64;
                    let root = (73.0 + 128.0 * mf + 64.0 * mf * mf).sqrt();
                    let den = 18.0 * (4.0 * mf * mf + 8.0 * mf + 3.0);
                    let hi = z * z * (10.0 * (1.0 + mf) + root) / den;
                    let lo = z * z * (10.0 * (1.0 + mf) - root) / den;
                    let got = solve_frequencies(4, m, z)?;
                    if got.len() != 2 {
                        return Ok((false, format!("m={m} Z={z}: {} roots", got.len())));
                    }
                    worst = worst.max(((got[0].omega - hi) / hi).abs()).max(((got[1].omega - lo) / lo).abs());
                }
            }
            Ok((worst <= 1e-12, format!("max relative error {worst:.3e}")))
        }),
        check("eigen_residual", move || {
            let grid = log_grid(1e-3, 12.0, 600);
            let mut worst = 0.0f64;
            for n in 2..=6 {
                for m in 0..=3i64 {
                    for z in [1.0, -1.0] {
                        for b in solve_frequencies(n, m, z).unwrap_or_default() {
                            let wf = build_wavefunction(&b)?;
                            let mut params = HookeParams::for_branch(&b);
                            params.omega0 *= 1.0 + perturb_omega;
                            worst = worst.max(verify_branch(&wf, &params, &grid));
                        }
                    }
                }
            }
            Ok((worst <= 1e-9, format!("max residual {worst:.3e} over n ≤ 6, m ≤ 3, Z = ±1")))
        }),
        check("eigenvalue_n2m0Zp1", || {
            let b = solve_frequencies(2, 0, 1.0)?.remove(0);
            Ok(((b.eps_rel - 1.0).abs() <= 1e-10, format!("ε_rel = {}", b.eps_rel)))
        }),
        check("eigenvalue_rule", || {
            let mut ok = true;
            for n in 2..=6 {
                for m in 0..=3i64 {
                    for b in solve_frequencies(n, m, 1.0).unwrap_or_default() {
                        ok &= (b.eps_rel - b.omega * (n + m as usize) as f64).abs() <= 1e-14 * b.eps_rel;
                    }
                }
            }
            Ok((ok, "ε_rel = ω̃(n + |m|)".into()))
        }),
        check("engine_recurrence", || {
            let tuples = [
                (0, 4, 3, 1, -7, 2),
                (1, 4, -5, 2, 11, 3),
                (2, 4, 7, 3, 0, 1),
                (3, 4, -1, 1, 5, 4),
                (4, 4, 12, 5, -30, 1),
                (5, 4, 2, 1, 9, 2),
                (6, 4, -9, 4, 13, 3),
                (8, 4, 1, 3, -2, 1),
                (9, 4, -4, 1, 26, 4),
                (12, 4, 6, 5, -17, 2),
                (-3, 4, 10, 1, 3, 1),
                (-6, 4, -11, 2, 21, 4),
            ];
            for (mn, md, kn, kd, en, ed) in tuples {
                let m = Rational64::new(mn, md);
                let kappa = BigRational::new(kn.into(), kd.into());
                let e = BigRational::new(en.into(), ed.into());
                let (f, p) = radial_series_operator(&kappa, &e, m);
                let s = series_solve(&f, &p, &BigRational::zero(), 59)?;
                let r = recurrence(&kappa, &e, m, 60);
                if r.iter().enumerate().any(|(j, rj)| s.coefficient_at(j as i64) != *rj) {
                    return Ok((false, format!("m={m} κ={kappa} Ẽ={e}")));
                }
            }
            Ok((true, "12 tuples, 60 coefficients, exact".into()))
        }),
        check("termination_divisibility", || {
            for n in 2..=6usize {
                for k in 0..=8i64 {
                    let m = Rational64::new(k, 4);
                    let qp = quantization_polynomial(n, m);
                    let e = q(2 * (n as i64 - 1));
                    let a = recurrence(&Polynomial::<BigRational>::x(), &e, m, n + 6);
                    if a.iter().skip(n).any(|aj| !aj.div_rem(&qp).1.is_zero()) {
                        return Ok((false, format!("n={n} m={m}")));
                    }
                }
            }
            Ok((true, "coefficients past the cut divisible by the quantization polynomial".into()))
        }),
        check("node_rule_n2", || {
            for m in 0..6i64 {
                for z in [1.0, -1.0, 3.0, -3.0] {
                    for b in solve_frequencies(2, m, z)? {
                        if build_wavefunction(&b)?.node_count() != usize::from(z < 0.0) {
                            return Ok((false, format!("m={m} Z={z}")));
                        }
                    }
                }
            }
            Ok((true, "attractive n = 2 states carry one node".into()))
        }),
    ];
    for case in ClosedFormCase::ALL {
        v.push(check(density_name(case), move || {
            let grid = linear_grid(0.0, 8.0, 41);
            let (n, m, z) = case.matching_state();
            let b = solve_frequencies(n, m, z)?.remove(0);
            let wf = build_wavefunction(&b)?;
            let cf = closed_form_density(case, &grid)?;
            let fit = fit_cm_width(&wf, &grid, &cf.values, 0.05 * b.omega, 20.0 * b.omega)?;
            Ok((
                fit.max_relative_deviation <= 1e-5,
                format!("β = {:.8}, deviation {:.3e}", fit.beta, fit.max_relative_deviation),
            ))
        }));
    }
    v.push(check("density_normalization", || {
        let mut worst = 0.0f64;
        for case in ClosedFormCase::ALL {
            let (n, m, z) = case.matching_state();
            let b = solve_frequencies(n, m, z)?.remove(0);
            let qd = QuadratureDensity::new(
                build_wavefunction(&b)?,
                CenterOfMassState::new(b.omega)?,
                AngularMethod::Bessel,
            );
            worst = worst.max((qd.integral()? - 2.0).abs());
        }
        Ok((worst <= 1e-6, format!("max |∫n − 2| = {worst:.3e}")))
    }));
    for (name, w) in [("entropy_oscillator_0.1", 0.1), ("entropy_oscillator_0.5", 0.5), ("entropy_oscillator_2", 2.0)] {
        v.push(check(name, move || {
            let wf = build_wavefunction(&QuantizationBranch::oscillator(1, 0.into(), w)?)?;
            let s = total_entropy(&wf)?;
            let expect = 1.0 + (PI / w).ln();
            Ok(((s - expect).abs() <= 1e-8, format!("S = {s}, 1 + ln(π/ω̃) = {expect}")))
        }));
    }
    v.push(check("entropy_scan_monotone", || {
        let ms: Vec<Rational64> = (0..=4).map(Rational64::from).collect();
        let rows = entropy_scan(3, &ms, &[1.0, -1.0])?;
        let curve = |z: f64| {
            let mut c: Vec<_> = rows.iter().filter(|r| r.z == z).collect();
            c.sort_by_key(|r| r.m);
            c.iter().map(|r| r.entropy).collect::<Vec<_>>()
        };
        let (att, rep) = (curve(-1.0), curve(1.0));
        let up = |c: &[f64]| c.len() == 5 && c.windows(2).all(|w| w[1] > w[0]);
        Ok((up(&att) && up(&rep), "n = 3, m = 0..4, both signs of Z".into()))
    }));
    v.push(check("entropy_scan_ordering", || {
        let ms: Vec<Rational64> = (0..=4).map(Rational64::from).collect();
        let rows = entropy_scan(3, &ms, &[1.0, -1.0])?;
        let at = |m: i64, z: f64| rows.iter().find(|r| r.m == m.into() && r.z == z).map(|r| r.entropy);
        let ok = (0..=4).all(|m| matches!((at(m, -1.0), at(m, 1.0)), (Some(a), Some(r)) if a > r));
        Ok((ok, "attractive above repulsive at every m".into()))
    }));
    v.push(check("entropy_origin_n3m0Zm1", || {
        let b = solve_frequencies(3, 0, -1.0)?.remove(0);
        let s = entropy_term(PairCorrelation::new(build_wavefunction(&b)?).eval(0.0));
        Ok((s > 0.0, format!("S_G(0) = {s}")))
    }));
    v.push(check("entropy_origin_vanishes", || {
        for n in 2..=4 {
            for m in 1..=3i64 {
                for b in solve_frequencies(n, m, 1.0)? {
                    let s = entropy_term(PairCorrelation::new(build_wavefunction(&b)?).eval(0.0));
                    if s != 0.0 {
                        return Ok((false, format!("n={n} m={m}: {s}")));
                    }
                }
            }
        }
        Ok((true, "S_G(0) = 0 for m ≥ 1".into()))
    }));
    v.push(check("qes_round_trip", || {
        let mut worst = 0.0f64;
        for (alpha, gamma, m, e) in [(-5.0, 1.0, 0.0, 3.0), (-13.5, 2.25, 1.0, -1.0), (4.0, 0.3, 2.5, 7.5)] {
            let p = SexticParams::new(alpha, gamma, m)?;
            let (back, e2) = map_to_hooke(&p, e).to_sextic();
            for (a, b) in [(back.alpha, alpha), (back.gamma, gamma), (back.m, m), (e2, e)] {
                worst = worst.max((a - b).abs() / b.abs().max(1.0));
            }
        }
        Ok((worst <= 1e-14, format!("max error {worst:.3e}")))
    }));
    v.push(check("qes_condition_residual", || {
        let mut worst = 0.0f64;
        for k in 0..4i64 {
            for n in 2..=4 {
                for b in solve_frequencies(n, Rational64::new(2 * k + 1, 4), 1.0)? {
                    let img = map_from_hooke(&b);
                    worst = worst.max(img.params.condition_residual(img.degree));
                }
            }
        }
        Ok((worst < 1e-12, format!("max residual {worst:.3e}")))
    }));
    v.push(check("qes_mapped_residual", || {
        let grid = log_grid(1e-3, 12.0, 400);
        let mut worst = 0.0f64;
        for k in 0..3i64 {
            for n in 2..=4 {
                for b in solve_frequencies(n, Rational64::new(2 * k + 1, 4), -1.0)? {
                    let img = map_from_hooke(&b);
                    let u = qes_series(img.energy, &img.params, img.degree + 4)?;
                    worst = worst.max(MappedState { params: img.params, u }.hooke_residual(img.energy, &grid));
                }
            }
        }
        Ok((worst <= 1e-9, format!("max residual {worst:.3e}")))
    }));
    v.push(check("variational_exact_levels", || {
        let (mut de, mut res) = (0.0f64, 0.0f64);
        for (n, m, gamma) in [(2usize, 0i64, 1.0), (4, 1, 2.0)] {
            let p = SexticParams::new(qes_condition(n, m as f64, gamma), gamma, m as f64)?;
            let levels = qes_exact_energies(n, m.into(), gamma)?;
            for (k, &e) in levels.iter().enumerate() {
                let s = variational_state(Picture::Qes(p), k, n + 8, (e - 0.25, e + 0.25))?;
                de = de.max((s.e_star - e).abs());
                res = res.max(s.residual_norm);
            }
        }
        Ok((de <= 1e-8 && res <= 1e-12, format!("max |ΔE| {de:.3e}, max residual {res:.3e}")))
    }));
    v.push(check("bessel_series", || {
        let series = |order: i32, x: f64| {
            let h = x / 2.0;
            let mut term = h.powi(order);
            let mut sum = term;
            for k in 1..30 {
                term *= h * h / (k as f64 * (k + order) as f64);
                sum += term;
            }
            sum
        };
        let mut worst = 0.0f64;
        for x in [0.5f64, 1.0, 5.0, 20.0] {
            for (order, scaled) in [(0, i0e(x)), (1, i1e(x))] {
                let exact = series(order, x);
                worst = worst.max((scaled * x.exp() - exact).abs() / exact);
            }
        }
        Ok((worst <= 1e-10, format!("max relative error {worst:.3e}")))
    }));
    v.push(check("bessel_derivative", || {
        let h = 1e-5;
        let mut worst = 0.0f64;
        for x in [0.5f64, 1.0, 5.0, 20.0] {
            let i0 = |t: f64| i0e(t) * t.exp();
            let d = (i0(x + h) - i0(x - h)) / (2.0 * h);
            let i1 = i1e(x) * x.exp();
            worst = worst.max((d - i1).abs() / i1);
        }
        Ok((worst <= 1e-6, format!("max relative error {worst:.3e}")))
    }));
    v
}

fn density_name(case: ClosedFormCase) -> &'static str {
    match case {
        ClosedFormCase::N2M0Zp1 => "density_oracle_n2m0Zp1",
        ClosedFormCase::N2M0Zm1 => "density_oracle_n2m0Zm1",
        ClosedFormCase::N2M1Zp1 => "density_oracle_n2m1Zp1",
        ClosedFormCase::N3M0Zp1 => "density_oracle_n3m0Zp1",
    }
}

pub fn summarize(perturb_omega: f64) -> Summary {
    let results: Vec<CheckResult> = battery(perturb_omega)
        .into_iter()
        .map(|c| match (c.run)() {
            Ok((passed, detail)) => CheckResult { name: c.name, passed, detail },
            Err(e) => CheckResult { name: c.name, passed: false, detail: e.to_string() },
        })
        .collect();
    let passed = results.iter().filter(|r| r.passed).count();
    Summary {
        checks: results.len(),
        passed,
        failed: results.len() - passed,
        first_failure: results.iter().find(|r| !r.passed).map(|r| r.name),
        results,
    }
}

pub fn run(args: &VerifyArgs) -> CliResult<()> {
    let s = summarize(args.perturb_omega);
    if args.json {
        print!("{}", to_json(&s));
    } else {
        for r in &s.results {
            println!("{} {:<28} {}", if r.passed { "ok  " } else { "FAIL" }, r.name, r.detail);
        }
        println!("{} of {} checks passed", s.passed, s.checks);
    }
    match s.first_failure {
        Some(name) => Err(CliError::Verify(name.to_string())),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_is_large_enough() {
        assert!(battery(0.0).len() >= 20);
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = battery(0.0).iter().map(|c| c.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), battery(0.0).len());
    }
}
