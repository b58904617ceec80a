//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use hooke_core::hooke::{
    build_wavefunction, log_grid, radial_series_operator, recurrence, solve_frequencies, verify_branch, HookeParams,
};
use hooke_core::observables::{
    closed_form_density, entropy_scan, entropy_term, fit_cm_width, linear_grid, max_relative_deviation,
    total_entropy, AngularMethod, ClosedFormCase, PairCorrelation, QuadratureDensity,
};
use hooke_core::qes::{
    map_from_hooke, map_to_hooke, qes_condition, qes_exact_energies, qes_series, variational_state, MappedState,
    Picture, SexticParams,
};
use hooke_core::series::series_solve;
use hooke_core::special::{i0e, i1e};
use hooke_core::hooke::{CenterOfMassState, QuantizationBranch};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Verdict {
    passed: bool,
    detail: String,
    info: Vec<String>,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict { passed, detail: detail.into(), info: Vec::new() }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn closed_form_frequencies() -> Verdict {
    let mut bad = Vec::new();
    let mut worst = 0.0f64;
    for m in 0..=8i64 {
        for z in [1i64, -1, 3, -3] {
            let zz = q(z * z, 1);
            let b2 = solve_frequencies(2, m, z as f64).unwrap();
            if b2.len() != 1 || b2[0].omega_exact() != Some(zz.clone() / q(2 * (2 * m + 1), 1)) {
                bad.push(format!("n=2 m={m} Z={z}"));
            }
            let b3 = solve_frequencies(3, m, z as f64).unwrap();
            if b3.is_empty() || b3.iter().any(|b| b.omega_exact() != Some(zz.clone() / q(4 * (4 * m + 3), 1))) {
                bad.push(format!("n=3 m={m} Z={z}"));
            }
            let (mf, zf) = (m as f64, z as f64);
            let root = (73.0 + 128.0 * mf + 64.0 * mf * mf).sqrt();
            let den = 18.0 * (4.0 * mf * mf + 8.0 * mf + 3.0);
            let expect = [zf * zf * (10.0 * (1.0 + mf) + root) / den, zf * zf * (10.0 * (1.0 + mf) - root) / den];
            let got = solve_frequencies(4, m, zf).unwrap();
            if got.len() != 2 {
                bad.push(format!("n=4 m={m} Z={z}: {} roots", got.len()));
                continue;
            }
            for (g, e) in got.iter().zip(expect) {
                worst = worst.max((g.omega - e).abs() / e.abs().max(1.0));
            }
        }
    }
    let passed = bad.is_empty() && worst <= 1e-12;
    verdict(passed, format!("n=2, 3 exact for m=0..8, Z=±1, ±3; n=4 max error {worst:.2e}; mismatches {bad:?}"))
}

fn eigen_residuals() -> Verdict {
    let grid = log_grid(1e-3, 12.0, 600);
    let (mut worst, mut rule, mut count) = (0.0f64, true, 0);
    for n in 2..=6 {
        for m in 0..=3i64 {
            for z in [1.0, -1.0] {
                for b in solve_frequencies(n, m, z).unwrap_or_default() {
                    let wf = build_wavefunction(&b).unwrap();
                    worst = worst.max(verify_branch(&wf, &HookeParams::for_branch(&b), &grid));
                    rule &= (b.eps_rel - b.omega * (n as f64 + m as f64)).abs() <= 1e-14 * b.eps_rel;
                    count += 1;
                }
            }
        }
    }
    let ground = solve_frequencies(2, 0, 1.0).unwrap()[0].eps_rel;
    verdict(
        worst <= 1e-9 && rule && (ground - 1.0).abs() <= 1e-10,
        format!("{count} branches, max residual {worst:.2e}; n=2 m=0 Z=1 gives ε_rel = {ground}"),
    )
}

fn engine_recurrence() -> Verdict {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut tuples = Vec::new();
    for _ in 0..12 {
        let m = Rational64::new(rng.gen_range(-12..=12), 4);
        let kappa = q(rng.gen_range(-12..=12), rng.gen_range(1..=5));
        let e = q(rng.gen_range(-30..=30), rng.gen_range(1..=4));
        let (f, p) = radial_series_operator(&kappa, &e, m);
        let s = series_solve(&f, &p, &BigRational::zero(), 59).unwrap();
        let r = recurrence(&kappa, &e, m, 60);
        let same = r.iter().enumerate().all(|(j, rj)| s.coefficient_at(j as i64) == *rj);
        tuples.push((format!("(m={m}, κ={kappa}, Ẽ={e})"), same));
    }
    let failed: Vec<_> = tuples.iter().filter(|t| !t.1).map(|t| t.0.clone()).collect();
    verdict(failed.is_empty(), format!("12 seeded tuples, 60 exact coefficients; disagreeing {failed:?}"))
}

fn density_oracle() -> Verdict {
    let fit_grid = linear_grid(0.0, 8.0, 41);
    let grid = linear_grid(0.0, 8.0, 161);
    let mut passed = true;
    let mut parts = Vec::new();
    for case in ClosedFormCase::ALL {
        let (n, m, z) = case.matching_state();
        let b = solve_frequencies(n, m, z).unwrap().remove(0);
        let wf = build_wavefunction(&b).unwrap();
        let target = closed_form_density(case, &fit_grid).unwrap();
        let fit = fit_cm_width(&wf, &fit_grid, &target.values, 0.05 * b.omega, 20.0 * b.omega).unwrap();
        let qd = QuadratureDensity::new(wf, CenterOfMassState::new(fit.beta).unwrap(), AngularMethod::Bessel);
        let quad = qd.profile(&grid).unwrap();
        let cf = closed_form_density(case, &grid).unwrap();
        let dev = max_relative_deviation(&quad.values, &cf.values, 1e-8);
        let norm = qd.integral().unwrap();
        passed &= dev <= 1e-5 && (norm - 2.0).abs() <= 1e-6;
        parts.push(format!("{} β={:.6} dev={dev:.1e} ∫={norm:.9}", case.id(), fit.beta));
    }
    verdict(passed, parts.join("; "))
}

fn oscillator_entropy() -> Verdict {
    let mut worst = 0.0f64;
    for w in [0.1, 0.5, 2.0] {
        let wf = build_wavefunction(&QuantizationBranch::oscillator(1, 0.into(), w).unwrap()).unwrap();
        worst = worst.max((total_entropy(&wf).unwrap() - 1.0 - (PI / w).ln()).abs());
    }
    verdict(worst <= 1e-8, format!("ω̃ ∈ {{0.1, 0.5, 2}}, max |S − 1 − ln(π/ω̃)| = {worst:.2e}"))
}

fn entropy_trends() -> Verdict {
    let ms: Vec<Rational64> = (0..=4).map(Rational64::from).collect();
    let rows = entropy_scan(3, &ms, &[1.0, -1.0]).unwrap();
    let curve = |z: f64| {
        let mut c: Vec<_> = rows.iter().filter(|r| r.z == z).collect();
        c.sort_by_key(|r| r.m);
        c.iter().map(|r| (r.omega, r.entropy)).collect::<Vec<_>>()
    };
    let (att, rep) = (curve(-1.0), curve(1.0));
    let rising = |c: &[(f64, f64)]| c.len() == 5 && c.windows(2).all(|w| w[1].1 > w[0].1 && w[1].0 < w[0].0);
    let above = att.iter().zip(&rep).all(|(a, r)| a.1 > r.1);
    let fmt = |c: &[(f64, f64)]| c.iter().map(|p| format!("{:.4}", p.1)).collect::<Vec<_>>().join(" ");
    verdict(
        rising(&att) && rising(&rep) && above,
        format!("attractive [{}], repulsive [{}]", fmt(&att), fmt(&rep)),
    )
}

fn origin_signs() -> Verdict {
    let at_origin = |n: usize, m: i64, z: f64| {
        let b = solve_frequencies(n, m, z).unwrap().remove(0);
        let g = PairCorrelation::new(build_wavefunction(&b).unwrap()).eval(0.0);
        (g, entropy_term(g))
    };
    let (g2, s2) = at_origin(2, 0, -1.0);
    let (g3, s3) = at_origin(3, 0, -1.0);
    let mut vanish = true;
    for n in 2..=4 {
        for m in 1..=3 {
            for z in [1.0, -1.0] {
                for b in solve_frequencies(n, m, z).unwrap() {
                    vanish &= entropy_term(PairCorrelation::new(build_wavefunction(&b).unwrap()).eval(0.0)) == 0.0;
                }
            }
        }
    }
    let mut v = verdict(
        s2 < 0.0 && s3 > 0.0 && vanish,
        format!("S_G(0) = {s2:.4} (n=2 m=0 Z=-1, want < 0), {s3:.4} (n=3 m=0 Z=-1, want > 0), m ≥ 1 zero: {vanish}"),
    );
    let b = solve_frequencies(2, 0, -1.0).unwrap().remove(0);
    let u2_over_r = 2.0 * PI * g2;
    v.info.push(format!(
        "G = u²/(2πr) normalised to ∫G d²r = 1 gives G(0) = {g2:.4} < 1 at ω̃ = {}; the dip needs G(0) > 1, \
         e.g. u²/r = {u2_over_r:.4}; n=3 has G(0) = {g3:.4}",
        b.omega
    ));
    v
}

fn qes_dictionary() -> Verdict {
    let mut rng = StdRng::seed_from_u64(26);
    let mut trip = 0.0f64;
    for _ in 0..200 {
        let p = SexticParams::new(rng.gen_range(-20.0..20.0), rng.gen_range(0.05..10.0), rng.gen_range(0..6) as f64)
            .unwrap();
        let e = rng.gen_range(-10.0..10.0);
        let (back, e2) = map_to_hooke(&p, e).to_sextic();
        for (a, b) in [(back.alpha, p.alpha), (back.gamma, p.gamma), (back.m, p.m), (e2, e)] {
            trip = trip.max((a - b).abs() / b.abs().max(1.0));
        }
    }
    let grid = log_grid(1e-3, 12.0, 400);
    let (mut cond, mut res, mut count) = (0.0f64, 0.0f64, 0);
    for k in 0..4i64 {
        for n in 2..=4 {
            for z in [1.0, -1.0] {
                for b in solve_frequencies(n, Rational64::new(2 * k + 1, 4), z).unwrap_or_default() {
                    let img = map_from_hooke(&b);
                    cond = cond.max(img.params.condition_residual(img.degree));
                    let u = qes_series(img.energy, &img.params, img.degree + 4).unwrap();
                    res = res.max(MappedState { params: img.params, u }.hooke_residual(img.energy, &grid));
                    count += 1;
                }
            }
        }
    }
    verdict(
        trip <= 1e-14 && cond < 1e-12 && res <= 1e-9,
        format!("round trip {trip:.1e}; {count} mapped branches, condition {cond:.1e}, residual {res:.1e}"),
    )
}

fn variational() -> Verdict {
    let (mut de, mut worst_r) = (0.0f64, 0.0f64);
    for (n, m, gamma) in [(2usize, 0i64, 1.0), (4, 1, 2.0), (6, 0, 0.5)] {
        let p = SexticParams::new(qes_condition(n, m as f64, gamma), gamma, m as f64).unwrap();
        for (k, e) in qes_exact_energies(n, m.into(), gamma).unwrap().into_iter().enumerate() {
            let s = variational_state(Picture::Qes(p), k, n + 8, (e - 0.25, e + 0.25)).unwrap();
            de = de.max((s.e_star - e).abs());
            worst_r = worst_r.max(s.residual_norm);
        }
    }
    // first excited state of the repulsive n = 2 trap, which has no polynomial form
    let b = solve_frequencies(2, 0, 1.0).unwrap().remove(0);
    let pic = Picture::Hooke { z: 1.0, omega: b.omega, m: 0.into() };
    let s24 = variational_state(pic, 1, 24, (b.eps_rel, b.eps_rel + 6.0 * b.omega));
    let s28 = variational_state(pic, 1, 28, (b.eps_rel, b.eps_rel + 6.0 * b.omega));
    let (excited_ok, excited) = match (s24, s28) {
        (Ok(a), Ok(c)) => (
            a.node_count == 1 && c.node_count == 1 && (a.e_star - c.e_star).abs() <= 1e-4,
            format!(
                "E*(24) = {:.7}, E*(28) = {:.7}, |ΔE| = {:.1e}, nodes {}/{}, R = {:.1e}/{:.1e}",
                a.e_star,
                c.e_star,
                (a.e_star - c.e_star).abs(),
                a.node_count,
                c.node_count,
                a.residual_norm,
                c.residual_norm
            ),
        ),
        (a, c) => (false, format!("estimator failed: {:?} {:?}", a.err(), c.err())),
    };
    verdict(
        de <= 1e-8 && worst_r <= 1e-12 && excited_ok,
        format!("exact levels |ΔE| ≤ {de:.1e}, R ≤ {worst_r:.1e}; {excited}"),
    )
}

fn bessel() -> Verdict {
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
    let (mut val, mut der) = (0.0f64, 0.0f64);
    for x in [0.5f64, 1.0, 5.0, 20.0] {
        val = val.max((i0e(x) * x.exp() - series(0, x)).abs() / series(0, x));
        val = val.max((i1e(x) * x.exp() - series(1, x)).abs() / series(1, x));
        let h = 1e-5;
        let i0 = |t: f64| i0e(t) * t.exp();
        let d = (i0(x + h) - i0(x - h)) / (2.0 * h);
        der = der.max((d - i1e(x) * x.exp()).abs() / (i1e(x) * x.exp()));
    }
    verdict(val <= 1e-10 && der <= 1e-6, format!("series error {val:.1e}, I_0' − I_1 error {der:.1e}"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hooke"))
        .args(args)
        .env_remove("HOOKE_OUT_DIR")
        .current_dir(std::env::temp_dir())
        .output()
        .expect("spawn hooke");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn cli_goldens() -> Verdict {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases: [(&str, &[&str]); 5] = [
        ("solve_n2_m0_Z1.csv", &["solve", "--n", "2", "--m", "0", "--Z", "1"]),
        ("solve_n4_m0-2.csv", &["solve", "--n", "4", "--m", "0:2", "--Z", "1,-1"]),
        ("entropy_scan_n3_m0-4.csv", &["entropy", "--scan", "--n", "3", "--m", "0:4", "--Z", "1,-1"]),
        ("qes_condition_n0.csv", &["qes", "condition", "--n", "0", "--m", "0", "--gamma", "1"]),
        ("qes_condition_n4.json", &["qes", "condition", "--n", "4", "--m", "1", "--gamma", "2", "--format", "json"]),
    ];
    let mut mismatched = Vec::new();
    for (file, args) in cases {
        let expect = std::fs::read_to_string(golden.join(file)).expect("golden file");
        let (code, out) = run(args);
        if code != 0 || out != expect {
            mismatched.push(file);
        }
    }
    let codes: [(i32, &[&str]); 5] = [
        (0, &["solve", "--n", "2", "--Z", "1"]),
        (2, &["solve", "--n", "2", "--Z", "1", "--format", "xml"]),
        (3, &["solve", "--n", "2", "--m", "0", "--Z", "0"]),
        (4, &["density", "--n", "2", "--Z", "1", "--grid", "0:4:3", "--quad-tol", "1e-300", "--out", "acceptance_density.csv"]),
        (5, &["qes", "variational", "--nodes", "9", "--N", "12", "--gamma", "1", "--sector", "2"]),
    ];
    let mut wrong = Vec::new();
    for (want, args) in codes {
        let (got, _) = run(args);
        if got != want {
            wrong.push(format!("{}: {got} (want {want})", args.join(" ")));
        }
    }
    verdict(
        mismatched.is_empty() && wrong.is_empty(),
        format!("5 goldens, mismatched {mismatched:?}; exit codes 0, 2, 3, 4, 5, wrong {wrong:?}"),
    )
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Verdict); 11] = [
        ("closed-form frequencies", Duration::from_secs(1), closed_form_frequencies),
        ("eigen-residual suite", Duration::from_secs(5), eigen_residuals),
        ("engine-recurrence equivalence", Duration::from_secs(2), engine_recurrence),
        ("density oracle", Duration::from_secs(20), density_oracle),
        ("oscillator entropy", Duration::from_secs(1), oscillator_entropy),
        ("entropy scan trends", Duration::from_secs(10), entropy_trends),
        ("entropy density at the origin", Duration::from_secs(2), origin_signs),
        ("sextic dictionary", Duration::from_secs(2), qes_dictionary),
        ("variational estimator", Duration::from_secs(10), variational),
        ("modified Bessel functions", Duration::from_secs(1), bessel),
        ("CLI goldens and exit codes", Duration::from_secs(2), cli_goldens),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = f();
        let t = start.elapsed();
        let status = if v.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status}: {name} ({:.2} s, budget {} s): {}", i + 1, t.as_secs_f64(), budget.as_secs(), v.detail);
        for line in &v.info {
            println!("             info: {line}");
        }
        if !v.passed {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 11 criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
