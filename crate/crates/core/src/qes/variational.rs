use num_rational::{BigRational, Rational64};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::hooke::radial_series_operator;
use crate::optimize::brent_minimize_rel;
use crate::poly::{real_roots, Bound, Polynomial};
use crate::quad::{integrate_points, QuadConfig};
use crate::scalar::{rational_to_f64, small_to_big, Field};
use crate::series::{series_solve, EulerPolynomial, MonomialOperator, PowerSeries};

use super::sextic::{qes_series_operator, SexticParams};

/// Where the trial state lives and what the variational parameter means.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Picture {
    /// `Ψ_E = ψ₀ u_E(x)`; the parameter is the sextic energy `E`.
    Qes(SexticParams),
    /// `u = g(ρ) t_ε(ρ)` with `ρ = √ω̃ r` and `g² = ρ^{2|m|+1} e^{−ρ²}`;
    /// the parameter is the relative-motion energy `ε_rel`.
    Hooke { z: f64, omega: f64, m: Rational64 },
}

impl Picture {
    fn operators(&self, param: f64) -> (EulerPolynomial<f64>, MonomialOperator<f64>) {
        match *self {
            Picture::Qes(p) => qes_series_operator(&param, &p.a(), &p.sqrt_gamma(), &p.m),
            Picture::Hooke { z, omega, m } => {
                let am = rational_to_f64(&small_to_big(m.abs()));
                let e_tilde = 2.0 * param / omega - 2.0 * am - 2.0;
                radial_series_operator(&(z / omega.sqrt()), &e_tilde, m)
            }
        }
    }

    /// `ln w(x)` for the weight that turns `∫ w u²` into `‖Ψ‖²`.
    fn ln_weight(&self, x: f64) -> f64 {
        match *self {
            Picture::Qes(p) => (2.0 * p.m + 2.0) * x.ln() - 0.5 * p.sqrt_gamma() * x.powi(4),
            Picture::Hooke { m, .. } => {
                (2.0 * rational_to_f64(&small_to_big(m.abs())) + 1.0) * x.ln() - x * x
            }
        }
    }

    /// `R_phys / R` from the change of variable.
    fn residual_scale(&self) -> f64 {
        match *self {
            Picture::Qes(_) => 1.0,
            Picture::Hooke { omega, .. } => omega * omega,
        }
    }

    /// Natural length of the weight.
    fn length(&self) -> f64 {
        match *self {
            Picture::Qes(p) => p.gamma.powf(-0.125),
            Picture::Hooke { .. } => 1.0,
        }
    }

    /// Index step between structurally nonzero coefficients.
    fn stride(&self) -> usize {
        match self {
            Picture::Qes(_) => 2,
            Picture::Hooke { .. } => 1,
        }
    }
}

/// Truncated trial state at one parameter value.
#[derive(Clone, Debug)]
pub struct Trial {
    pub param: f64,
    pub order: usize,
    pub series: PowerSeries<f64>,
    poly: Polynomial<f64>,
    /// `(F + P) u_N`, which only has terms above `x^N`.
    residual: Polynomial<f64>,
    picture: Picture,
}

impl Trial {
    pub fn new(picture: Picture, param: f64, order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidInput(format!("truncation order must be at least 2, got {order}")));
        }
        let (f, p) = picture.operators(param);
        let series = series_solve(&f, &p, &BigRational::zero(), order)?;
        let poly = Polynomial::new(series.coeffs().to_vec());
        // F u_N cancels P u_N through x^N, so only the overflow survives
        let pu = p.apply(&series);
        let mut res = vec![0.0; pu.len() + 2];
        for (i, c) in pu.coeffs().iter().enumerate() {
            let k = pu.exponent_of(i).to_integer();
            if k > num_bigint::BigInt::from(order) {
                let k: usize = k.try_into().expect("series exponent");
                if k >= res.len() {
                    res.resize(k + 1, 0.0);
                }
                res[k] = *c;
            }
        }
        Ok(Self { param, order, series, poly, residual: Polynomial::new(res), picture })
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.poly.eval(&x)
    }

    pub fn polynomial(&self) -> &Polynomial<f64> {
        &self.poly
    }

    /// Point past which the integrands are below `e^{−80}` of their peak.
    pub fn cutoff(&self) -> f64 {
        let l = self.picture.length();
        let ln_f = |x: f64| {
            let u = self.eval(x).abs().max(self.residual.eval(&x).abs() / (x * x));
            self.picture.ln_weight(x) + 2.0 * u.max(f64::MIN_POSITIVE).ln()
        };
        let mut peak = f64::NEG_INFINITY;
        let mut last = l;
        let h = l / 50.0;
        let mut x = h;
        loop {
            let v = ln_f(x);
            if v > peak {
                peak = v;
            }
            if v >= peak - 80.0 {
                last = x;
            } else if x > 2.0 * last && x > 4.0 * l {
                break;
            }
            x += h;
        }
        last + h
    }

    /// Radius below which the two highest retained terms stay under a tenth
    /// of the running maximum of `|u_N|`; beyond it truncation controls the
    /// shape and sign changes are not trusted.
    pub fn reliable_radius(&self) -> f64 {
        let end = self.cutoff();
        let step = self.picture.stride();
        let top = self.order - (self.order % step);
        let c = |k: usize| self.series.coeffs().get(k).copied().unwrap_or(0.0).abs();
        let (c1, c2) = (c(top), if top >= step { c(top - step) } else { 0.0 });
        if c1 == 0.0 && c2 == 0.0 {
            return end;
        }
        let h = end / 2000.0;
        let mut running = 0.0f64;
        for i in 1..=2000 {
            let x = h * i as f64;
            running = running.max(self.eval(x).abs());
            let tail = c1 * x.powi(top as i32) + c2 * x.powi((top - step.min(top)) as i32);
            if tail >= 0.1 * running {
                return x;
            }
        }
        end
    }

    /// Sign changes of `u_N` on `(0, reliable radius)` from a 4000-point scan.
    pub fn node_count_scan(&self) -> usize {
        node_count_scan(&self.poly, 0.0, self.reliable_radius(), 4000)
    }

    fn norm_sq(&self, end: f64) -> Result<f64> {
        let f = |x: f64| {
            let u = self.eval(x);
            (self.picture.ln_weight(x)).exp() * u * u
        };
        Ok(integrate_points(f, &breaks(end), &QuadConfig::tol(0.0, 1e-12))?.value)
    }

    /// `R = ‖(H − E) Ψ‖² / ‖Ψ‖²`.
    pub fn residual_functional(&self) -> Result<f64> {
        let end = self.cutoff();
        let norm = self.norm_sq(end)?;
        let f = |x: f64| {
            let r = self.residual.eval(&x) / (x * x);
            if r == 0.0 {
                0.0
            } else {
                (self.picture.ln_weight(x)).exp() * r * r
            }
        };
        let num = integrate_points(f, &breaks(end), &QuadConfig::tol(1e-30 * norm, 1e-10))?.value;
        Ok(0.25 * self.picture.residual_scale() * num / norm)
    }

    /// `⟨Ψ|(H − E)|Ψ⟩ / ⟨Ψ|Ψ⟩`.
    pub fn literal_functional(&self) -> Result<f64> {
        let end = self.cutoff();
        let norm = self.norm_sq(end)?;
        let f = |x: f64| {
            let r = self.residual.eval(&x) / (x * x);
            (self.picture.ln_weight(x)).exp() * r * self.eval(x)
        };
        let num = integrate_points(f, &breaks(end), &QuadConfig::tol(1e-30 * norm, 1e-10))?.value;
        Ok(-0.5 * self.picture.residual_scale().sqrt() * num / norm)
    }
}

fn breaks(end: f64) -> Vec<f64> {
    (0..=16).map(|i| end * i as f64 / 16.0).collect()
}

#[derive(Clone, Debug)]
pub struct VariationalState {
    /// Optimal parameter: `E` in the sextic picture, `ε_rel` in the Hooke one.
    pub e_star: f64,
    pub series: PowerSeries<f64>,
    pub node_count: usize,
    /// `R` at the optimum.
    pub residual_norm: f64,
    pub reliable_radius: f64,
    pub order: usize,
}

/// Samples used to locate candidate minima before refinement.
pub const SCAN_SAMPLES: usize = 240;

/// Minimises `√R` over `bracket` among trial states with `target_nodes`
/// nodes inside their reliable radius.
pub fn variational_state(
    picture: Picture,
    target_nodes: usize,
    order: usize,
    bracket: (f64, f64),
) -> Result<VariationalState> {
    let (lo, hi) = (bracket.0.min(bracket.1), bracket.0.max(bracket.1));
    if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidInput(format!("empty energy bracket [{lo}, {hi}]")));
    }
    let n = SCAN_SAMPLES;
    let es: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
    let mut fs = Vec::with_capacity(es.len());
    let mut nodes = Vec::with_capacity(es.len());
    for &e in &es {
        let t = Trial::new(picture, e, order)?;
        nodes.push(t.node_count_scan());
        fs.push(t.residual_functional().map_or(f64::INFINITY, f64::sqrt));
    }
    if !nodes.contains(&target_nodes) {
        return Err(Error::NodeCountUnreachable { target: target_nodes, lo, hi });
    }
    let objective = |e: f64| {
        Trial::new(picture, e, order)
            .and_then(|t| t.residual_functional())
            .map_or(f64::INFINITY, f64::sqrt)
    };
    let mut best: Option<VariationalState> = None;
    for i in 1..n {
        let interior_min = fs[i] <= fs[i - 1] && fs[i] <= fs[i + 1] && fs[i].is_finite();
        if !interior_min || nodes[i] != target_nodes {
            continue;
        }
        let m = brent_minimize_rel(objective, es[i - 1], es[i + 1], 1e-13, 4.0 * f64::EPSILON, 300);
        let t = Trial::new(picture, m.x, order)?;
        let radius = t.reliable_radius();
        let count = node_count_roots(t.polynomial(), 0.0, radius);
        if count != target_nodes {
            continue;
        }
        let r = t.residual_functional()?;
        if best.as_ref().map_or(true, |b| r < b.residual_norm) {
            best = Some(VariationalState {
                e_star: m.x,
                series: t.series,
                node_count: count,
                residual_norm: r,
                reliable_radius: radius,
                order,
            });
        }
    }
    best.ok_or(Error::Bracket { lo, hi })
}

/// Sign changes of the literal functional on `bracket`, refined by bisection.
pub fn literal_roots(picture: Picture, order: usize, bracket: (f64, f64), samples: usize) -> Result<Vec<f64>> {
    let (lo, hi) = bracket;
    let f = |e: f64| Trial::new(picture, e, order)?.literal_functional();
    let n = samples.max(2);
    let es: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
    let vals: Vec<f64> = es.iter().map(|&e| f(e)).collect::<Result<_>>()?;
    let mut roots = Vec::new();
    for i in 0..n {
        if vals[i] == 0.0 {
            roots.push(es[i]);
            continue;
        }
        if vals[i].signum() == vals[i + 1].signum() {
            continue;
        }
        let (mut a, mut b, fa) = (es[i], es[i + 1], vals[i]);
        for _ in 0..200 {
            let c = 0.5 * (a + b);
            if c <= a || c >= b {
                break;
            }
            let fc = f(c)?;
            if fc == 0.0 {
                a = c;
                b = c;
                break;
            }
            if fc.signum() == fa.signum() {
                a = c;
            } else {
                b = c;
            }
        }
        roots.push(0.5 * (a + b));
    }
    Ok(roots)
}

/// Distinct real zeros of the polynomial part of `series` in `(lo, hi)`,
/// counted exactly with a Sturm chain on the binary values of the
/// coefficients. The `x^λ` prefactor has no zeros on the half line.
pub fn node_count(series: &PowerSeries<f64>, lo: f64, hi: f64) -> usize {
    let exact = Polynomial::new(series.coeffs().iter().map(|&c| <BigRational as Field>::from_f64(c)).collect());
    node_count_exact(&exact, lo, hi)
}

pub fn node_count_exact(p: &Polynomial<BigRational>, lo: f64, hi: f64) -> usize {
    let bound = |x: f64| {
        if x == f64::INFINITY {
            Bound::PosInfinity
        } else if x == f64::NEG_INFINITY {
            Bound::NegInfinity
        } else {
            Bound::Finite(<BigRational as Field>::from_f64(x))
        }
    };
    p.squarefree().count_roots_open(&bound(lo), &bound(hi))
}

/// Real zeros in `(lo, hi)` from the companion matrix. Cheap at high
/// degree, where the exact chain suffers coefficient growth.
///
/// Top coefficients that cannot move the value anywhere on a finite
/// interval by more than `1e−15` of its scale are dropped first; on
/// terminating states they are rounding noise. On a finite interval the
/// variable is rescaled to `[−1, 1]`, which keeps the companion matrix
/// balanced.
pub fn node_count_roots(p: &Polynomial<f64>, lo: f64, hi: f64) -> usize {
    let c = p.coeffs();
    if !hi.is_finite() || !lo.is_finite() {
        return real_roots(p).into_iter().filter(|&r| r > lo && r < hi).count();
    }
    // a polynomial in `x^g` has the roots of its reduction in `y = x^g` on
    // the positive axis; the reduced companion avoids the rotational
    // symmetry that stalls the QR iteration
    let g = c.iter().enumerate().skip(1).filter(|(_, a)| **a != 0.0).fold(0, |g, (k, _)| num_integer::gcd(g, k));
    if g > 1 && lo >= 0.0 {
        let reduced = Polynomial::new(c.iter().step_by(g).copied().collect());
        return node_count_roots(&reduced, lo.powi(g as i32), hi.powi(g as i32));
    }
    let reach = lo.abs().max(hi.abs());
    if reach == 0.0 {
        return 0;
    }
    let mut scaled: Vec<f64> = c.iter().enumerate().map(|(k, a)| a * reach.powi(k as i32)).collect();
    let size = scaled.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let keep = scaled.iter().rposition(|a| a.abs() > 1e-15 * size).map_or(0, |k| k + 1);
    scaled.truncate(keep);
    real_roots(&Polynomial::new(scaled))
        .into_iter()
        .map(|y| y * reach)
        .filter(|&r| r > lo && r < hi)
        .count()
}

/// Sign changes over `samples` equal steps of `(lo, hi)`; misses pairs of
/// zeros closer than one step.
pub fn node_count_scan(p: &Polynomial<f64>, lo: f64, hi: f64, samples: usize) -> usize {
    let n = samples.max(2);
    let mut prev = 0.0f64;
    let mut count = 0;
    for i in 1..n {
        let v = p.eval(&(lo + (hi - lo) * i as f64 / n as f64));
        if v != 0.0 {
            if prev != 0.0 && v.signum() != prev.signum() {
                count += 1;
            }
            prev = v;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hooke::solve_frequencies;
    use crate::qes::sextic::{qes_condition, qes_exact_energies};

    fn series(c: Vec<f64>) -> PowerSeries<f64> {
        PowerSeries::new(BigRational::zero(), c)
    }

    #[test]
    fn node_count_examples() {
        assert_eq!(node_count(&series(vec![1.0, 1.0]), 0.0, f64::INFINITY), 0);
        assert_eq!(node_count(&series(vec![1.0, -1.0]), 0.0, f64::INFINITY), 1);
        // double root counts once
        assert_eq!(node_count(&series(vec![1.0, -2.0, 1.0]), 0.0, f64::INFINITY), 1);
        assert_eq!(node_count_scan(&Polynomial::new(vec![1.0, -1.0]), 0.0, 3.0, 100), 1);
        let p = Polynomial::new(vec![2.0, -3.0, 1.0]);
        assert_eq!(node_count_roots(&p, 0.0, 1.5), 1);
        assert_eq!(node_count_roots(&p, 0.0, f64::INFINITY), 2);
    }

    #[test]
    fn quartic_branch_lower_cubic_is_nodeless() {
        let b = solve_frequencies(4, 0, 1.0).unwrap();
        let lower = b.iter().min_by(|a, b| a.omega.total_cmp(&b.omega)).unwrap();
        let a = crate::hooke::coefficient_recurrence(&lower.kappa, 4, 0.into());
        assert_eq!(node_count(&series(a[..4].to_vec()), 0.0, f64::INFINITY), 0);
    }

    #[test]
    fn exact_state_is_fixed_point() {
        let gamma = 1.0;
        let p = SexticParams::new(qes_condition(2, 0.0, gamma), gamma, 0.0).unwrap();
        let e = qes_exact_energies(2, 0.into(), gamma).unwrap();
        for (k, &e0) in e.iter().enumerate() {
            let t = Trial::new(Picture::Qes(p), e0, 12).unwrap();
            assert!(t.residual_functional().unwrap() < 1e-24);
            assert!(t.literal_functional().unwrap().abs() < 1e-12);
            let s = variational_state(Picture::Qes(p), k, 12, (e0 - 0.5, e0 + 0.5)).unwrap();
            assert!((s.e_star - e0).abs() < 1e-8, "{} vs {e0}", s.e_star);
            assert!(s.residual_norm <= 1e-12);
        }
    }

    #[test]
    fn residual_is_positive_off_shell() {
        let p = SexticParams::new(qes_condition(2, 1.0, 2.0), 2.0, 1.0).unwrap();
        let t = Trial::new(Picture::Qes(p), 0.3, 16).unwrap();
        assert!(t.residual_functional().unwrap() > 1e-6);
    }

    #[test]
    fn hooke_picture_matches_exact_branch() {
        let b = solve_frequencies(2, 0, 1.0).unwrap().remove(0);
        let pic = Picture::Hooke { z: 1.0, omega: b.omega, m: 0.into() };
        let t = Trial::new(pic, b.eps_rel, 10).unwrap();
        assert!(t.residual_functional().unwrap() < 1e-24);
        let s = variational_state(pic, 0, 10, (0.6, 1.4)).unwrap();
        assert!((s.e_star - b.eps_rel).abs() < 1e-8);
    }

    #[test]
    fn unreachable_node_count() {
        let p = SexticParams::new(qes_condition(2, 0.0, 1.0), 1.0, 0.0).unwrap();
        let err = variational_state(Picture::Qes(p), 7, 8, (-1.0, 1.0)).unwrap_err();
        assert!(matches!(err, Error::NodeCountUnreachable { target: 7, .. }));
    }

    #[test]
    fn literal_root_on_exact_level() {
        let p = SexticParams::new(qes_condition(2, 0.0, 1.0), 1.0, 0.0).unwrap();
        let e = qes_exact_energies(2, 0.into(), 1.0).unwrap();
        let roots = literal_roots(Picture::Qes(p), 12, (e[1] - 0.3, e[1] + 0.3), 12).unwrap();
        assert!(roots.iter().any(|r| (r - e[1]).abs() < 1e-9), "{roots:?}");
    }
}
