use std::f64::consts::PI;

use crate::error::Result;
use crate::hooke::{CenterOfMassState, RadialWavefunction};
use crate::optimize::brent_minimize;
use crate::quad::{integrate, integrate_points, integrate_to_infinity, QuadConfig};
use crate::special::{i0e, i1e};

use super::profile::DensityProfile;

/// `G(r) = |φ(r)|² = u(r)² / (2π r)`.
#[derive(Clone, Debug)]
pub struct PairCorrelation {
    pub wf: RadialWavefunction,
}

impl PairCorrelation {
    pub fn new(wf: RadialWavefunction) -> Self {
        Self { wf }
    }

    /// Finite at `r = 0`, where it equals `N²/(2π)` for `m = 0` and 0 otherwise.
    pub fn eval(&self, r: f64) -> f64 {
        let w = self.wf.omega();
        let t = self.wf.poly.eval(&(w.sqrt() * r));
        let p = 2.0 * self.wf.power() - 1.0;
        let rp = if p == 0.0 { 1.0 } else { r.powf(p) };
        self.wf.norm.powi(2) * rp * (-w * r * r).exp() * t * t / (2.0 * PI)
    }

    /// `ln G`, finite away from nodes and (for `m ≥ 1`) the origin.
    pub fn ln_eval(&self, r: f64) -> f64 {
        let w = self.wf.omega();
        let t = self.wf.poly.eval(&(w.sqrt() * r));
        let p = 2.0 * self.wf.power() - 1.0;
        let lr = if p == 0.0 { 0.0 } else { p * r.ln() };
        2.0 * self.wf.norm.ln() + lr - w * r * r + 2.0 * t.abs().ln() - (2.0 * PI).ln()
    }

    pub fn profile(&self, grid: &[f64]) -> Result<DensityProfile> {
        DensityProfile::new(grid.to_vec(), grid.iter().map(|&r| self.eval(r)).collect(), 1.0)
    }

    /// `2π ∫ G r dr` by quadrature.
    pub fn integral(&self) -> Result<f64> {
        let q = integrate_points(|r| self.wf.eval(r).powi(2), &self.wf.breakpoints(), &QuadConfig::tol(1e-14, 1e-12))?;
        Ok(q.value)
    }
}

/// How the angular integral of the centre-of-mass kernel is done.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AngularMethod {
    /// Reduced analytically to a scaled `I_0`.
    Bessel,
    /// Adaptive quadrature over the relative angle.
    Numerical,
}

/// `n(x) = 2 ∫ d²r |ξ(x − r/2)|² G(r)` for the state and centre-of-mass
/// factor.
#[derive(Clone, Debug)]
pub struct QuadratureDensity {
    pub wf: RadialWavefunction,
    pub cm: CenterOfMassState,
    pub method: AngularMethod,
    pub tol: f64,
}

impl QuadratureDensity {
    pub fn new(wf: RadialWavefunction, cm: CenterOfMassState, method: AngularMethod) -> Self {
        Self { wf, cm, method, tol: 1e-10 }
    }

    /// Angular mean of `e^{−β|x − r/2|²}`.
    fn kernel(&self, x: f64, r: f64) -> Result<f64> {
        let b = self.cm.beta;
        match self.method {
            AngularMethod::Bessel => Ok((-b * (x - 0.5 * r).powi(2)).exp() * i0e(b * x * r)),
            AngularMethod::Numerical => {
                let base = x * x + 0.25 * r * r;
                let f = |th: f64| (-b * (base - x * r * th.cos())).exp();
                let cfg = QuadConfig::tol(1e-16, self.tol * 1e-2);
                Ok(integrate(f, 0.0, PI, &cfg)?.value / PI)
            }
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let b = self.cm.beta;
        let mut points = self.wf.breakpoints();
        let peak = 2.0 * x;
        let cut = *points.last().expect("cutoff");
        if peak > 0.0 && peak < cut {
            points.push(peak);
            points.sort_by(f64::total_cmp);
        }
        let err = std::cell::Cell::new(None);
        let f = |r: f64| match self.kernel(x, r) {
            Ok(k) => self.wf.eval(r).powi(2) * k,
            Err(e) => {
                err.set(Some(e));
                0.0
            }
        };
        let q = integrate_points(f, &points, &QuadConfig::tol(1e-300, self.tol))?;
        if let Some(e) = err.take() {
            return Err(e);
        }
        Ok(2.0 * b / PI * q.value)
    }

    pub fn profile(&self, grid: &[f64]) -> Result<DensityProfile> {
        let values = grid.iter().map(|&x| self.eval(x)).collect::<Result<Vec<_>>>()?;
        DensityProfile::new(grid.to_vec(), values, 2.0)
    }

    /// `2π ∫ n x dx` by nested quadrature.
    pub fn integral(&self) -> Result<f64> {
        let err = std::cell::Cell::new(None);
        let f = |x: f64| match self.eval(x) {
            Ok(v) => 2.0 * PI * x * v,
            Err(e) => {
                err.set(Some(e));
                0.0
            }
        };
        let q = integrate_to_infinity(f, 0.0, &QuadConfig::tol(1e-12, 1e-9))?;
        if let Some(e) = err.take() {
            return Err(e);
        }
        Ok(q.value)
    }
}

/// Closed-form single-particle densities of four low states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedFormCase {
    N2M0Zp1,
    N2M0Zm1,
    N2M1Zp1,
    N3M0Zp1,
}

/// `C e^{−a r²} [e^{b r²} P(r²) ± √(cπ) (Q(r²) I_0(b r²) + R(r²) I_1(b r²))]`.
struct Expression {
    prefactor: f64,
    a: f64,
    b: f64,
    poly_exp: &'static [f64],
    sign: f64,
    c: f64,
    poly_i0: &'static [f64],
    poly_i1: &'static [f64],
}

impl ClosedFormCase {
    pub const ALL: [ClosedFormCase; 4] = [Self::N2M0Zp1, Self::N2M0Zm1, Self::N2M1Zp1, Self::N3M0Zp1];

    pub fn id(self) -> &'static str {
        match self {
            Self::N2M0Zp1 => "n2m0Zp1",
            Self::N2M0Zm1 => "n2m0Zm1",
            Self::N2M1Zp1 => "n2m1Zp1",
            Self::N3M0Zp1 => "n3m0Zp1",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.id() == id)
    }

    /// `(n, m, Z)` named by the label.
    pub fn labelled_state(self) -> (usize, i64, f64) {
        match self {
            Self::N2M0Zp1 => (2, 0, 1.0),
            Self::N2M0Zm1 => (2, 0, -1.0),
            Self::N2M1Zp1 => (2, 1, 1.0),
            Self::N3M0Zp1 => (3, 0, 1.0),
        }
    }

    /// `(n, m, Z)` whose quadrature density the expression reproduces. The
    /// `n = 3` expression carries the sign pattern of the `Z = −1` state.
    pub fn matching_state(self) -> (usize, i64, f64) {
        match self {
            Self::N3M0Zp1 => (3, 0, -1.0),
            other => other.labelled_state(),
        }
    }

    fn expression(self) -> Expression {
        let pi3 = PI.powi(3);
        let s2 = (2.0 * PI).sqrt();
        match self {
            Self::N2M0Zp1 | Self::N2M0Zm1 => {
                let sign = if self == Self::N2M0Zp1 { 1.0 } else { -1.0 };
                Expression {
                    prefactor: 16.0 * pi3 / (125.0 * (3.0 + sign * s2)),
                    a: 9.0 / 20.0,
                    b: 1.0 / 20.0,
                    poly_exp: &[65.0, 4.0],
                    sign,
                    c: 10.0,
                    poly_i0: &[10.0, 1.0],
                    poly_i1: &[0.0, 1.0],
                }
            }
            Self::N2M1Zp1 => Expression {
                prefactor: 64.0 * pi3 / (9375.0 * (42.0 + 9.0 * (6.0 * PI).sqrt())),
                a: 3.0 / 20.0,
                b: 1.0 / 60.0,
                poly_exp: &[13950.0, 705.0, 4.0],
                sign: 1.0,
                c: 30.0,
                poly_i0: &[1350.0, 90.0, 1.0],
                poly_i1: &[0.0, 60.0, 1.0],
            },
            Self::N3M0Zp1 => Expression {
                prefactor: 16.0 * pi3 / (28125.0 * (25.0 + 8.0 * (3.0 * PI).sqrt())),
                a: 3.0 / 40.0,
                b: 1.0 / 120.0,
                poly_exp: &[106425.0, 2160.0, 4.0],
                sign: -1.0,
                c: 15.0,
                poly_i0: &[15300.0, 435.0, 2.0],
                poly_i1: &[0.0, 315.0, 2.0],
            },
        }
    }

    /// The literal expression, before normalization. Bessel factors are
    /// evaluated in scaled form so the exponentials combine before
    /// multiplication.
    pub fn eval_raw(self, r: f64) -> f64 {
        let e = self.expression();
        let s = r * r;
        let horner = |p: &[f64]| p.iter().rev().fold(0.0, |acc, c| acc * s + c);
        let bessel = horner(e.poly_i0) * i0e(e.b * s) + horner(e.poly_i1) * i1e(e.b * s);
        e.prefactor * (-(e.a - e.b) * s).exp() * (horner(e.poly_exp) + e.sign * (e.c * PI).sqrt() * bessel)
    }
}

/// A closed-form case rescaled so that `∫ n d²r = 2`.
#[derive(Clone, Copy, Debug)]
pub struct ClosedFormDensity {
    pub case: ClosedFormCase,
    pub scale: f64,
}

impl ClosedFormDensity {
    pub fn new(case: ClosedFormCase) -> Result<Self> {
        let q = integrate_to_infinity(|r| 2.0 * PI * r * case.eval_raw(r), 0.0, &QuadConfig::tol(1e-14, 1e-13))?;
        Ok(Self { case, scale: 2.0 / q.value })
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.scale * self.case.eval_raw(r)
    }
}

pub fn closed_form_density(case: ClosedFormCase, grid: &[f64]) -> Result<DensityProfile> {
    let d = ClosedFormDensity::new(case)?;
    DensityProfile::new(grid.to_vec(), grid.iter().map(|&r| d.eval(r)).collect(), 2.0)
}

pub fn density_quadrature(
    wf: &RadialWavefunction,
    cm: CenterOfMassState,
    grid: &[f64],
    method: AngularMethod,
) -> Result<DensityProfile> {
    QuadratureDensity::new(wf.clone(), cm, method).profile(grid)
}

/// Largest relative deviation `|a − b| / b` where `b` exceeds `floor` times
/// its peak.
pub fn max_relative_deviation(a: &[f64], b: &[f64], floor: f64) -> f64 {
    let peak = b.iter().copied().fold(0.0, f64::max);
    a.iter()
        .zip(b)
        .filter(|(_, y)| **y >= floor * peak)
        .map(|(x, y)| (x - y).abs() / y.abs())
        .fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WidthFit {
    pub beta: f64,
    pub max_relative_deviation: f64,
}

/// Centre-of-mass width that best matches a target profile, by minimising
/// the largest relative deviation over `beta ∈ [lo, hi]`.
pub fn fit_cm_width(
    wf: &RadialWavefunction,
    grid: &[f64],
    target: &[f64],
    lo: f64,
    hi: f64,
) -> Result<WidthFit> {
    let err = std::cell::Cell::new(None);
    let objective = |ln_beta: f64| {
        let qd = QuadratureDensity::new(wf.clone(), CenterOfMassState { beta: ln_beta.exp() }, AngularMethod::Bessel);
        match qd.profile(grid) {
            Ok(p) => max_relative_deviation(&p.values, target, 1e-8),
            Err(e) => {
                err.set(Some(e));
                f64::INFINITY
            }
        }
    };
    let m = brent_minimize(objective, lo.ln(), hi.ln(), 1e-9, 200);
    if let Some(e) = err.take() {
        return Err(e);
    }
    Ok(WidthFit { beta: m.x.exp(), max_relative_deviation: m.fx })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hooke::{build_wavefunction, solve_frequencies, QuantizationBranch};

    fn wf(n: usize, m: i64, z: f64) -> RadialWavefunction {
        build_wavefunction(&solve_frequencies(n, m, z).unwrap()[0]).unwrap()
    }

    #[test]
    fn pair_correlation_gaussian() {
        let w = 0.7;
        let g = PairCorrelation::new(build_wavefunction(&QuantizationBranch::oscillator(1, 0.into(), w).unwrap()).unwrap());
        for r in [0.0, 0.5, 2.0] {
            assert!((g.eval(r) - w / PI * (-w * r * r).exp()).abs() < 1e-13);
            if r > 0.0 {
                assert!((g.ln_eval(r) - g.eval(r).ln()).abs() < 1e-12);
            }
        }
        assert!((g.integral().unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(PairCorrelation::new(wf(2, 1, 1.0)).eval(0.0), 0.0);
    }

    #[test]
    fn gaussian_convolution() {
        // G = (w/π) e^{−w r²}; n = 2 (γ/π) e^{−γ x²} with 1/γ = 1/β + 1/(4w)
        let w = 0.5;
        let beta = 1.3;
        let state = build_wavefunction(&QuantizationBranch::oscillator(1, 0.into(), w).unwrap()).unwrap();
        let gamma = 1.0 / (1.0 / beta + 1.0 / (4.0 * w));
        for method in [AngularMethod::Bessel, AngularMethod::Numerical] {
            let qd = QuadratureDensity::new(state.clone(), CenterOfMassState { beta }, method);
            for x in [0.0, 0.4, 1.5, 3.0] {
                let exact = 2.0 * gamma / PI * (-gamma * x * x).exp();
                assert!((qd.eval(x).unwrap() - exact).abs() < 1e-10, "{method:?} {x}");
            }
        }
    }

    #[test]
    fn closed_form_origin_values() {
        let v = ClosedFormCase::N2M0Zp1.eval_raw(0.0);
        let e = 16.0 * PI.powi(3) / (125.0 * (3.0 + (2.0 * PI).sqrt()));
        assert!((v / e - (65.0 + 10.0 * (10.0 * PI).sqrt())).abs() < 1e-11);
        let v = ClosedFormCase::N2M0Zm1.eval_raw(0.0);
        let e = 16.0 * PI.powi(3) / (125.0 * (3.0 - (2.0 * PI).sqrt()));
        assert!((v / e - (65.0 - 10.0 * (10.0 * PI).sqrt())).abs() < 1e-11);
    }

    #[test]
    fn closed_form_normalized() {
        for case in ClosedFormCase::ALL {
            let d = ClosedFormDensity::new(case).unwrap();
            let q = integrate_to_infinity(|r| 2.0 * PI * r * d.eval(r), 0.0, &QuadConfig::default()).unwrap();
            assert!((q.value - 2.0).abs() < 1e-10);
            assert_eq!(ClosedFormCase::from_id(case.id()), Some(case));
        }
    }

    #[test]
    fn bessel_and_numerical_paths_agree() {
        let state = wf(2, 0, -1.0);
        let cm = CenterOfMassState { beta: 0.5 };
        let a = QuadratureDensity::new(state.clone(), cm, AngularMethod::Bessel);
        let b = QuadratureDensity::new(state, cm, AngularMethod::Numerical);
        for x in [0.0, 0.7, 2.5, 6.0] {
            let (va, vb) = (a.eval(x).unwrap(), b.eval(x).unwrap());
            assert!((va - vb).abs() <= 1e-9 * va.abs().max(1e-12), "{x}: {va} {vb}");
        }
    }
}
