use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hooke::quantization_polynomial;
use crate::poly::real_roots_exact;
use crate::scalar::{Coefficient, Field};
use crate::series::{series_solve, EulerPolynomial, MonomialOperator, MonomialTerm, PowerSeries};

/// `H = −½ d²/dx² + α x²/2 + γ x⁶/2 + m(m+1)/(2x²)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SexticParams {
    pub alpha: f64,
    pub gamma: f64,
    /// Centrifugal index; any real `m > −1` keeps the ground factor
    /// normalizable.
    pub m: f64,
}

impl SexticParams {
    pub fn new(alpha: f64, gamma: f64, m: f64) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidInput(format!("sextic coupling must be positive, got {gamma}")));
        }
        if !(m > -1.0) || !alpha.is_finite() {
            return Err(Error::InvalidInput(format!("need m > -1 and finite alpha, got m={m}, alpha={alpha}")));
        }
        Ok(Self { alpha, gamma, m })
    }

    pub fn sqrt_gamma(&self) -> f64 {
        self.gamma.sqrt()
    }

    /// `A = α/2 + 3√γ/2 + (m + 1)√γ`.
    pub fn a(&self) -> f64 {
        let sg = self.sqrt_gamma();
        0.5 * self.alpha + 1.5 * sg + (self.m + 1.0) * sg
    }

    /// `ψ₀ = x^{m+1} e^{−√γ x⁴/4}`.
    pub fn psi0(&self, x: f64) -> f64 {
        x.powf(self.m + 1.0) * (-0.25 * self.sqrt_gamma() * x.powi(4)).exp()
    }

    /// `|α/2 + 3√γ/2 + (m+1)√γ + n√γ|`.
    pub fn condition_residual(&self, n: usize) -> f64 {
        (self.a() + n as f64 * self.sqrt_gamma()).abs()
    }
}

/// `ψ₀⁻¹ H ψ₀ = −½ d² + √γ x³ d + A x² − (m + 1) x⁻¹ d`.
pub fn reduced_qes_operator(p: &SexticParams) -> MonomialOperator<f64> {
    MonomialOperator::new(vec![
        MonomialTerm::new(-0.5, 0, 2),
        MonomialTerm::new(p.sqrt_gamma(), 3, 1),
        MonomialTerm::new(p.a(), 2, 0),
        MonomialTerm::new(-(p.m + 1.0), -1, 1),
    ])
}

/// `F = D(D + 2m + 1)` and `P = 2E x² − 2A x⁴ − 2√γ x⁵ d`, so that
/// `(F + P) u = −2x² (H̃ − E) u`.
pub fn qes_series_operator<C: Coefficient>(
    e: &C,
    a: &C,
    sqrt_gamma: &C,
    m: &C::Scalar,
) -> (EulerPolynomial<C::Scalar>, MonomialOperator<C>) {
    let two = C::Scalar::from_i64(2);
    let f = EulerPolynomial::qes(m.clone());
    let p = MonomialOperator::new(vec![
        MonomialTerm::new(e.scale(&two), 2, 0),
        MonomialTerm::new(-a.scale(&two), 4, 0),
        MonomialTerm::new(-sqrt_gamma.scale(&two), 5, 1),
    ]);
    (f, p)
}

/// Reduced eigenfunction `u(x) = 1 − E x²/(2m + 3) + …` through `x^order`.
pub fn qes_series_with<C: Coefficient>(
    e: &C,
    a: &C,
    sqrt_gamma: &C,
    m: &C::Scalar,
    order: usize,
) -> Result<PowerSeries<C>> {
    let (f, p) = qes_series_operator(e, a, sqrt_gamma, m);
    series_solve(&f, &p, &BigRational::zero(), order)
}

pub fn qes_series(e: f64, p: &SexticParams, order: usize) -> Result<PowerSeries<f64>> {
    qes_series_with(&e, &p.a(), &p.sqrt_gamma(), &p.m, order)
}

/// `α = −√γ (2n + 2m + 5)`: the reduced operator then preserves polynomials
/// of degree `n` in `x`.
pub fn qes_condition(n: usize, m: f64, gamma: f64) -> f64 {
    -gamma.sqrt() * (2.0 * n as f64 + 2.0 * m + 5.0)
}

/// Energies of the polynomial eigenstates of degree `n` (even) at
/// `α = qes_condition(n, m, γ)`, ascending.
///
/// Computed through the Coulomb-ratio polynomial of the equivalent
/// Hooke problem, `E = −2κ √(√γ/2)`, which needs `m` rational.
pub fn qes_exact_energies(n: usize, m: num_rational::Rational64, gamma: f64) -> Result<Vec<f64>> {
    if n % 2 == 1 {
        return Err(Error::InvalidInput(format!("polynomial sectors have even degree, got {n}")));
    }
    let m_tilde = (m * 2 + 1) / 4;
    let q = quantization_polynomial(n / 2 + 1, m_tilde);
    let scale = (0.5 * gamma.sqrt()).sqrt();
    let mut e: Vec<f64> = real_roots_exact(&q).into_iter().map(|k| -2.0 * k * scale).collect();
    e.sort_by(f64::total_cmp);
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::scalar::small_to_big;
    use num_rational::Ratio;

    fn q(n: i64, d: i64) -> BigRational {
        small_to_big(Ratio::new(n, d))
    }

    #[test]
    fn condition_examples() {
        assert_eq!(qes_condition(0, 0.0, 1.0), -5.0);
        assert_eq!(qes_condition(2, 1.0, 4.0), -22.0);
        let p = SexticParams::new(qes_condition(4, 2.0, 9.0), 9.0, 2.0).unwrap();
        assert!(p.condition_residual(4) < 1e-14);
    }

    #[test]
    fn operator_coefficients() {
        let p = SexticParams::new(-2.0, 1.0, 0.0).unwrap();
        let l = reduced_qes_operator(&p);
        let t = l.terms().iter().find(|t| t.shift == 3).unwrap();
        assert_eq!(t.coeff, 1.0);
        assert_eq!(p.a(), -1.0 + 1.5 + 1.0);
    }

    /// Leading coefficients as polynomials in `E`.
    #[test]
    fn symbolic_expansion() {
        let e = Polynomial::<BigRational>::x();
        for m in 0..3i64 {
            let mm = q(m, 1);
            let u = qes_series_with(&e, &Polynomial::zero(), &Polynomial::zero(), &mm, 4).unwrap();
            let c2 = u.coefficient_at(2);
            assert_eq!(c2, Polynomial::new(vec![q(0, 1), q(-1, 2 * m + 3)]));
            // x⁴ with A = a: a/(2(2m+5)) + E²/((2m+3)·2(2m+5))
            let a = q(7, 3);
            let u = qes_series_with(&e, &Polynomial::constant(a.clone()), &Polynomial::zero(), &mm, 4).unwrap();
            let c4 = u.coefficient_at(4);
            let expect = Polynomial::new(vec![
                a.clone() / q(2 * (2 * m + 5), 1),
                q(0, 1),
                q(1, (2 * m + 3) * 2 * (2 * m + 5)),
            ]);
            assert_eq!(c4, expect);
        }
    }

    #[test]
    fn constant_solution_without_couplings() {
        let u = qes_series_with(&0.0f64, &0.0, &0.0, &0.0, 10).unwrap();
        assert_eq!(u.coeffs()[0], 1.0);
        assert!(u.coeffs()[1..].iter().all(|c| *c == 0.0));
    }

    #[test]
    fn even_powers_only() {
        let p = SexticParams::new(-3.3, 2.0, 1.0).unwrap();
        let u = qes_series(0.7, &p, 21).unwrap();
        assert!(u.coeffs().iter().skip(1).step_by(2).all(|c| *c == 0.0));
    }

    #[test]
    fn degree_two_sector() {
        for m in 0..3i64 {
            let gamma = 2.0;
            let e = qes_exact_energies(2, m.into(), gamma).unwrap();
            let expect = (2.0 * gamma.sqrt() * (2.0 * m as f64 + 3.0)).sqrt();
            assert!((e[1] - expect).abs() < 1e-13 && (e[0] + expect).abs() < 1e-13);
            let p = SexticParams::new(qes_condition(2, m as f64, gamma), gamma, m as f64).unwrap();
            let u = qes_series(e[1], &p, 12).unwrap();
            assert!(u.coeffs()[4..].iter().all(|c| c.abs() < 1e-12), "{:?}", u.coeffs());
        }
    }
}
