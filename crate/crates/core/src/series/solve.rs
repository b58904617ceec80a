use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::{Coefficient, Field};

use super::operator::{EulerPolynomial, MonomialOperator};
use super::power::PowerSeries;

/// Divides the coefficient at each exponent `s` by `F(s)`.
pub fn invert_euler<C: Coefficient>(
    f: &EulerPolynomial<C::Scalar>,
    y: &PowerSeries<C>,
) -> Result<PowerSeries<C>> {
    let mut out = Vec::with_capacity(y.len());
    for (i, c) in y.coeffs().iter().enumerate() {
        let s = y.exponent_of(i);
        let fs = f.eval_at(&s);
        if is_root(f, &s, &fs) {
            if c.is_zero() {
                out.push(C::zero());
                continue;
            }
            return Err(Error::Resonance { exponent: s.to_string() });
        }
        out.push(c.div_scalar(&fs));
    }
    Ok(PowerSeries::new(y.base_exponent().clone(), out))
}

/// Zero test for `F(s)`; floating fields compare against the rounding
/// level of the terms being summed.
fn is_root<F: Field>(f: &EulerPolynomial<F>, s: &BigRational, fs: &F) -> bool {
    if F::EXACT {
        return fs.is_zero();
    }
    let sf = crate::scalar::rational_to_f64(s).abs();
    let scale: f64 = f
        .poly()
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| c.to_f64().abs() * sf.powi(k as i32))
        .sum();
    fs.to_f64().abs() <= 64.0 * f64::EPSILON * scale.max(f64::MIN_POSITIVE)
}

/// Series solution `Σ_ν (-F⁻¹P)^ν x^λ` of `[F(D) + P] y = 0`.
///
/// Coefficients are exact for all exponents up to `λ + order`; the leading
/// coefficient is 1.
pub fn series_solve<C: Coefficient>(
    f: &EulerPolynomial<C::Scalar>,
    p: &MonomialOperator<C>,
    lambda: &BigRational,
    order: usize,
) -> Result<PowerSeries<C>> {
    if !is_root(f, lambda, &f.eval_at(lambda)) {
        return Err(Error::NotIndicialRoot { lambda: lambda.to_string() });
    }
    if let Some(shift) = p.net_degree_shift().filter(|s| *s < 1) {
        return Err(Error::InadmissibleOperator { shift });
    }
    let top = lambda + BigRational::from_integer(BigInt::from(order));
    let mut term = PowerSeries::monomial(lambda.clone(), C::one());
    let mut total = term.clone();
    loop {
        let next = p.apply(&term).truncate_above(&top);
        if next.is_zero() {
            break;
        }
        term = -invert_euler(f, &next)?;
        total = total + term.clone();
    }
    let total = PowerSeries::new(lambda.clone(), pad_from(total, lambda, order + 1));
    Ok(total)
}

/// Coefficient vector relative to `λ`, length `len`.
fn pad_from<C: Coefficient>(y: PowerSeries<C>, lambda: &BigRational, len: usize) -> Vec<C> {
    (0..len)
        .map(|i| y.coefficient(&(lambda + BigRational::from_integer(BigInt::from(i)))))
        .collect()
}

/// `max |(L y)(x)| / max(1, max |y|)` over a grid of positive points.
pub fn residual<F: Field + Coefficient>(
    l: &MonomialOperator<F>,
    y: &PowerSeries<F>,
    grid: &[f64],
) -> f64 {
    let mut worst = 0.0f64;
    let mut scale = 1.0f64;
    for &x in grid {
        worst = worst.max(l.apply_series_at(x, y).abs());
        scale = scale.max(y.eval(x).abs());
    }
    worst / scale
}
