use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::poly::Polynomial;
use crate::scalar::{rational_to_f64, Coefficient, Field, Ring};

/// Truncated series `x^λ Σ_i c_i x^i`.
///
/// `base_exponent` is λ; `coeffs[i]` multiplies `x^{λ+i}`. The leading
/// coefficient is nonzero unless the series is identically zero.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<C> {
    base_exponent: BigRational,
    coeffs: Vec<C>,
}

impl<C: Ring> PowerSeries<C> {
    /// Leading zeros are absorbed into the base exponent.
    pub fn new(base_exponent: BigRational, coeffs: Vec<C>) -> Self {
        Self { base_exponent, coeffs }.strip_leading()
    }

    pub fn zero(base_exponent: BigRational) -> Self {
        Self { base_exponent, coeffs: Vec::new() }
    }

    pub fn monomial(exponent: BigRational, c: C) -> Self {
        Self::new(exponent, vec![c])
    }

    /// Polynomial read as a series at base exponent 0.
    pub fn from_polynomial(p: &Polynomial<C>) -> Self {
        Self::new(BigRational::zero(), p.coeffs().to_vec())
    }

    pub fn base_exponent(&self) -> &BigRational {
        &self.base_exponent
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Coefficient of `x^exponent`; zero off the stored range or when the
    /// exponent is not congruent to λ modulo 1.
    pub fn coefficient(&self, exponent: &BigRational) -> C {
        let off = exponent - &self.base_exponent;
        if !off.is_integer() || off < BigRational::zero() {
            return C::zero();
        }
        off.to_integer()
            .to_usize()
            .and_then(|i| self.coeffs.get(i).cloned())
            .unwrap_or_else(C::zero)
    }

    /// Integer exponent convenience for [`coefficient`](Self::coefficient).
    pub fn coefficient_at(&self, exponent: i64) -> C {
        self.coefficient(&BigRational::from_integer(BigInt::from(exponent)))
    }

    pub fn exponent_of(&self, index: usize) -> BigRational {
        &self.base_exponent + BigRational::from_integer(BigInt::from(index))
    }

    /// Drops every term with exponent above `max_exponent`.
    pub fn truncate_above(&self, max_exponent: &BigRational) -> Self {
        let keep = max_exponent - &self.base_exponent;
        if keep < BigRational::zero() {
            return Self::zero(self.base_exponent.clone());
        }
        let keep = keep.floor().to_integer().to_usize().unwrap_or(usize::MAX);
        let n = self.coeffs.len().min(keep.saturating_add(1));
        Self::new(self.base_exponent.clone(), self.coeffs[..n].to_vec())
    }

    /// Pads with zeros so the highest stored exponent is `λ + len - 1`.
    pub fn padded(mut self, len: usize) -> Self {
        if self.coeffs.len() < len {
            self.coeffs.resize(len, C::zero());
        }
        self
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> PowerSeries<D> {
        PowerSeries::new(self.base_exponent.clone(), self.coeffs.iter().map(f).collect())
    }

    /// Polynomial part when λ = 0.
    pub fn to_polynomial(&self) -> Option<Polynomial<C>> {
        self.base_exponent.is_zero().then(|| Polynomial::new(self.coeffs.clone()))
    }

    fn strip_leading(mut self) -> Self {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            return self;
        }
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.base_exponent += BigRational::from_integer(BigInt::from(lead));
        }
        self
    }

    fn combine(self, rhs: Self, op: impl Fn(C, C) -> C) -> Self {
        if rhs.coeffs.is_empty() {
            return self.map(|c| op(c.clone(), C::zero()));
        }
        if self.coeffs.is_empty() {
            return rhs.map(|c| op(C::zero(), c.clone()));
        }
        let base = if self.base_exponent < rhs.base_exponent {
            self.base_exponent.clone()
        } else {
            rhs.base_exponent.clone()
        };
        let off = |s: &Self| {
            let d = &s.base_exponent - &base;
            assert!(d.is_integer(), "series exponents differ by a non-integer");
            d.to_integer().to_usize().expect("offset fits")
        };
        let (oa, ob) = (off(&self), off(&rhs));
        let n = (oa + self.coeffs.len()).max(ob + rhs.coeffs.len());
        let get = |s: &Self, o: usize, i: usize| {
            i.checked_sub(o)
                .and_then(|k| s.coeffs.get(k).cloned())
                .unwrap_or_else(C::zero)
        };
        let coeffs = (0..n).map(|i| op(get(&self, oa, i), get(&rhs, ob, i))).collect();
        Self::new(base, coeffs)
    }
}

impl<C: Coefficient> PowerSeries<C> {
    pub fn scale(&self, s: &C::Scalar) -> Self {
        self.map(|c| c.scale(s))
    }
}

impl<F: Field> PowerSeries<F> {
    /// `j`-th derivative at `x > 0`.
    pub fn derivative_at(&self, x: f64, order: u32) -> f64 {
        if self.coeffs.is_empty() {
            return 0.0;
        }
        let lambda = rational_to_f64(&self.base_exponent);
        let mut acc = 0.0;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            let s = lambda + i as f64;
            acc = acc * x + c.to_f64() * falling_factorial_f64(s, order);
        }
        acc * x.powf(lambda - f64::from(order))
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.derivative_at(x, 0)
    }
}

pub(crate) fn falling_factorial_f64(s: f64, order: u32) -> f64 {
    (0..order).map(|k| s - f64::from(k)).product()
}

impl<C: Ring> Add for PowerSeries<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.combine(rhs, |a, b| a + b)
    }
}

impl<C: Ring> Sub for PowerSeries<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.combine(rhs, |a, b| a - b)
    }
}

impl<C: Ring> Neg for PowerSeries<C> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|c| -c.clone())
    }
}
