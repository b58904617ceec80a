//! Scalar abstractions shared by the exact and floating-point pipelines.
//!
//! The series engine runs over a coefficient [`Coefficient`] ring whose
//! scalars form a [`Field`]: `f32`, `f64` and [`BigRational`] are fields, and
//! [`Polynomial<F>`](crate::poly::Polynomial) over a field is a coefficient
//! ring (used to carry the Coulomb ratio as a formal symbol). Numerical
//! routines (quadrature, special functions, minimisers) are generic over
//! [`Real`].

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Float, FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Commutative ring with unit.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Ordered field used for exponents, Euler-polynomial values and scalings.
pub trait Field: Ring + Div<Output = Self> + PartialOrd {
    /// Whether arithmetic in this field is exact.
    const EXACT: bool;

    fn from_rational(q: &BigRational) -> Self;
    /// Finite `f64` into the field; exact for [`BigRational`].
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn abs_value(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Field for f64 {
    const EXACT: bool = false;
    fn from_rational(q: &BigRational) -> Self {
        rational_to_f64(q)
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Field for f32 {
    const EXACT: bool = false;
    fn from_rational(q: &BigRational) -> Self {
        rational_to_f64(q) as f32
    }
    fn from_f64(x: f64) -> Self {
        x as f32
    }
    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }
}

impl Field for BigRational {
    const EXACT: bool = true;
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).expect("finite float")
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

/// Ring of series coefficients, a module over its scalar field.
pub trait Coefficient: Ring {
    type Scalar: Field;

    fn from_scalar(s: Self::Scalar) -> Self;
    fn scale(&self, s: &Self::Scalar) -> Self;
    fn div_scalar(&self, s: &Self::Scalar) -> Self;
}

macro_rules! field_coefficient {
    ($($t:ty),*) => {$(
        impl Coefficient for $t {
            type Scalar = $t;
            fn from_scalar(s: $t) -> Self {
                s
            }
            fn scale(&self, s: &$t) -> Self {
                self.clone() * s.clone()
            }
            fn div_scalar(&self, s: &$t) -> Self {
                self.clone() / s.clone()
            }
        }
    )*};
}

field_coefficient!(f32, f64, BigRational);

/// Floating-point type for the numerical layers.
pub trait Real: Float + FromPrimitive + Debug + Send + Sync + 'static {
    /// Lossy conversion of an `f64` constant.
    fn c(x: f64) -> Self {
        Self::from_f64(x).expect("representable constant")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Correctly handles numerators and denominators too wide for `f64`.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // shift both to ~60 significant bits
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift_n = (nb - 60).max(0);
    let shift_d = (db - 60).max(0);
    let n = (q.numer().abs() >> shift_n as usize).to_f64().unwrap_or(0.0);
    let d = (q.denom() >> shift_d as usize).to_f64().unwrap_or(1.0);
    let sign = if q.is_negative() { -1.0 } else { 1.0 };
    sign * (n / d) * 2f64.powi((shift_n - shift_d) as i32)
}

/// `Ratio<i64>` into an arbitrary-precision rational.
pub fn small_to_big(q: Ratio<i64>) -> BigRational {
    BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wide_rationals_convert() {
        let big = BigInt::from(10).pow(400);
        let q = BigRational::new(big.clone() * BigInt::from(3), big);
        assert!((rational_to_f64(&q) - 3.0).abs() < 1e-15);
        let tiny = BigRational::new(BigInt::from(1), BigInt::from(7).pow(200));
        let expect = (-(200.0 * 7f64.ln())).exp();
        assert!((rational_to_f64(&tiny) / expect - 1.0).abs() < 1e-12);
    }

    #[test]
    fn float_roundtrip_is_exact() {
        let x = 0.1f64;
        let q = <BigRational as Field>::from_f64(x);
        assert_eq!(Field::to_f64(&q), x);
    }
}
