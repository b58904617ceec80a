pub mod error;
pub mod hooke;
pub mod observables;
pub mod optimize;
pub mod poly;
pub mod qes;
pub mod quad;
pub mod scalar;
pub mod series;
pub mod special;

pub use error::{Error, Result};

use num_rational::BigRational;

pub type ExactPolynomial = poly::Polynomial<BigRational>;
pub type ExactSeries = series::PowerSeries<BigRational>;
/// Series whose coefficients are polynomials in a free parameter.
pub type SymbolicSeries = series::PowerSeries<ExactPolynomial>;
pub type FloatSeries = series::PowerSeries<f64>;
pub type Series32 = series::PowerSeries<f32>;
