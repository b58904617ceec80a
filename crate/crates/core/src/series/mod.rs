//! Series solutions of `[F(D) + P(x, d/dx)] y = 0` about a regular
//! singular point, with `D = x d/dx`.
//!
//! When `F(D) x^λ = 0` and `P` raises degrees, the formal inverse
//! `y = Σ_ν (-F(D)⁻¹ P)^ν x^λ` converges order by order.

mod operator;
mod power;
mod solve;

pub use operator::{indicial_roots, EulerPolynomial, IndicialRoots, MonomialOperator, MonomialTerm};
pub use power::PowerSeries;
pub use solve::{invert_euler, residual, series_solve};
