use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::{real_roots_exact, Polynomial};
use crate::scalar::{Coefficient, Field};

use super::power::PowerSeries;

/// Polynomial `F(D)` in the Euler operator `D = x d/dx`.
///
/// On monomials `F(D) x^s = F(s) x^s`.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerPolynomial<F> {
    poly: Polynomial<F>,
}

impl<F: Field> EulerPolynomial<F> {
    /// Panics when `poly` is constant.
    pub fn new(poly: Polynomial<F>) -> Self {
        assert!(poly.degree().unwrap_or(0) >= 1, "Euler polynomial must be nonconstant");
        Self { poly }
    }

    /// `D(D + 2m)`, the radial Hooke operator.
    pub fn hooke(m: F) -> Self {
        let two = F::from_i64(2);
        Self::new(Polynomial::new(vec![F::zero(), two * m, F::one()]))
    }

    /// `D(D + 2m + 1)`, the reduced sextic operator.
    pub fn qes(m: F) -> Self {
        let two = F::from_i64(2);
        Self::new(Polynomial::new(vec![F::zero(), two * m + F::one(), F::one()]))
    }

    pub fn poly(&self) -> &Polynomial<F> {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    pub fn eval(&self, s: &F) -> F {
        self.poly.eval(s)
    }

    pub fn eval_at(&self, s: &BigRational) -> F {
        self.eval(&F::from_rational(s))
    }

    /// Multiplies the coefficient at each exponent `s` by `F(s)`.
    pub fn apply<C: Coefficient<Scalar = F>>(&self, y: &PowerSeries<C>) -> PowerSeries<C> {
        let coeffs = y
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale(&self.eval_at(&y.exponent_of(i))))
            .collect();
        PowerSeries::new(y.base_exponent().clone(), coeffs)
    }

    /// Expansion as `Σ c_j x^j d^j` using `D^k = Σ_j S(k, j) x^j d^j`.
    pub fn to_operator<C: Coefficient<Scalar = F>>(&self) -> MonomialOperator<C> {
        let deg = self.degree();
        let stirling = stirling2(deg);
        let mut terms = Vec::new();
        for j in 1..=deg {
            let mut c = F::zero();
            for (k, fk) in self.poly.coeffs().iter().enumerate() {
                if k >= j {
                    c = c + fk.clone() * F::from_i64(stirling[k][j]);
                }
            }
            if !c.is_zero() {
                terms.push(MonomialTerm::new(C::from_scalar(c), j as i32, j as u32));
            }
        }
        let c0 = self.poly.coeff(0);
        if !c0.is_zero() {
            terms.push(MonomialTerm::new(C::from_scalar(c0), 0, 0));
        }
        MonomialOperator::new(terms)
    }
}

/// Stirling numbers of the second kind `S(k, j)` for `k, j ≤ n`.
fn stirling2(n: usize) -> Vec<Vec<i64>> {
    let mut s = vec![vec![0i64; n + 1]; n + 1];
    s[0][0] = 1;
    for k in 1..=n {
        for j in 1..=k {
            s[k][j] = j as i64 * s[k - 1][j] + s[k - 1][j - 1];
        }
    }
    s
}

/// `coeff · x^shift · (d/dx)^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialTerm<C> {
    pub coeff: C,
    pub shift: i32,
    pub order: u32,
}

impl<C> MonomialTerm<C> {
    pub fn new(coeff: C, shift: i32, order: u32) -> Self {
        Self { coeff, shift, order }
    }

    /// Exponent change on a monomial, `shift - order`.
    pub fn degree_shift(&self) -> i32 {
        self.shift - self.order as i32
    }
}

/// Finite sum of [`MonomialTerm`]s.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialOperator<C> {
    terms: Vec<MonomialTerm<C>>,
}

impl<C: Coefficient> MonomialOperator<C> {
    /// Zero-coefficient terms are dropped.
    pub fn new(terms: Vec<MonomialTerm<C>>) -> Self {
        Self {
            terms: terms.into_iter().filter(|t| !t.coeff.is_zero()).collect(),
        }
    }

    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn terms(&self) -> &[MonomialTerm<C>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest exponent change over the terms; `None` for the zero operator.
    pub fn net_degree_shift(&self) -> Option<i32> {
        self.terms.iter().map(MonomialTerm::degree_shift).min()
    }

    /// Whether the operator can serve as the perturbation in a series solve.
    pub fn is_admissible(&self) -> bool {
        self.net_degree_shift().is_none_or(|s| s >= 1)
    }

    pub fn plus(mut self, other: Self) -> Self {
        self.terms.extend(other.terms);
        self
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> MonomialOperator<D> {
        MonomialOperator::new(
            self.terms
                .iter()
                .map(|t| MonomialTerm::new(f(&t.coeff), t.shift, t.order))
                .collect(),
        )
    }

    /// Exact term-by-term action.
    pub fn apply(&self, y: &PowerSeries<C>) -> PowerSeries<C> {
        let base = y.base_exponent();
        let (Some(lo), Some(hi)) = (
            self.terms.iter().map(MonomialTerm::degree_shift).min(),
            self.terms.iter().map(MonomialTerm::degree_shift).max(),
        ) else {
            return PowerSeries::zero(base.clone());
        };
        if y.is_empty() {
            return PowerSeries::zero(base + int(lo));
        }
        let width = (hi - lo) as usize;
        let mut out = vec![C::zero(); y.len() + width];
        for (i, c) in y.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = y.exponent_of(i);
            for t in &self.terms {
                let ff = falling_factorial::<C::Scalar>(&s, t.order);
                if ff.is_zero() {
                    continue;
                }
                let k = i + (t.degree_shift() - lo) as usize;
                // small factors first; `c` may carry large numerators
                let add = t.coeff.scale(&ff) * c.clone();
                out[k] = out[k].clone() + add;
            }
        }
        PowerSeries::new(base + int(lo), out)
    }
}

impl<F: Field + Coefficient> MonomialOperator<F> {
    /// Value of the operator applied to a function with the given
    /// derivatives `[f(x), f'(x), f''(x), …]` at `x`.
    pub fn apply_at(&self, x: f64, derivs: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coeff.to_f64() * x.powi(t.shift) * derivs[t.order as usize])
            .sum()
    }

    pub fn max_order(&self) -> u32 {
        self.terms.iter().map(|t| t.order).max().unwrap_or(0)
    }

    /// Operator applied to a truncated series, evaluated at `x > 0`.
    pub fn apply_series_at(&self, x: f64, y: &PowerSeries<F>) -> f64 {
        let derivs: Vec<f64> = (0..=self.max_order()).map(|j| y.derivative_at(x, j)).collect();
        self.apply_at(x, &derivs)
    }
}

/// `s(s-1)…(s-j+1)` in the target field.
pub(crate) fn falling_factorial<F: Field>(s: &BigRational, order: u32) -> F {
    let mut acc = BigRational::one();
    for k in 0..order {
        acc *= s - int(k as i32);
    }
    F::from_rational(&acc)
}

fn int(k: i32) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// Roots of an exact Euler polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct IndicialRoots {
    /// Rational roots with multiplicity, descending.
    pub rational: Vec<BigRational>,
    /// Remaining real roots, approximate and ascending.
    pub irrational: Vec<f64>,
}

/// Rational roots by the rational-root theorem, then the remaining real
/// roots numerically.
pub fn indicial_roots(f: &EulerPolynomial<BigRational>) -> IndicialRoots {
    let mut rest = primitive_integer(f.poly());
    let mut rational = Vec::new();
    while rest.coeff(0).is_zero() && rest.degree().unwrap_or(0) >= 1 {
        rational.push(BigRational::zero());
        rest = Polynomial::new(rest.coeffs()[1..].to_vec());
    }
    'deflate: while rest.degree().unwrap_or(0) >= 1 {
        let deg = rest.degree().unwrap_or(0);
        let lead = rest.coeffs()[deg].numer().abs();
        let constant = rest.coeffs()[0].numer().abs();
        for q in divisors(&lead) {
            for p in divisors(&constant) {
                for sign in [1, -1] {
                    let cand = BigRational::new(p.clone() * BigInt::from(sign), q.clone());
                    if rest.eval(&cand).is_zero() {
                        rational.push(cand.clone());
                        let lin = Polynomial::new(vec![-cand, BigRational::one()]);
                        rest = rest.div_rem(&lin).0;
                        continue 'deflate;
                    }
                }
            }
        }
        break;
    }
    rational.sort_by(|a, b| b.cmp(a));
    let irrational = if rest.degree().unwrap_or(0) >= 1 {
        real_roots_exact(&rest)
    } else {
        Vec::new()
    };
    IndicialRoots { rational, irrational }
}

/// Integer-coefficient multiple with unit content.
fn primitive_integer(p: &Polynomial<BigRational>) -> Polynomial<BigRational> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let g = if g.is_zero() { BigInt::one() } else { g };
    Polynomial::new(
        ints.into_iter()
            .map(|c| BigRational::from_integer(c / &g))
            .collect(),
    )
}

/// Positive divisors by trial division; intended for the small leading and
/// constant coefficients of Euler polynomials.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let Some(v) = n.to_u64() else {
        return vec![BigInt::one(), n.clone()];
    };
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= v {
        if v % d == 0 {
            small.push(BigInt::from(d));
            if d != v / d {
                large.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
