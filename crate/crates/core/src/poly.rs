//! Dense univariate polynomials over a coefficient ring.
//!
//! Used for the quantization polynomials in the Coulomb ratio, for Euler
//! polynomials, and for exact root counting with Sturm sequences.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, Schur};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Coefficient, Field, Ring};

/// Coefficients are stored lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> Polynomial<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Self::new(vec![C::zero(), C::one()])
    }

    pub fn monomial(c: C, power: usize) -> Self {
        let mut coeffs = vec![C::zero(); power + 1];
        coeffs[power] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    /// Polynomial `q` with `self(x) = x^offset q(x^2)` restricted to the
    /// coefficients of one parity; the others are discarded.
    pub fn parity_part(&self, offset: usize) -> Polynomial<C> {
        Polynomial::new(self.coeffs.iter().skip(offset).step_by(2).cloned().collect())
    }

    /// True when every coefficient of the opposite parity to `offset` vanishes.
    pub fn has_parity(&self, offset: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i % 2 == offset % 2 || c.is_zero())
    }
}

impl<C: Coefficient> Polynomial<C> {
    pub fn scale(&self, s: &C::Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }
}

impl<F: Field> Polynomial<F> {
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * F::from_i64(i as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![F::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd].clone() / lead.clone();
            if !q.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].clone() - q.clone() * dc.clone();
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let l = l.clone();
                Self::new(self.coeffs.iter().map(|c| c.clone() / l.clone()).collect())
            }
            None => self.clone(),
        }
    }

    /// The polynomial with every root kept once.
    pub fn squarefree(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            self.clone()
        } else {
            self.div_rem(&g).0
        }
    }

    /// Standard Sturm chain `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone()];
        let d = self.derivative();
        if d.is_zero() {
            return seq;
        }
        seq.push(d);
        loop {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(-r);
        }
        seq
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots(&self, a: &Bound<F>, b: &Bound<F>) -> usize {
        if self.is_zero() {
            return 0;
        }
        let seq = self.sturm_sequence();
        let va = sign_variations(&seq, a);
        let vb = sign_variations(&seq, b);
        va.saturating_sub(vb)
    }

    /// Distinct real roots in the open interval `(a, b)`.
    pub fn count_roots_open(&self, a: &Bound<F>, b: &Bound<F>) -> usize {
        let n = self.count_roots(a, b);
        match b {
            Bound::Finite(x) if self.eval(x).is_zero() => n - 1,
            _ => n,
        }
    }
}

/// Interval endpoint for Sturm counting.
#[derive(Clone, Debug)]
pub enum Bound<F> {
    NegInfinity,
    Finite(F),
    PosInfinity,
}

fn sign_at<F: Field>(p: &Polynomial<F>, at: &Bound<F>) -> i8 {
    let sign = |v: &F| {
        if v.is_zero() {
            0
        } else if *v > F::zero() {
            1
        } else {
            -1
        }
    };
    match at {
        Bound::Finite(x) => sign(&p.eval(x)),
        Bound::PosInfinity => p.leading().map_or(0, sign),
        Bound::NegInfinity => {
            let s = p.leading().map_or(0, sign);
            if p.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }
    }
}

fn sign_variations<F: Field>(seq: &[Polynomial<F>], at: &Bound<F>) -> usize {
    let signs: Vec<i8> = seq.iter().map(|p| sign_at(p, at)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

impl<C: Ring> Zero for Polynomial<C> {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Ring> One for Polynomial<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Ring> Add for Polynomial<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<C: Ring> Sub for Polynomial<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<C: Ring> Neg for Polynomial<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<C: Ring> Mul for Polynomial<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl<F: Field> Coefficient for Polynomial<F> {
    type Scalar = F;
    fn from_scalar(s: F) -> Self {
        Self::constant(s)
    }
    fn scale(&self, s: &F) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }
    fn div_scalar(&self, s: &F) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() / s.clone()).collect())
    }
}

/// Complex roots with imaginary part below this are accepted as real.
pub const REAL_ROOT_IMAG_TOL: f64 = 1e-10;

/// Real roots of a floating-point polynomial, ascending.
///
/// Eigenvalues of the companion matrix, then Newton polishing on the
/// original coefficients. If the Schur iteration stalls, the roots are
/// isolated exactly on the binary values of the coefficients instead.
pub fn real_roots(p: &Polynomial<f64>) -> Vec<f64> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    // factor out zero roots
    let zeros = p.coeffs().iter().take_while(|c| **c == 0.0).count();
    let reduced = Polynomial::new(p.coeffs()[zeros..].to_vec());
    let mut roots: Vec<f64> = if zeros > 0 { vec![0.0] } else { Vec::new() };
    let rdeg = deg - zeros;
    if rdeg == 0 {
        return roots;
    }
    let lead = reduced.coeffs()[rdeg];
    let companion = DMatrix::from_fn(rdeg, rdeg, |i, j| {
        if i == 0 {
            -reduced.coeffs()[rdeg - 1 - j] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let Some(schur) = Schur::try_new(companion, f64::EPSILON, 5000) else {
        let exact = reduced.map(|&c| <BigRational as Field>::from_f64(c));
        roots.extend(isolate_and_refine(&exact));
        roots.sort_by(f64::total_cmp);
        return roots;
    };
    for z in schur.complex_eigenvalues().iter() {
        if z.im.abs() < REAL_ROOT_IMAG_TOL * z.re.abs().max(1.0) {
            roots.push(polish_root(&reduced, z.re));
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * a.abs().max(1.0));
    roots
}

/// Newton iterations until the step stalls at rounding level.
pub fn polish_root(p: &Polynomial<f64>, mut x: f64) -> f64 {
    let d = p.derivative();
    for _ in 0..50 {
        let fx = p.eval(&x);
        let dx = d.eval(&x);
        if dx == 0.0 || !fx.is_finite() {
            break;
        }
        let step = fx / dx;
        let next = x - step;
        if !next.is_finite() {
            break;
        }
        let done = step.abs() <= 1e-16 * x.abs().max(1e-300);
        x = next;
        if done {
            break;
        }
    }
    x
}

/// Real roots of an exact polynomial.
///
/// Companion-matrix roots are accepted when their count matches the exact
/// Sturm count; otherwise roots are isolated by Sturm bisection and refined.
pub fn real_roots_exact(p: &Polynomial<BigRational>) -> Vec<f64> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let expected = p.count_roots(&Bound::NegInfinity, &Bound::PosInfinity);
    let numeric = real_roots(&p.map(|c| c.to_f64()));
    if numeric.len() == expected {
        return numeric;
    }
    isolate_and_refine(p)
}

fn isolate_and_refine(p: &Polynomial<BigRational>) -> Vec<f64> {
    let sf = p.squarefree();
    let deg = sf.degree().unwrap_or(0);
    let lead = sf.coeffs()[deg].abs();
    let cauchy = sf.coeffs()[..deg]
        .iter()
        .map(|c| c.abs() / lead.clone())
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a })
        + BigRational::one();
    let mut stack = vec![(-cauchy.clone(), cauchy)];
    let mut intervals = Vec::new();
    let two = BigRational::from_integer(BigInt::from(2));
    while let Some((a, b)) = stack.pop() {
        let n = sf.count_roots(&Bound::Finite(a.clone()), &Bound::Finite(b.clone()));
        match n {
            0 => {}
            1 => intervals.push((a, b)),
            _ => {
                let mid = (a.clone() + b.clone()) / two.clone();
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
    let pf = sf.map(|c| c.to_f64());
    let mut roots: Vec<f64> = intervals
        .into_iter()
        .map(|(a, b)| {
            let (mut lo, mut hi) = (a.to_f64(), b.to_f64());
            if sf.eval(&b).is_zero() {
                return hi;
            }
            let flo = pf.eval(&lo);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if (pf.eval(&mid) > 0.0) == (flo > 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            polish_root(&pf, 0.5 * (lo + hi))
        })
        .collect();
    roots.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sturm_counts_roots() {
        // (x-1)(x-2)(x+3)
        let p = Polynomial::new(vec![q(6, 1), q(-7, 1), q(0, 1), q(1, 1)]);
        assert_eq!(p.count_roots(&Bound::NegInfinity, &Bound::PosInfinity), 3);
        assert_eq!(p.count_roots(&Bound::Finite(q(0, 1)), &Bound::PosInfinity), 2);
        assert_eq!(p.count_roots_open(&Bound::Finite(q(0, 1)), &Bound::Finite(q(2, 1))), 1);
    }

    #[test]
    fn companion_roots_match_sturm() {
        let p = Polynomial::new(vec![q(6, 1), q(-7, 1), q(0, 1), q(1, 1)]);
        let r = real_roots_exact(&p);
        assert_eq!(r.len(), 3);
        for (got, want) in r.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn isolation_handles_double_root() {
        // (x-1)^2 (x+2)
        let p = Polynomial::new(vec![q(2, 1), q(-3, 1), q(0, 1), q(1, 1)]);
        let r = isolate_and_refine(&p);
        assert_eq!(r.len(), 2);
        assert!((r[0] + 2.0).abs() < 1e-12 && (r[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = Polynomial::new(vec![q(1, 2), q(3, 1), q(-2, 3), q(5, 1)]);
        let b = Polynomial::new(vec![q(1, 1), q(1, 7)]);
        let (qq, r) = a.div_rem(&b);
        assert_eq!(qq * b + r, a);
    }
}
