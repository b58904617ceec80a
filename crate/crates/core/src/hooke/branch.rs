use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{polish_root, real_roots_exact, Polynomial};
use crate::scalar::{rational_to_f64, small_to_big, Coefficient, Field};
use crate::series::{EulerPolynomial, MonomialOperator, MonomialTerm};

/// One admissible `(n, m, Z)` eigenstate family member: the Coulomb ratio
/// `κ = Z/√ω̃`, the frequency it fixes and the relative-motion energy.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantizationBranch {
    /// The polynomial factor has degree `n - 1`.
    pub n: usize,
    pub m: Rational64,
    pub z: f64,
    pub kappa: f64,
    /// `κ²` when it is rational.
    pub kappa_sq_exact: Option<BigRational>,
    pub omega: f64,
    /// Eigenvalue of the radial operator, `ω̃ (n + |m|)`.
    pub eps_rel: f64,
    /// Reduced energy `2 (n + |m|)`.
    pub eps_prime: f64,
}

impl QuantizationBranch {
    /// Branch with a given Coulomb ratio; `ω̃ = Z²/κ²`.
    pub fn from_kappa(n: usize, m: Rational64, z: f64, kappa: f64) -> Self {
        let omega = (z / kappa).powi(2);
        Self::assemble(n, m, z, kappa, None, omega)
    }

    /// `Z = 0` oscillator state at frequency `ω̃`; `n` must be odd.
    pub fn oscillator(n: usize, m: Rational64, omega: f64) -> Result<Self> {
        if n % 2 == 0 || omega <= 0.0 {
            return Err(Error::NoBranch { n, m: m.to_string(), z: 0.0 });
        }
        Ok(Self::assemble(n, m, 0.0, 0.0, Some(BigRational::zero()), omega))
    }

    fn assemble(n: usize, m: Rational64, z: f64, kappa: f64, ksq: Option<BigRational>, omega: f64) -> Self {
        let level = n as f64 + abs_m(m);
        Self {
            n,
            m,
            z,
            kappa,
            kappa_sq_exact: ksq,
            omega,
            eps_rel: omega * level,
            eps_prime: 2.0 * level,
        }
    }

    /// `ω̃` as an exact rational when `Z` is an integer and `κ²` is rational.
    pub fn omega_exact(&self) -> Option<BigRational> {
        let ksq = self.kappa_sq_exact.as_ref().filter(|k| !k.is_zero())?;
        (self.z.fract() == 0.0).then(|| {
            let z = BigRational::from_integer(BigInt::from(self.z as i64));
            &z * &z / ksq
        })
    }

    /// `Ẽ = ε′ − 2|m| − 2 = 2(n − 1)`.
    pub fn e_tilde(&self) -> f64 {
        2.0 * (self.n as f64 - 1.0)
    }

    /// Energy in the doubled convention of the quoted closed forms, twice the radial eigenvalue.
    pub fn eps_doubled(&self) -> f64 {
        2.0 * self.eps_rel
    }
}

pub(crate) fn abs_m(m: Rational64) -> f64 {
    rational_to_f64(&small_to_big(m.abs()))
}

fn scalar_of<F: Field>(m: Rational64) -> F {
    F::from_rational(&small_to_big(m))
}

/// `t` coefficients `a_0 … a_{len-1}` at arbitrary `Ẽ`:
/// `j(j + 2|m|) a_j = κ a_{j-1} + (2(j − 2) − Ẽ) a_{j-2}`, `a_0 = 1`.
pub fn recurrence<C: Coefficient>(kappa: &C, e_tilde: &C::Scalar, m: Rational64, len: usize) -> Vec<C> {
    let am: C::Scalar = scalar_of(m.abs());
    let two = C::Scalar::from_i64(2);
    let mut a: Vec<C> = Vec::with_capacity(len);
    for j in 0..len {
        if j == 0 {
            a.push(C::one());
            continue;
        }
        let jj = C::Scalar::from_i64(j as i64);
        let mut rhs = kappa.clone() * a[j - 1].clone();
        if j >= 2 {
            let c = two.clone() * C::Scalar::from_i64(j as i64 - 2) - e_tilde.clone();
            rhs = rhs + a[j - 2].scale(&c);
        }
        let denom = jj.clone() * (jj + two.clone() * am.clone());
        a.push(rhs.div_scalar(&denom));
    }
    a
}

/// `a_0 … a_{n_target+1}` with the energy fixed by `ε′ = 2(n_target + |m|)`.
pub fn coefficient_recurrence<C: Coefficient>(kappa: &C, n_target: usize, m: Rational64) -> Vec<C> {
    let e = C::Scalar::from_i64(2 * (n_target as i64 - 1));
    recurrence(kappa, &e, m, n_target + 2)
}

/// Polynomial in `κ` whose roots make the series terminate at degree
/// `n − 1`; only powers of the parity of `n` occur.
pub fn quantization_polynomial(n: usize, m: Rational64) -> Polynomial<BigRational> {
    let kappa = Polynomial::<BigRational>::x();
    coefficient_recurrence(&kappa, n, m).swap_remove(n)
}

/// Series form of the radial problem in `ρ = √ω̃ r`:
/// `[D(D + 2|m|) + Ẽρ² − 2ρ³ d/dρ − κρ] t = 0`.
pub fn radial_series_operator<C: Coefficient>(
    kappa: &C,
    e_tilde: &C::Scalar,
    m: Rational64,
) -> (EulerPolynomial<C::Scalar>, MonomialOperator<C>) {
    let f = EulerPolynomial::hooke(scalar_of(m.abs()));
    let p = MonomialOperator::new(vec![
        MonomialTerm::new(C::from_scalar(e_tilde.clone()), 2, 0),
        MonomialTerm::new(C::from_scalar(C::Scalar::from_i64(-2)), 3, 1),
        MonomialTerm::new(-kappa.clone(), 1, 0),
    ]);
    (f, p)
}

/// Every branch of sign-compatible real `κ`, sorted by descending `ω̃`.
pub fn solve_frequencies(n: usize, m: impl Into<Rational64>, z: f64) -> Result<Vec<QuantizationBranch>> {
    let m = m.into();
    let no_branch = || Error::NoBranch { n, m: m.to_string(), z };
    if n < 2 || z == 0.0 || !z.is_finite() {
        return Err(no_branch());
    }
    let q = quantization_polynomial(n, m).parity_part(n % 2);
    let mut branches: Vec<QuantizationBranch> = match q.degree() {
        None | Some(0) => Vec::new(),
        Some(1) => {
            let ksq = -q.coeff(0) / q.coeff(1);
            if ksq.is_positive() {
                let kappa = z.signum() * rational_to_f64(&ksq).sqrt();
                let mut b = QuantizationBranch::from_kappa(n, m, z, kappa);
                b.omega = rational_to_f64(&(BigRational::from_float(z * z).expect("finite") / &ksq));
                b.eps_rel = b.omega * (n as f64 + abs_m(m));
                b.kappa_sq_exact = Some(ksq);
                vec![b]
            } else {
                Vec::new()
            }
        }
        Some(_) => {
            let qf = q.map(rational_to_f64);
            squared_roots(&q)
                .into_iter()
                .filter(|y| *y > 0.0)
                .map(|y| {
                    let y = polish_root(&qf, y);
                    QuantizationBranch::from_kappa(n, m, z, z.signum() * y.sqrt())
                })
                .collect()
        }
    };
    if branches.is_empty() {
        return Err(no_branch());
    }
    branches.sort_by(|a, b| b.omega.total_cmp(&a.omega));
    Ok(branches)
}

/// Real roots in `y = κ²`; the quadratic case uses the closed form.
fn squared_roots(q: &Polynomial<BigRational>) -> Vec<f64> {
    if q.degree() == Some(2) {
        let (c, b, a) = (
            rational_to_f64(&q.coeff(0)),
            rational_to_f64(&q.coeff(1)),
            rational_to_f64(&q.coeff(2)),
        );
        let disc = b * b - 4.0 * a * c;
        if disc < 0.0 {
            return Vec::new();
        }
        // cancellation-free pair
        let s = -0.5 * (b + b.signum() * disc.sqrt());
        let mut r = vec![s / a, c / s];
        r.sort_by(f64::total_cmp);
        return r;
    }
    real_roots_exact(q)
}
