use num_rational::Rational64;
use num_traits::Signed;

use crate::hooke::{radial_operator_with, QuantizationBranch};
use crate::scalar::{rational_to_f64, small_to_big};
use crate::series::PowerSeries;

use super::sextic::SexticParams;

/// Hooke parameters equivalent to a sextic oscillator at energy `E` under
/// `x² = r`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HookeEquivalence {
    /// `√γ / 2`.
    pub omega: f64,
    /// `−E / 2`.
    pub z: f64,
    /// `(2m + 1) / 4`.
    pub m_tilde: f64,
    /// `−α / 8`.
    pub eps_rel: f64,
}

impl HookeEquivalence {
    /// Inverse dictionary: `(γ, α, m)` and the sextic energy.
    pub fn to_sextic(&self) -> (SexticParams, f64) {
        let p = SexticParams {
            alpha: -8.0 * self.eps_rel,
            gamma: 4.0 * self.omega * self.omega,
            m: (4.0 * self.m_tilde - 1.0) / 2.0,
        };
        (p, -2.0 * self.z)
    }
}

pub fn map_to_hooke(p: &SexticParams, e: f64) -> HookeEquivalence {
    HookeEquivalence {
        omega: 0.5 * p.sqrt_gamma(),
        z: -0.5 * e,
        m_tilde: (2.0 * p.m + 1.0) / 4.0,
        eps_rel: -p.alpha / 8.0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SexticImage {
    pub params: SexticParams,
    pub energy: f64,
    /// Degree in `x` of the polynomial sector the branch lands in.
    pub degree: usize,
    /// Sextic `m = (4|m̃| − 1)/2` is a non-negative integer.
    pub integer_m: bool,
    pub m_exact: Rational64,
}

/// `γ = 4ω̃²`, `E = −2Z`, `α = −8ε_rel`, `m = (4|m̃| − 1)/2`.
pub fn map_from_hooke(branch: &QuantizationBranch) -> SexticImage {
    let m_exact = (branch.m.abs() * 4 - 1) / 2;
    let params = SexticParams {
        alpha: -8.0 * branch.eps_rel,
        gamma: 4.0 * branch.omega * branch.omega,
        m: rational_to_f64(&small_to_big(m_exact)),
    };
    SexticImage {
        params,
        energy: -2.0 * branch.z,
        degree: 2 * (branch.n - 1),
        integer_m: m_exact.is_integer() && m_exact >= Rational64::from(0),
        m_exact,
    }
}

/// `φ(r) = r^{1/4} ψ₀(√r) u(√r)`, the Hooke radial function of a reduced
/// sextic eigenfunction `u`.
#[derive(Clone, Debug)]
pub struct MappedState {
    pub params: SexticParams,
    pub u: PowerSeries<f64>,
}

impl MappedState {
    /// `[φ, φ′, φ″]` at `r > 0`.
    pub fn derivs(&self, r: f64) -> [f64; 3] {
        let x = r.sqrt();
        let sg = self.params.sqrt_gamma();
        let mp = self.params.m + 1.0;
        // Ψ = ψ₀ u in x, via the logarithmic derivative of ψ₀
        let l = mp / x - sg * x.powi(3);
        let l1 = -mp / (x * x) - 3.0 * sg * x * x;
        let (u0, u1, u2) = (self.u.eval(x), self.u.derivative_at(x, 1), self.u.derivative_at(x, 2));
        let p0 = self.params.psi0(x);
        let psi = p0 * u0;
        let psi1 = p0 * (l * u0 + u1);
        let psi2 = p0 * ((l1 + l * l) * u0 + 2.0 * l * u1 + u2);
        // chain rule for x = √r, then the r^{1/4} factor
        let dx = 0.5 / x;
        let dxx = -0.25 / (x * r);
        let f0 = psi;
        let f1 = psi1 * dx;
        let f2 = psi2 * dx * dx + psi1 * dxx;
        let q = r.powf(0.25);
        let q1 = 0.25 * q / r;
        let q2 = -0.75 * q1 / r;
        [q * f0, q1 * f0 + q * f1, q2 * f0 + 2.0 * q1 * f1 + q * f2]
    }

    /// `max |L φ − ε φ| / max |φ|` for the equivalent Hooke operator.
    pub fn hooke_residual(&self, energy: f64, grid: &[f64]) -> f64 {
        let h = map_to_hooke(&self.params, energy);
        let l = radial_operator_with(h.m_tilde.abs(), h.omega, h.z);
        let mut worst = 0.0f64;
        let mut scale = 0.0f64;
        for &r in grid {
            let d = self.derivs(r);
            worst = worst.max((l.apply_at(r, &d) - h.eps_rel * d[0]).abs());
            scale = scale.max(d[0].abs());
        }
        worst / scale.max(f64::MIN_POSITIVE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hooke::solve_frequencies;

    #[test]
    fn dictionary_examples() {
        let p = SexticParams::new(-8.0 * 1.7, 4.0, 0.0).unwrap();
        let h = map_to_hooke(&p, 0.3);
        assert_eq!(h.omega, 1.0);
        assert_eq!(h.eps_rel, 1.7);
        assert_eq!(h.m_tilde, 0.25);
        let (back, e) = h.to_sextic();
        assert_eq!((back, e), (p, 0.3));
    }

    #[test]
    fn hooke_branch_lands_on_condition() {
        let b = solve_frequencies(2, Rational64::new(1, 4), 1.0).unwrap().remove(0);
        let img = map_from_hooke(&b);
        assert!(img.integer_m && img.params.m == 0.0);
        assert!(img.params.condition_residual(img.degree) < 1e-12);
        assert_eq!(img.energy, -2.0);
        let b = solve_frequencies(2, 0, -1.0).unwrap().remove(0);
        let img = map_from_hooke(&b);
        assert!(!img.integer_m);
        assert_eq!(img.energy, 2.0);
    }

    #[test]
    fn polynomial_state_solves_hooke_equation() {
        use crate::hooke::log_grid;
        use crate::qes::{qes_condition, qes_exact_energies, qes_series};
        for (n, m, gamma) in [(2, 0i64, 1.0), (2, 1, 4.0), (4, 0, 1.0), (4, 2, 0.5)] {
            let p = SexticParams::new(qes_condition(n, m as f64, gamma), gamma, m as f64).unwrap();
            for e in qes_exact_energies(n, m.into(), gamma).unwrap() {
                let u = qes_series(e, &p, n + 6).unwrap();
                let state = MappedState { params: p, u };
                let r = state.hooke_residual(e, &log_grid(1e-3, 12.0, 400));
                assert!(r < 1e-9, "n={n} m={m} E={e}: {r}");
            }
        }
    }
}
