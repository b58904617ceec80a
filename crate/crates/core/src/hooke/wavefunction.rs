use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::poly::{real_roots, Polynomial};
use crate::quad::{integrate_points, QuadConfig};
use crate::series::{MonomialOperator, MonomialTerm};

use super::branch::{abs_m, coefficient_recurrence, QuantizationBranch};

/// Trap and field parameters, in units `ħ = m = e = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct HookeParams {
    pub z: f64,
    pub m: Rational64,
    pub omega0: f64,
    pub omega_l: f64,
}

impl HookeParams {
    /// `ω̃ = ½ √(ω_L² + ω_0²)`.
    pub fn omega_tilde(&self) -> f64 {
        0.5 * self.omega_l.hypot(self.omega0)
    }

    /// Field-free parameters reproducing the branch frequency.
    pub fn for_branch(b: &QuantizationBranch) -> Self {
        Self { z: b.z, m: b.m, omega0: 2.0 * b.omega, omega_l: 0.0 }
    }
}

/// Centre-of-mass factor `|ξ(R)|² = (β/π) e^{−βR²}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CenterOfMassState {
    pub beta: f64,
}

impl CenterOfMassState {
    pub fn new(beta: f64) -> Result<Self> {
        if beta > 0.0 && beta.is_finite() {
            Ok(Self { beta })
        } else {
            Err(Error::InvalidInput(format!("centre-of-mass width must be positive, got {beta}")))
        }
    }

    /// Ground state of the centre-of-mass oscillator (total mass 2, frequency
    /// `ω_0`), `β = 2 ω_0`.
    pub fn ground(params: &HookeParams) -> Self {
        Self { beta: 2.0 * params.omega0 }
    }

    pub fn density(&self, r: f64) -> f64 {
        self.beta / std::f64::consts::PI * (-self.beta * r * r).exp()
    }
}

/// `u(r) = N e^{−ω̃r²/2} r^{|m|+1/2} t(√ω̃ r)` with `∫ u² dr = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialWavefunction {
    pub branch: QuantizationBranch,
    /// `t(ρ)` in `ρ = √ω̃ r`.
    pub poly: Polynomial<f64>,
    pub norm: f64,
    /// Radial nodes in `r`, ascending.
    pub nodes: Vec<f64>,
}

impl RadialWavefunction {
    pub fn omega(&self) -> f64 {
        self.branch.omega
    }

    /// Exponent of the power prefactor, `|m| + ½`.
    pub fn power(&self) -> f64 {
        abs_m(self.branch.m) + 0.5
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.derivs(r)[0]
    }

    /// `[u, u′, u″]` at `r > 0`.
    pub fn derivs(&self, r: f64) -> [f64; 3] {
        let w = self.omega();
        let sw = w.sqrt();
        let s = self.power();
        let rho = sw * r;
        let d1 = self.poly.derivative();
        let d2 = d1.derivative();
        let t = self.poly.eval(&rho);
        let t1 = sw * d1.eval(&rho);
        let t2 = w * d2.eval(&rho);
        let g = self.norm * r.powf(s) * (-0.5 * w * r * r).exp();
        let lg = s / r - w * r;
        let lg2 = lg * lg - s / (r * r) - w;
        [g * t, g * (lg * t + t1), g * (lg2 * t + 2.0 * lg * t1 + t2)]
    }

    /// Radius beyond which `u²` is below `1e−30` of its integral; used to
    /// truncate integrals.
    pub fn cutoff(&self) -> f64 {
        let deg = self.poly.degree().unwrap_or(0) as f64;
        let rho_max = 9.0 + (2.0 * self.power() + 2.0 * deg).sqrt();
        rho_max / self.omega().sqrt()
    }

    /// Breakpoints for integrals of functions of `u`: origin, nodes, cutoff.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut p = vec![0.0];
        p.extend(self.nodes.iter().copied());
        p.push(self.cutoff());
        p
    }
}

/// Polynomial factor at the branch, normalization by quadrature and node
/// location.
pub fn build_wavefunction(branch: &QuantizationBranch) -> Result<RadialWavefunction> {
    let n = branch.n;
    let coeffs = coefficient_recurrence(&branch.kappa, n, branch.m);
    let poly = Polynomial::new(coeffs[..n].to_vec());
    let sw = branch.omega.sqrt();
    let nodes: Vec<f64> = real_roots(&poly)
        .into_iter()
        .filter(|rho| *rho > 0.0)
        .map(|rho| rho / sw)
        .collect();
    let mut wf = RadialWavefunction { branch: branch.clone(), poly, norm: 1.0, nodes };
    let q = integrate_points(|r| wf.eval(r).powi(2), &wf.breakpoints(), &QuadConfig::tol(1e-15, 1e-13))?;
    wf.norm = q.value.sqrt().recip();
    Ok(wf)
}

/// `−½ d²/dr² + ½(m² − ¼)/r² + ½ω̃² r² + Z/(2r)`.
pub fn radial_operator(params: &HookeParams) -> MonomialOperator<f64> {
    radial_operator_with(abs_m(params.m), params.omega_tilde(), params.z)
}

/// [`radial_operator`] for a real angular index `m ≥ 0`.
pub fn radial_operator_with(m: f64, w: f64, z: f64) -> MonomialOperator<f64> {
    MonomialOperator::new(vec![
        MonomialTerm::new(-0.5, 0, 2),
        MonomialTerm::new(0.5 * (m * m - 0.25), -2, 0),
        MonomialTerm::new(0.5 * w * w, 2, 0),
        MonomialTerm::new(0.5 * z, -1, 0),
    ])
}

/// `max |L u − ε_rel u| / max |u|` over the grid.
pub fn verify_branch(wf: &RadialWavefunction, params: &HookeParams, grid: &[f64]) -> f64 {
    let l = radial_operator(params);
    let eps = wf.branch.eps_rel;
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for &r in grid {
        let d = wf.derivs(r);
        worst = worst.max((l.apply_at(r, &d) - eps * d[0]).abs());
        scale = scale.max(d[0].abs());
    }
    if scale == 0.0 {
        worst
    } else {
        worst / scale
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Energies {
    /// Radial eigenvalue `ω̃(n + |m|)`.
    pub eps_rel: f64,
    /// Relative energy including the Larmor shift `½ m ω_L`.
    pub eps: f64,
    /// `2ε + ω_0 (N_cm + 1)`.
    pub e_total: f64,
    /// `2 ε_rel`, the convention of the quoted closed forms.
    pub eps_doubled: f64,
}

pub fn energies(branch: &QuantizationBranch, params: &HookeParams, cm_quanta: u32) -> Result<Energies> {
    let w = params.omega_tilde();
    if (w - branch.omega).abs() > 1e-12 * branch.omega.max(1.0) {
        return Err(Error::InconsistentParams(format!(
            "trap gives ω̃ = {w}, branch requires {}",
            branch.omega
        )));
    }
    let m = *params.m.numer() as f64 / *params.m.denom() as f64;
    let eps = branch.eps_rel + 0.5 * m * params.omega_l;
    Ok(Energies {
        eps_rel: branch.eps_rel,
        eps,
        e_total: 2.0 * eps + params.omega0 * (f64::from(cm_quanta) + 1.0),
        eps_doubled: branch.eps_doubled(),
    })
}

/// Log-linear grid of `points` radii on `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    let n = points.max(2) - 1;
    (0..=n).map(|i| (a + (b - a) * i as f64 / n as f64).exp()).collect()
}
