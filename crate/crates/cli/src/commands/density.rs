use clap::{Args, ValueEnum};
use hooke_core::hooke::{build_wavefunction, CenterOfMassState, HookeParams, QuantizationBranch, RadialWavefunction};
use hooke_core::observables::{
    closed_form_density, fit_cm_width, max_relative_deviation, profile_csv, AngularMethod, ClosedFormCase,
    DensityProfile, QuadratureDensity,
};
use num_rational::Rational64;
use serde::Serialize;

use crate::commands::solve::branches;
use crate::error::{config, CliResult};
use crate::output::{sibling, to_json, write_file, OutputArgs};
use crate::parse::{parse_rational, GridSpec, Spacing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Quadrature,
    ClosedForm,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Angular {
    Bessel,
    Numerical,
}

/// Selects a state either by catalogue id or by `(n, m, Z)`.
#[derive(Args, Debug, Clone)]
pub struct StateArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    #[arg(long = "Z", allow_hyphen_values = true)]
    pub z: Option<f64>,
    /// Trap frequency for `Z = 0`.
    #[arg(long)]
    pub omega: Option<f64>,
    /// Which branch when several frequencies solve the same `(n, m, Z)`,
    /// counted from the highest.
    #[arg(long, default_value_t = 0)]
    pub branch: usize,
}

impl StateArgs {
    pub fn resolve(&self) -> CliResult<QuantizationBranch> {
        let n = self.n.ok_or_else(|| config("--n is required"))?;
        let m: Rational64 = match &self.m {
            Some(s) => parse_rational(s)?,
            None => 0.into(),
        };
        let z = self.z.ok_or_else(|| config("--Z is required"))?;
        let mut all = branches(n, m, z, self.omega)?;
        if self.branch >= all.len() {
            return Err(config(format!("branch {} requested but only {} exist", self.branch, all.len())));
        }
        Ok(all.swap_remove(self.branch))
    }
}

#[derive(Args, Debug)]
pub struct DensityArgs {
    /// Catalogued closed form, e.g. `n2m0Zp1`.
    #[arg(long)]
    pub case: Option<String>,
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    #[arg(long, value_enum, default_value = "bessel")]
    pub angular: Angular,
    /// `min:max:points`; defaults to 512 points up to `12/√ω̃`.
    #[arg(long)]
    pub grid: Option<String>,
    /// Linear for an explicit `--grid`, log for the default grid.
    #[arg(long, value_enum)]
    pub spacing: Option<Spacing>,
    /// Centre-of-mass Gaussian exponent β.
    #[arg(long)]
    pub cm_width: Option<f64>,
    /// Relative tolerance of the radial quadrature.
    #[arg(long)]
    pub quad_tol: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Serialize)]
pub struct StateInfo {
    pub n: usize,
    pub m: String,
    #[serde(rename = "Z")]
    pub z: f64,
    pub omega: f64,
}

impl From<&QuantizationBranch> for StateInfo {
    fn from(b: &QuantizationBranch) -> Self {
        Self { n: b.n, m: b.m.to_string(), z: b.z, omega: b.omega }
    }
}

#[derive(Debug, Serialize)]
pub struct GridInfo {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub spacing: &'static str,
}

impl From<&GridSpec> for GridInfo {
    fn from(g: &GridSpec) -> Self {
        let spacing = match g.spacing {
            Spacing::Linear => "linear",
            Spacing::Log => "log",
        };
        Self { min: g.min, max: g.max, points: g.points, spacing }
    }
}

#[derive(Debug, Serialize)]
pub struct CmWidth {
    pub beta: f64,
    /// `override`, `fitted` or `convention`.
    pub source: &'static str,
    /// `β = 2ω₀` of the centre-of-mass ground state.
    pub convention: f64,
}

#[derive(Debug, Serialize)]
pub struct ProfileInfo {
    pub method: &'static str,
    pub file: String,
    /// Trapezoid value of `2π ∫ n r dr` over the written samples.
    pub normalization: f64,
    pub normalization_target: f64,
}

#[derive(Debug, Serialize)]
pub struct DensityReport {
    pub case: Option<String>,
    pub state: StateInfo,
    pub grid: GridInfo,
    pub cm_width: CmWidth,
    pub profiles: Vec<ProfileInfo>,
    /// `2π ∫₀^∞ n r dr` by nested quadrature.
    pub integral: Option<f64>,
    pub max_relative_deviation: Option<f64>,
}

pub fn default_grid(omega: f64, spacing: Spacing) -> GridSpec {
    let max = 12.0 / omega.sqrt();
    match spacing {
        Spacing::Linear => GridSpec { min: 0.0, max, points: 512, spacing },
        Spacing::Log => GridSpec { min: 1e-4, max, points: 512, spacing },
    }
}

fn angular(a: Angular) -> AngularMethod {
    match a {
        Angular::Bessel => AngularMethod::Bessel,
        Angular::Numerical => AngularMethod::Numerical,
    }
}

fn save(path: &std::path::Path, method: &'static str, p: &DensityProfile, infos: &mut Vec<ProfileInfo>) -> CliResult<()> {
    write_file(path, &profile_csv(p))?;
    // integrate what was written, so re-reading reproduces it
    let written = hooke_core::observables::parse_profile_csv(&profile_csv(p), p.normalization_target)?;
    infos.push(ProfileInfo {
        method,
        file: path.display().to_string(),
        normalization: written.integral_2d(),
        normalization_target: p.normalization_target,
    });
    Ok(())
}

pub fn run(args: &DensityArgs) -> CliResult<()> {
    let case = match &args.case {
        Some(id) => Some(ClosedFormCase::from_id(id).ok_or_else(|| {
            let ids: Vec<&str> = ClosedFormCase::ALL.iter().map(|c| c.id()).collect();
            config(format!("unknown case `{id}`; known: {}", ids.join(", ")))
        })?),
        None => None,
    };
    let branch = match case {
        Some(c) => {
            let (n, m, z) = c.matching_state();
            let mut b = branches(n, m.into(), z, None)?;
            b.swap_remove(0)
        }
        None => args.state.resolve()?,
    };
    let method = args.method.unwrap_or(if case.is_some() { Method::Both } else { Method::Quadrature });
    if case.is_none() && method != Method::Quadrature {
        return Err(config("closed forms exist only for catalogued cases; pass --case"));
    }
    if let Some(t) = args.quad_tol {
        if !(t > 0.0) {
            return Err(config("--quad-tol must be positive"));
        }
    }
    if let Some(b) = args.cm_width {
        CenterOfMassState::new(b).map_err(|e| config(e.to_string()))?;
    }
    let grid = match &args.grid {
        Some(g) => GridSpec::parse(g, args.spacing.unwrap_or(Spacing::Linear))?,
        None => default_grid(branch.omega, args.spacing.unwrap_or(Spacing::Log)),
    };
    let xs = grid.points();
    let wf = build_wavefunction(&branch)?;
    let convention = CenterOfMassState::ground(&HookeParams::for_branch(&branch)).beta;

    let closed = match (case, method) {
        (Some(c), Method::ClosedForm | Method::Both) => Some(closed_form_density(c, &xs)?),
        _ => None,
    };
    let (beta, source) = match (args.cm_width, &closed, case) {
        (Some(b), _, _) => (b, "override"),
        (None, Some(cf), _) => (fit(&wf, &xs, &cf.values)?, "fitted"),
        (None, None, Some(c)) => (fit(&wf, &xs, &closed_form_density(c, &xs)?.values)?, "fitted"),
        (None, None, None) => (convention, "convention"),
    };
    let quad = if method == Method::ClosedForm {
        None
    } else {
        let mut qd = QuadratureDensity::new(wf.clone(), CenterOfMassState::new(beta)?, angular(args.angular));
        if let Some(t) = args.quad_tol {
            qd.tol = t;
        }
        Some((qd.profile(&xs)?, qd.integral()?))
    };

    let tag = case.map(|c| c.id().to_string()).unwrap_or_else(|| format!("n{}m{}Z{}", branch.n, branch.m, branch.z));
    let base = args.output.file_path(&format!("density_{tag}.csv"));
    let mut profiles = Vec::new();
    match (&quad, &closed) {
        (Some((q, _)), Some(c)) => {
            save(&sibling(&base, "quadrature.csv"), "quadrature", q, &mut profiles)?;
            save(&sibling(&base, "closed_form.csv"), "closed_form", c, &mut profiles)?;
        }
        (Some((q, _)), None) => save(&base, "quadrature", q, &mut profiles)?,
        (None, Some(c)) => save(&base, "closed_form", c, &mut profiles)?,
        (None, None) => unreachable!("at least one method runs"),
    }
    let report = DensityReport {
        case: case.map(|c| c.id().to_string()),
        state: StateInfo::from(&branch),
        grid: GridInfo::from(&grid),
        cm_width: CmWidth { beta, source, convention },
        profiles,
        integral: quad.as_ref().map(|(_, i)| *i),
        max_relative_deviation: match (&quad, &closed) {
            (Some((q, _)), Some(c)) => Some(max_relative_deviation(&q.values, &c.values, 1e-8)),
            _ => None,
        },
    };
    let json = to_json(&report);
    write_file(&sibling(&base, "json"), &json)?;
    print!("{json}");
    Ok(())
}

fn fit(wf: &RadialWavefunction, xs: &[f64], target: &[f64]) -> CliResult<f64> {
    let w = wf.omega();
    Ok(fit_cm_width(wf, xs, target, 0.05 * w, 20.0 * w)?.beta)
}
