use std::fmt::Write;

use clap::{Args, Subcommand, ValueEnum};
use hooke_core::hooke::{log_grid, solve_frequencies};
use hooke_core::observables::fmt_num;
use hooke_core::qes::{
    map_from_hooke, map_to_hooke, qes_condition, qes_exact_energies, qes_series, variational_state, MappedState,
    Picture, SexticParams,
};
use num_rational::Rational64;
use serde::Serialize;

use crate::error::{config, CliResult};
use crate::output::{emit, to_json, Format, OutputArgs};
use crate::parse::parse_rational;

#[derive(Subcommand, Debug)]
pub enum QesCommand {
    /// Sextic image of a Hooke branch at `m̃ = (2m + 1)/4`.
    Map(MapArgs),
    /// Quadratic coupling that opens the polynomial sector of degree `n`.
    Condition(ConditionArgs),
    /// Energy-as-parameter estimate of a state with a given node count.
    Variational(VariationalArgs),
}

#[derive(Args, Debug)]
pub struct MapArgs {
    /// Hooke polynomial length; the sextic sector has degree `2(n − 1)`.
    #[arg(long)]
    pub n: usize,
    /// Sextic centrifugal index.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub m: String,
    #[arg(long = "Z", allow_hyphen_values = true)]
    pub z: f64,
    #[arg(long, default_value_t = 0)]
    pub branch: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ConditionArgs {
    /// Degree of the polynomial sector in `x`.
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0.0)]
    pub m: f64,
    #[arg(long)]
    pub gamma: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PictureArg {
    Sextic,
    Hooke,
}

#[derive(Args, Debug)]
pub struct VariationalArgs {
    #[arg(long)]
    pub nodes: usize,
    /// Truncation order of the trial series.
    #[arg(long = "N", default_value_t = 24)]
    pub order: usize,
    #[arg(long, value_enum, default_value = "sextic")]
    pub picture: PictureArg,
    /// Sextic coupling.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Quadratic coupling; defaults to the condition for `--sector`.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Polynomial sector used to set `α` when `--alpha` is absent.
    #[arg(long)]
    pub sector: Option<usize>,
    /// Sextic index (sextic picture) or angular momentum (Hooke picture).
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub m: String,
    #[arg(long = "Z", allow_hyphen_values = true)]
    pub z: Option<f64>,
    /// Hooke frequency; defaults to the branch of `--n`.
    #[arg(long)]
    pub omega: Option<f64>,
    /// Hooke branch supplying the frequency when `--omega` is absent.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub e_lo: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub e_hi: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn run(cmd: &QesCommand) -> CliResult<()> {
    match cmd {
        QesCommand::Map(a) => map(a),
        QesCommand::Condition(a) => condition(a),
        QesCommand::Variational(a) => variational(a),
    }
}

#[derive(Debug, Serialize)]
pub struct MapRecord {
    pub n: usize,
    pub m: String,
    pub m_tilde: String,
    #[serde(rename = "Z")]
    pub z: f64,
    pub omega: f64,
    pub epsilon_rel: f64,
    pub gamma: f64,
    pub alpha: f64,
    pub energy: f64,
    pub degree: usize,
    pub integer_m: bool,
    pub condition_residual: f64,
    pub round_trip_error: f64,
    pub hooke_residual: f64,
}

pub fn map_record(n: usize, m: Rational64, z: f64, branch: usize) -> CliResult<MapRecord> {
    let m_tilde = (m * 2 + 1) / 4;
    let mut all = solve_frequencies(n, m_tilde, z)?;
    if branch >= all.len() {
        return Err(config(format!("branch {branch} requested but only {} exist", all.len())));
    }
    let b = all.swap_remove(branch);
    let img = map_from_hooke(&b);
    let back = map_to_hooke(&img.params, img.energy);
    let round_trip_error = [
        (back.omega - b.omega) / b.omega,
        (back.z - b.z) / b.z,
        (back.eps_rel - b.eps_rel) / b.eps_rel,
    ]
    .iter()
    .fold(0.0f64, |a, x| a.max(x.abs()));
    let u = qes_series(img.energy, &img.params, img.degree + 4)?;
    let state = MappedState { params: img.params, u };
    Ok(MapRecord {
        n,
        m: m.to_string(),
        m_tilde: m_tilde.to_string(),
        z,
        omega: b.omega,
        epsilon_rel: b.eps_rel,
        gamma: img.params.gamma,
        alpha: img.params.alpha,
        energy: img.energy,
        degree: img.degree,
        integer_m: img.integer_m,
        condition_residual: img.params.condition_residual(img.degree),
        round_trip_error,
        hooke_residual: state.hooke_residual(img.energy, &log_grid(1e-3, 12.0, 400)),
    })
}

fn map(a: &MapArgs) -> CliResult<()> {
    let m = parse_rational(&a.m)?;
    if m < (-1).into() {
        return Err(config("sextic index must exceed -1"));
    }
    let r = map_record(a.n, m, a.z, a.branch)?;
    let text = match a.output.format {
        Format::Json => to_json(&r),
        Format::Csv => {
            let mut s = String::from(
                "n,m,m_tilde,Z,omega,epsilon_rel,gamma,alpha,energy,degree,integer_m,condition_residual,round_trip_error,hooke_residual\n",
            );
            writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                r.n,
                r.m,
                r.m_tilde,
                fmt_num(r.z),
                fmt_num(r.omega),
                fmt_num(r.epsilon_rel),
                fmt_num(r.gamma),
                fmt_num(r.alpha),
                fmt_num(r.energy),
                r.degree,
                r.integer_m,
                fmt_num(r.condition_residual),
                fmt_num(r.round_trip_error),
                fmt_num(r.hooke_residual)
            )
            .expect("write to string");
            s
        }
    };
    emit(a.output.table_path(&format!("qes_map.{}", a.output.extension())).as_deref(), &text)
}

#[derive(Debug, Serialize)]
struct ConditionRow {
    n: usize,
    m: f64,
    gamma: f64,
    alpha: f64,
}

fn condition(a: &ConditionArgs) -> CliResult<()> {
    if !(a.gamma > 0.0) || !a.gamma.is_finite() {
        return Err(config("--gamma must be positive"));
    }
    if !(a.m > -1.0) {
        return Err(config("--m must exceed -1"));
    }
    let row = ConditionRow { n: a.n, m: a.m, gamma: a.gamma, alpha: qes_condition(a.n, a.m, a.gamma) };
    let text = match a.output.format {
        Format::Json => to_json(&row),
        Format::Csv => format!(
            "n,m,gamma,alpha\n{},{},{},{}\n",
            row.n,
            fmt_num(row.m),
            fmt_num(row.gamma),
            fmt_num(row.alpha)
        ),
    };
    emit(a.output.table_path(&format!("qes_condition.{}", a.output.extension())).as_deref(), &text)
}

#[derive(Debug, Serialize)]
struct VariationalReport {
    picture: &'static str,
    nodes: usize,
    #[serde(rename = "N")]
    order: usize,
    e_lo: f64,
    e_hi: f64,
    e_star: f64,
    residual: f64,
    node_count: usize,
    reliable_radius: f64,
    coefficients: Vec<f64>,
}

fn variational(a: &VariationalArgs) -> CliResult<()> {
    if a.order < 2 {
        return Err(config("--N must be at least 2"));
    }
    let (picture, default_bracket) = match a.picture {
        PictureArg::Sextic => {
            let gamma = a.gamma.ok_or_else(|| config("--gamma is required in the sextic picture"))?;
            let m: f64 = a.m.parse().map_err(|_| config(format!("bad sextic index `{}`", a.m)))?;
            let alpha = match (a.alpha, a.sector) {
                (Some(al), _) => al,
                (None, Some(k)) => qes_condition(k, m, gamma),
                (None, None) => return Err(config("pass --alpha or --sector")),
            };
            let p = SexticParams::new(alpha, gamma, m).map_err(|e| config(e.to_string()))?;
            (Picture::Qes(p), sextic_bracket(&p))
        }
        PictureArg::Hooke => {
            let z = a.z.ok_or_else(|| config("--Z is required in the Hooke picture"))?;
            let m = parse_rational(&a.m)?;
            let (omega, ground) = match a.omega {
                Some(w) if w > 0.0 => (w, None),
                Some(_) => return Err(config("--omega must be positive")),
                None => {
                    let b = solve_frequencies(a.n, m, z)?.swap_remove(0);
                    (b.omega, Some(b.eps_rel))
                }
            };
            // the branch level up to three oscillator quanta above it
            (Picture::Hooke { z, omega, m }, ground.map(|e| (e, e + 6.0 * omega)))
        }
    };
    let (lo, hi) = match (a.e_lo, a.e_hi, default_bracket) {
        (Some(l), Some(h), _) => (l, h),
        (None, None, Some(b)) => b,
        _ => return Err(config("pass --e-lo and --e-hi; no exact neighbouring levels to set a default")),
    };
    if !(hi > lo) {
        return Err(config(format!("empty bracket [{lo}, {hi}]")));
    }
    let s = variational_state(picture, a.nodes, a.order, (lo, hi))?;
    let report = VariationalReport {
        picture: match a.picture {
            PictureArg::Sextic => "sextic",
            PictureArg::Hooke => "hooke",
        },
        nodes: a.nodes,
        order: a.order,
        e_lo: lo,
        e_hi: hi,
        e_star: s.e_star,
        residual: s.residual_norm,
        node_count: s.node_count,
        reliable_radius: s.reliable_radius,
        coefficients: s.series.coeffs().to_vec(),
    };
    let text = match a.output.format {
        Format::Json => to_json(&report),
        Format::Csv => format!(
            "picture,nodes,N,e_star,residual,node_count,reliable_radius\n{},{},{},{},{},{},{}\n",
            report.picture,
            report.nodes,
            report.order,
            fmt_num(report.e_star),
            fmt_num(report.residual),
            report.node_count,
            fmt_num(report.reliable_radius)
        ),
    };
    emit(a.output.table_path(&format!("qes_variational.{}", a.output.extension())).as_deref(), &text)
}

/// `[0, 3Δ]` with `Δ` the smallest gap between exact levels, when `α`
/// opens a polynomial sector at integer `m`.
fn sextic_bracket(p: &SexticParams) -> Option<(f64, f64)> {
    if p.m.fract() != 0.0 {
        return None;
    }
    let sg = p.sqrt_gamma();
    let k = -(p.alpha / sg + 2.0 * p.m + 5.0) / 2.0;
    if k < 0.0 || (k - k.round()).abs() > 1e-9 || k.round() as usize % 2 == 1 {
        return None;
    }
    let levels = qes_exact_energies(k.round() as usize, Rational64::from(p.m as i64), p.gamma).ok()?;
    let gap = levels.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    gap.is_finite().then_some((0.0, 3.0 * gap))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_only_on_polynomial_sectors() {
        let open = SexticParams::new(qes_condition(2, 0.0, 1.0), 1.0, 0.0).unwrap();
        let (lo, hi) = sextic_bracket(&open).unwrap();
        assert!(lo == 0.0 && hi > 0.0);
        assert!(sextic_bracket(&SexticParams::new(-4.2, 1.0, 0.0).unwrap()).is_none());
        assert!(sextic_bracket(&SexticParams::new(-5.0, 1.0, 0.5).unwrap()).is_none());
    }

    #[test]
    fn map_record_matches_condition() {
        let r = map_record(2, 0.into(), 1.0, 0).unwrap();
        assert_eq!(r.m_tilde, "1/4");
        assert!(r.condition_residual < 1e-12 && r.round_trip_error < 1e-14);
        assert!(map_record(2, 0.into(), 1.0, 3).is_err());
    }
}
