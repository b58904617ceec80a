use std::fmt::Write;

use clap::Args;
use hooke_core::hooke::{solve_frequencies, QuantizationBranch};
use hooke_core::observables::{fmt_num, fmt_rational};
use hooke_core::Error;
use num_rational::Rational64;
use serde::Serialize;

use crate::error::CliResult;
use crate::output::{emit, to_json, Format, OutputArgs};
use crate::parse::{parse_ms, parse_zs};

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// Number of terms kept in the polynomial factor.
    #[arg(long)]
    pub n: usize,
    /// Angular momentum: `2`, `1/4`, `0:4` or a comma list.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub m: String,
    /// Coulomb coupling(s), comma separated.
    #[arg(long = "Z", allow_hyphen_values = true)]
    pub z: String,
    /// Trap frequency for the uncoupled `Z = 0` problem (odd `n`).
    #[arg(long)]
    pub omega: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Serialize)]
pub struct BranchRow {
    pub n: usize,
    pub m: String,
    #[serde(rename = "Z")]
    pub z: f64,
    pub kappa: f64,
    pub omega: f64,
    pub epsilon_rel: f64,
    pub epsilon_paper_convention: f64,
}

impl From<&QuantizationBranch> for BranchRow {
    fn from(b: &QuantizationBranch) -> Self {
        Self {
            n: b.n,
            m: fmt_rational(b.m),
            z: b.z,
            kappa: b.kappa,
            omega: b.omega,
            epsilon_rel: b.eps_rel,
            epsilon_paper_convention: b.eps_doubled(),
        }
    }
}

/// Branches for one `(n, m, Z)`; `Z = 0` needs an explicit frequency.
pub fn branches(n: usize, m: Rational64, z: f64, omega: Option<f64>) -> hooke_core::Result<Vec<QuantizationBranch>> {
    if z == 0.0 {
        return match omega {
            Some(w) => Ok(vec![QuantizationBranch::oscillator(n, m, w)?]),
            None => Err(Error::NoBranch { n, m: m.to_string(), z }),
        };
    }
    solve_frequencies(n, m, z)
}

pub fn rows_csv(rows: &[BranchRow]) -> String {
    let mut s = String::from("n,m,Z,kappa,omega,epsilon_rel,epsilon_paper_convention\n");
    for r in rows {
        writeln!(
            s,
            "{},{},{},{},{},{},{}",
            r.n,
            r.m,
            fmt_num(r.z),
            fmt_num(r.kappa),
            fmt_num(r.omega),
            fmt_num(r.epsilon_rel),
            fmt_num(r.epsilon_paper_convention)
        )
        .expect("write to string");
    }
    s
}

pub fn run(args: &SolveArgs) -> CliResult<()> {
    let mut rows = Vec::new();
    for m in parse_ms(&args.m)? {
        for z in parse_zs(&args.z)? {
            rows.extend(branches(args.n, m, z, args.omega)?.iter().map(BranchRow::from));
        }
    }
    let text = match args.output.format {
        Format::Csv => rows_csv(&rows),
        Format::Json => to_json(&rows),
    };
    let name = format!("solve_n{}.{}", args.n, args.output.extension());
    emit(args.output.table_path(&name).as_deref(), &text)
}
