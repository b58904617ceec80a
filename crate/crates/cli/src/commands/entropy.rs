use clap::Args;
use hooke_core::hooke::build_wavefunction;
use hooke_core::observables::{
    entropy_density, entropy_scan, entropy_surface, entropy_term, profile_csv, scan_csv, surface_csv, DensityProfile,
    PairCorrelation,
};
use serde::Serialize;

use crate::commands::density::{default_grid, GridInfo, StateArgs, StateInfo};
use crate::error::{config, CliResult};
use crate::output::{emit, sibling, to_json, write_file, Format, OutputArgs};
use crate::parse::{parse_ms, parse_zs, GridSpec, Spacing};

#[derive(Args, Debug)]
pub struct EntropyArgs {
    /// Total entropy over every branch of `--m` × `--Z`.
    #[arg(long, conflicts_with = "surface")]
    pub scan: bool,
    /// `S_G` sampled on a Cartesian grid.
    #[arg(long)]
    pub surface: bool,
    #[command(flatten)]
    pub state: ScanState,
    /// `min:max:points` of the radial profile.
    #[arg(long)]
    pub grid: Option<String>,
    /// Linear for an explicit `--grid`, log for the default grid.
    #[arg(long, value_enum)]
    pub spacing: Option<Spacing>,
    /// Surface covers `[−w, w]²`; defaults to `6/√ω̃`.
    #[arg(long)]
    pub half_width: Option<f64>,
    /// Surface samples per axis.
    #[arg(long, default_value_t = 201)]
    pub points: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Like [`StateArgs`] but `m` and `Z` may be lists for scans.
#[derive(Args, Debug)]
pub struct ScanState {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    #[arg(long = "Z", allow_hyphen_values = true)]
    pub z: Option<String>,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub branch: usize,
}

impl ScanState {
    fn single(&self) -> CliResult<StateArgs> {
        let z = match &self.z {
            Some(s) => {
                let zs = parse_zs(s)?;
                if zs.len() != 1 {
                    return Err(config("a single Z is needed outside --scan"));
                }
                Some(zs[0])
            }
            None => None,
        };
        Ok(StateArgs { n: self.n, m: self.m.clone(), z, omega: self.omega, branch: self.branch })
    }
}

#[derive(Debug, Serialize)]
struct EntropyReport {
    state: StateInfo,
    total_entropy: f64,
    /// `S_G` at the relative origin.
    origin: f64,
    file: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid: Option<GridInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    surface_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    surface_max: Option<f64>,
}

pub fn run(args: &EntropyArgs) -> CliResult<()> {
    if args.scan {
        return scan(args);
    }
    let b = args.state.single()?.resolve()?;
    let g = PairCorrelation::new(build_wavefunction(&b)?);
    let tag = format!("n{}m{}Z{}", b.n, b.m, b.z);
    let origin = entropy_term(g.eval(0.0));
    let report = if args.surface {
        if args.points < 2 {
            return Err(config("--points must be at least 2"));
        }
        let w = args.half_width.unwrap_or(6.0 / b.omega.sqrt());
        if !(w > 0.0 && w.is_finite()) {
            return Err(config("--half-width must be positive"));
        }
        let s = entropy_surface(&g, w, args.points);
        let path = args.output.file_path(&format!("entropy_surface_{tag}.csv"));
        write_file(&path, &surface_csv(&s))?;
        EntropyReport {
            state: StateInfo::from(&b),
            total_entropy: hooke_core::observables::total_entropy(&g.wf)?,
            origin,
            file: path.display().to_string(),
            grid: None,
            surface_min: Some(s.values.iter().copied().fold(f64::INFINITY, f64::min)),
            surface_max: Some(s.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)),
        }
    } else {
        let grid = match &args.grid {
            Some(s) => GridSpec::parse(s, args.spacing.unwrap_or(Spacing::Linear))?,
            None => default_grid(b.omega, args.spacing.unwrap_or(Spacing::Log)),
        };
        let prof = entropy_density(&g, &grid.points())?;
        let path = args.output.file_path(&format!("entropy_{tag}.csv"));
        let dp = DensityProfile::new(prof.grid.clone(), prof.values.clone(), prof.total)?;
        write_file(&path, &profile_csv(&dp))?;
        EntropyReport {
            state: StateInfo::from(&b),
            total_entropy: prof.total,
            origin,
            file: path.display().to_string(),
            grid: Some(GridInfo::from(&grid)),
            surface_min: None,
            surface_max: None,
        }
    };
    let json = to_json(&report);
    write_file(&sibling(std::path::Path::new(&report.file), "json"), &json)?;
    print!("{json}");
    Ok(())
}

fn scan(args: &EntropyArgs) -> CliResult<()> {
    let n = args.state.n.ok_or_else(|| config("--n is required"))?;
    let ms = parse_ms(args.state.m.as_deref().unwrap_or("0"))?;
    let zs = parse_zs(args.state.z.as_deref().ok_or_else(|| config("--Z is required"))?)?;
    let rows = entropy_scan(n, &ms, &zs)?;
    let text = match args.output.format {
        Format::Csv => scan_csv(&rows),
        Format::Json => to_json(&rows),
    };
    let name = format!("entropy_scan_n{n}.{}", args.output.extension());
    emit(args.output.table_path(&name).as_deref(), &text)
}
