//! Plain-text serialisation with 17 significant digits and LF endings.

use std::fmt::Write;

use num_rational::Rational64;

use crate::error::{Error, Result};

use super::entropy::ScanRow;
use super::profile::{DensityProfile, SurfaceGrid};

/// Scientific notation with 17 significant digits; `-0` prints as `0`.
pub fn fmt_num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

pub fn fmt_rational(q: Rational64) -> String {
    q.to_string()
}

pub fn profile_csv(p: &DensityProfile) -> String {
    let mut s = String::from("r,value\n");
    for (r, v) in p.grid.iter().zip(&p.values) {
        writeln!(s, "{},{}", fmt_num(*r), fmt_num(*v)).expect("write to string");
    }
    s
}

pub fn surface_csv(g: &SurfaceGrid) -> String {
    let mut s = String::from("x,y,value\n");
    for (i, x) in g.xs.iter().enumerate() {
        for (j, y) in g.ys.iter().enumerate() {
            writeln!(s, "{},{},{}", fmt_num(*x), fmt_num(*y), fmt_num(g.at(i, j))).expect("write to string");
        }
    }
    s
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut s = String::from("m,omega,Z,entropy\n");
    for r in rows {
        writeln!(
            s,
            "{},{},{},{}",
            fmt_rational(r.m),
            fmt_num(r.omega),
            fmt_num(r.z),
            fmt_num(r.entropy)
        )
        .expect("write to string");
    }
    s
}

/// Reads a `r,value` file back into a profile.
pub fn parse_profile_csv(text: &str, normalization_target: f64) -> Result<DensityProfile> {
    let mut lines = text.lines();
    if lines.next() != Some("r,value") {
        return Err(Error::InvalidInput("missing `r,value` header".into()));
    }
    let mut grid = Vec::new();
    let mut values = Vec::new();
    for (k, line) in lines.enumerate() {
        let bad = || Error::InvalidInput(format!("malformed row {}: {line}", k + 2));
        let (a, b) = line.split_once(',').ok_or_else(bad)?;
        grid.push(a.parse::<f64>().map_err(|_| bad())?);
        values.push(b.parse::<f64>().map_err(|_| bad())?);
    }
    DensityProfile::new(grid, values, normalization_target)
}
