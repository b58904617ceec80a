use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hooke::{build_wavefunction, solve_frequencies, RadialWavefunction};
use crate::quad::{integrate_points, QuadConfig};

use super::density::PairCorrelation;
use super::profile::{EntropyProfile, SurfaceGrid};

/// `−g ln g` with `0 ln 0 = 0`.
pub fn entropy_term(g: f64) -> f64 {
    if g <= 0.0 {
        0.0
    } else {
        -g * g.ln()
    }
}

pub fn entropy_density(g: &PairCorrelation, grid: &[f64]) -> Result<EntropyProfile> {
    Ok(EntropyProfile {
        grid: grid.to_vec(),
        values: grid.iter().map(|&r| entropy_term(g.eval(r))).collect(),
        total: total_entropy(&g.wf)?,
    })
}

/// `S_G` on a `points × points` Cartesian grid over `[−half_width, half_width]²`.
pub fn entropy_surface(g: &PairCorrelation, half_width: f64, points: usize) -> SurfaceGrid {
    SurfaceGrid::sample(half_width, points, |r| entropy_term(g.eval(r)))
}

/// `S = −∫ G ln G d²r = −∫₀^∞ u² ln(u²/(2πr)) dr`.
pub fn total_entropy(wf: &RadialWavefunction) -> Result<f64> {
    let g = PairCorrelation::new(wf.clone());
    let f = |r: f64| {
        let u = wf.eval(r);
        if u == 0.0 {
            0.0
        } else {
            -u * u * g.ln_eval(r)
        }
    };
    Ok(integrate_points(f, &wf.breakpoints(), &QuadConfig::tol(1e-12, 1e-12))?.value)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    #[serde(with = "rational_string")]
    pub m: Rational64,
    pub omega: f64,
    #[serde(rename = "Z")]
    pub z: f64,
    pub entropy: f64,
}

/// One row per branch of every `(m, Z)`, sorted by ascending `ω̃`, then
/// `Z`, then `m`.
pub fn entropy_scan(n: usize, ms: &[Rational64], zs: &[f64]) -> Result<Vec<ScanRow>> {
    let points: Vec<(Rational64, f64)> = ms.iter().flat_map(|&m| zs.iter().map(move |&z| (m, z))).collect();
    let rows: Vec<Vec<ScanRow>> = points
        .par_iter()
        .map(|&(m, z)| {
            solve_frequencies(n, m, z)?
                .iter()
                .map(|b| {
                    let wf = build_wavefunction(b)?;
                    Ok(ScanRow { m, omega: b.omega, z, entropy: total_entropy(&wf)? })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut rows: Vec<ScanRow> = rows.into_iter().flatten().collect();
    rows.sort_by(|a, b| {
        a.omega
            .total_cmp(&b.omega)
            .then(a.z.total_cmp(&b.z))
            .then(a.m.cmp(&b.m))
    });
    Ok(rows)
}

pub(crate) mod rational_string {
    use num_rational::Rational64;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &Rational64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&m.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational64, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}
