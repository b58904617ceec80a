use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Radial samples of a rotationally symmetric planar function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityProfile {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    /// Value of `∫ f d²r` the profile should carry: 2 for `n`, 1 for `G`.
    pub normalization_target: f64,
}

impl DensityProfile {
    pub fn new(grid: Vec<f64>, values: Vec<f64>, normalization_target: f64) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::InvalidInput(format!(
                "grid has {} points but {} values",
                grid.len(),
                values.len()
            )));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput("grid must be strictly increasing".into()));
        }
        Ok(Self { grid, values, normalization_target })
    }

    /// Trapezoid estimate of `2π ∫ f(r) r dr` over the sampled range.
    pub fn integral_2d(&self) -> f64 {
        let f: Vec<f64> = self.grid.iter().zip(&self.values).map(|(r, v)| r * v).collect();
        2.0 * std::f64::consts::PI * trapezoid(&self.grid, &f)
    }

    /// Rescales so the trapezoid integral equals the target.
    pub fn normalize(&mut self) {
        let s = self.normalization_target / self.integral_2d();
        self.values.iter_mut().for_each(|v| *v *= s);
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Samples of `S_G = −G ln G` and the total entropy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyProfile {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub total: f64,
}

/// Cartesian samples for surface plots.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceGrid {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    /// Row-major, `values[i * ys.len() + j]` at `(xs[i], ys[j])`.
    pub values: Vec<f64>,
}

impl SurfaceGrid {
    pub fn sample(half_width: f64, points: usize, f: impl Fn(f64) -> f64) -> Self {
        let axis = linear_grid(-half_width, half_width, points);
        let mut values = Vec::with_capacity(points * points);
        for &x in &axis {
            for &y in &axis {
                values.push(f(x.hypot(y)));
            }
        }
        Self { xs: axis.clone(), ys: axis, values }
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.ys.len() + j]
    }
}

pub fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xw, yw)| 0.5 * (xw[1] - xw[0]) * (yw[0] + yw[1]))
        .sum()
}

/// `points` equispaced values on `[lo, hi]`.
pub fn linear_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let n = points.max(2) - 1;
    (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect()
}

/// Default radial grid: 512 log-spaced points on `[1e−4, 12/√ω̃]`.
pub fn default_grid(omega: f64) -> Vec<f64> {
    crate::hooke::log_grid(1e-4, 12.0 / omega.sqrt(), 512)
}
