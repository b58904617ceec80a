//! Globally adaptive 10/21-point Gauss–Kronrod quadrature.
//!
//! The interval with the largest error estimate is bisected until the
//! summed estimate meets the tolerance. Error estimates follow QUADPACK.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::scalar::Real;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Clone, Copy, Debug)]
pub struct QuadConfig<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_intervals: usize,
}

impl<T: Real> Default for QuadConfig<T> {
    fn default() -> Self {
        Self {
            abs_tol: T::c(1e-12),
            rel_tol: T::c(1e-12),
            max_intervals: 2000,
        }
    }
}

impl<T: Real> QuadConfig<T> {
    pub fn tol(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol: T::c(abs_tol),
            rel_tol: T::c(rel_tol),
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: T,
    pub intervals: usize,
}

/// One 21-point Kronrod panel: `(integral, error estimate)`.
pub fn gk21<T: Real>(f: &impl Fn(T) -> T, a: T, b: T) -> (T, T) {
    let half = T::c(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let fc = f(center);
    let mut res_k = fc * T::c(WGK[10]);
    let mut res_g = T::zero();
    let mut res_abs = res_k.abs();
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];
    for j in 0..10 {
        let dx = half_len * T::c(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k = res_k + T::c(WGK[j]) * (f1 + f2);
        res_abs = res_abs + T::c(WGK[j]) * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g = res_g + T::c(WG[j / 2]) * (f1 + f2);
        }
    }
    let mean = res_k * half;
    let mut res_asc = T::c(WGK[10]) * (fc - mean).abs();
    for j in 0..10 {
        res_asc = res_asc + T::c(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let result = res_k * half_len;
    let res_abs = res_abs * half_len.abs();
    let res_asc = res_asc * half_len.abs();
    let mut err = ((res_k - res_g) * half_len).abs();
    if res_asc != T::zero() && err != T::zero() {
        let ratio = (T::c(200.0) * err / res_asc).powf(T::c(1.5));
        err = res_asc * ratio.min(T::one());
    }
    let round = T::c(50.0) * T::epsilon() * res_abs;
    if res_abs > T::min_positive_value() / (T::c(50.0) * T::epsilon()) {
        err = err.max(round);
    }
    (result, err)
}

struct Panel<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

impl<T: Real> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T: Real> Eq for Panel<T> {}
impl<T: Real> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(Ordering::Equal)
    }
}

/// `∫_a^b f` over a finite interval.
pub fn integrate<T: Real>(f: impl Fn(T) -> T, a: T, b: T, cfg: &QuadConfig<T>) -> Result<QuadResult<T>> {
    integrate_points(f, &[a, b], cfg)
}

/// `∫ f` over `[p_0, p_last]` with the given interior breakpoints.
pub fn integrate_points<T: Real>(
    f: impl Fn(T) -> T,
    points: &[T],
    cfg: &QuadConfig<T>,
) -> Result<QuadResult<T>> {
    let mut heap = BinaryHeap::new();
    let (mut value, mut error) = (T::zero(), T::zero());
    for w in points.windows(2) {
        if w[0] == w[1] {
            continue;
        }
        let (v, e) = gk21(&f, w[0], w[1]);
        value = value + v;
        error = error + e;
        heap.push(Panel { a: w[0], b: w[1], value: v, error: e });
    }
    let target = |v: T| cfg.abs_tol.max(cfg.rel_tol * v.abs());
    while error > target(value) {
        if heap.len() >= cfg.max_intervals {
            return Err(Error::QuadratureNonConvergence {
                error: error.to_f64().unwrap_or(f64::NAN),
                tolerance: target(value).to_f64().unwrap_or(f64::NAN),
            });
        }
        let Some(worst) = heap.pop() else { break };
        let mid = T::c(0.5) * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            // panel at machine resolution; keep it and stop refining
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk21(&f, worst.a, mid);
        let (v2, e2) = gk21(&f, mid, worst.b);
        value = value - worst.value + v1 + v2;
        error = error - worst.error + e1 + e2;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2 });
    }
    // re-sum to shed cancellation from the running updates
    let value = heap.iter().fold(T::zero(), |acc, p| acc + p.value);
    let error = heap.iter().fold(T::zero(), |acc, p| acc + p.error);
    if error > target(value) * T::c(10.0) {
        return Err(Error::QuadratureNonConvergence {
            error: error.to_f64().unwrap_or(f64::NAN),
            tolerance: target(value).to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(QuadResult { value, error, intervals: heap.len() })
}

/// `∫_a^∞ f` through `x = a + t/(1-t)`.
pub fn integrate_to_infinity<T: Real>(f: impl Fn(T) -> T, a: T, cfg: &QuadConfig<T>) -> Result<QuadResult<T>> {
    let g = |t: T| {
        let s = T::one() - t;
        let x = a + t / s;
        let v = f(x) / (s * s);
        if v.is_finite() {
            v
        } else {
            T::zero()
        }
    };
    integrate(g, T::zero(), T::one(), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let r = integrate(|x: f64| x.powi(5) - 3.0 * x, 0.0, 2.0, &QuadConfig::default()).unwrap();
        assert!((r.value - (64.0 / 6.0 - 6.0)).abs() < 1e-13);
    }

    #[test]
    fn gaussian_half_line() {
        let r = integrate_to_infinity(|x: f64| (-x * x).exp(), 0.0, &QuadConfig::default()).unwrap();
        assert!((r.value - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn log_endpoint_singularity() {
        let r = integrate(|x: f64| x.ln(), 0.0, 1.0, &QuadConfig::tol(1e-12, 1e-12)).unwrap();
        assert!((r.value + 1.0).abs() < 1e-11);
    }

    #[test]
    fn breakpoints_at_kink() {
        let r = integrate_points(|x: f64| (x - 0.3).abs(), &[0.0, 0.3, 1.0], &QuadConfig::default()).unwrap();
        assert!((r.value - (0.045 + 0.245)).abs() < 1e-14);
        assert_eq!(r.intervals, 2);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let cfg = QuadConfig { abs_tol: 1e-15, rel_tol: 0.0, max_intervals: 3 };
        let e = integrate(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, &cfg).unwrap_err();
        assert!(matches!(e, Error::QuadratureNonConvergence { .. }));
    }

    #[test]
    fn single_precision() {
        let r = integrate(|x: f32| x.cos(), 0.0, 1.0, &QuadConfig::tol(1e-5, 1e-5)).unwrap();
        assert!((r.value - 1f32.sin()).abs() < 1e-5);
    }
}
