//! One-dimensional minimisation.

use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Minimum<T> {
    pub x: T,
    pub fx: T,
    pub iterations: usize,
}

/// Brent's method on `[a, b]`: golden-section steps with parabolic
/// interpolation when it is safe. Converges to a local minimum to within
/// `tol + √ε |x|` in `x`.
pub fn brent_minimize<T: Real>(f: impl Fn(T) -> T, a: T, b: T, tol: T, max_iter: usize) -> Minimum<T> {
    brent_minimize_rel(f, a, b, tol, T::epsilon().sqrt(), max_iter)
}

/// As [`brent_minimize`] with an explicit relative tolerance. Values below
/// `√ε` only pay off when `f` has a kink at the minimum, such as `|x − x*|`.
pub fn brent_minimize_rel<T: Real>(f: impl Fn(T) -> T, a: T, b: T, tol: T, rel: T, max_iter: usize) -> Minimum<T> {
    let golden = T::c(0.381_966_011_250_105_1);
    let (mut a, mut b) = if a < b { (a, b) } else { (b, a) };
    let mut x = a + golden * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = f(x);
    let (mut fw, mut fv) = (fx, fx);
    let mut d = T::zero();
    let mut e = T::zero();
    let half = T::c(0.5);
    let two = T::c(2.0);
    let eps = rel;
    for it in 0..max_iter {
        let m = half * (a + b);
        let tol1 = eps * x.abs() + tol / T::c(3.0);
        let tol2 = two * tol1;
        if (x - m).abs() <= tol2 - half * (b - a) {
            return Minimum { x, fx, iterations: it };
        }
        let mut use_golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = two * (q - r);
            if q > T::zero() {
                p = -p;
            } else {
                q = -q;
            }
            let e_prev = e;
            e = d;
            if p.abs() < (half * q * e_prev).abs() && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if x < m { tol1 } else { -tol1 };
                }
                use_golden = false;
            }
        }
        if use_golden {
            e = if x < m { b - x } else { a - x };
            d = golden * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else if d > T::zero() {
            x + tol1
        } else {
            x - tol1
        };
        let fu = f(u);
        if fu <= fx {
            if u < x {
                b = x;
            } else {
                a = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Minimum { x, fx, iterations: max_iter }
}

/// Sample `f` on `samples + 1` equispaced points of `[a, b]` and return the
/// brackets `(left, centre, right)` around each interior local minimum.
pub fn scan_minima<T: Real>(f: impl Fn(T) -> T, a: T, b: T, samples: usize) -> Vec<(T, T, T)> {
    let n = samples.max(2);
    let h = (b - a) / T::from_usize(n).expect("sample count");
    let xs: Vec<T> = (0..=n).map(|i| a + h * T::from_usize(i).expect("index")).collect();
    let fs: Vec<T> = xs.iter().map(|&x| f(x)).collect();
    (1..n)
        .filter(|&i| fs[i] <= fs[i - 1] && fs[i] <= fs[i + 1] && (fs[i] < fs[i - 1] || fs[i] < fs[i + 1]))
        .map(|i| (xs[i - 1], xs[i], xs[i + 1]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic() {
        let m = brent_minimize(|x: f64| (x - 1.234).powi(2) + 2.0, -3.0, 5.0, 1e-12, 200);
        assert!((m.x - 1.234).abs() < 1e-9);
        assert!((m.fx - 2.0).abs() < 1e-15);
    }

    #[test]
    fn non_smooth() {
        let m = brent_minimize(|x: f64| (x - 0.7).abs(), 0.0, 1.0, 1e-10, 500);
        assert!((m.x - 0.7).abs() < 1e-8);
        let m = brent_minimize_rel(|x: f64| (x - 2.7).abs(), 0.0, 5.0, 1e-13, 4.0 * f64::EPSILON, 500);
        assert!((m.x - 2.7).abs() < 1e-11);
    }

    #[test]
    fn scan_finds_both_wells() {
        let f = |x: f64| (x * x - 1.0).powi(2);
        let b = scan_minima(f, -2.0, 2.0, 40);
        assert_eq!(b.len(), 2);
        assert!(b[0].0 < -1.0 && b[0].2 > -1.0);
    }

    #[test]
    fn single_precision() {
        let m = brent_minimize(|x: f32| x.cos(), 2.0, 4.0, 1e-5, 100);
        assert!((m.x - std::f32::consts::PI).abs() < 1e-3);
    }
}
