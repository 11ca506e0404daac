//! Sup norms and Lipschitz estimates on compact intervals.
//!
//! Exact suprema are out of reach in general; these are dense-sampling
//! estimates with deterministic grids. For polynomials every sampled local
//! maximum of `|p|` is polished by golden-section search on its neighbouring
//! cells, which recovers interior extrema to near machine precision.

use crate::poly::Poly;
use crate::scalar::{fmax, Scalar};

/// Default number of samples for sup norms.
pub const DEFAULT_SUP_SAMPLES: usize = 4096;

/// `n` equally spaced points from `a` to `b` inclusive; the last point is `b`
/// exactly.
pub fn uniform_grid<T: Scalar>(a: T, b: T, n: usize) -> Vec<T> {
    assert!(n >= 2, "a grid needs at least two points");
    let last = T::from_index(n - 1);
    (0..n)
        .map(|k| {
            if k == n - 1 {
                b
            } else {
                a + (b - a) * T::from_index(k) / last
            }
        })
        .collect()
}

/// Maximiser of a unimodal function on `[a, b]` by golden-section search.
pub(crate) fn golden_max<T: Scalar, F: Fn(T) -> T>(f: F, mut a: T, mut b: T, iters: usize) -> (T, T) {
    let ratio = T::lit(0.618_033_988_749_894_9);
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = f(x1);
        }
        if b - a <= T::epsilon() * (a.abs() + b.abs()) {
            break;
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// `sup |p|` over `[a, b]`.
pub fn sup_abs_poly<T: Scalar>(p: &Poly<T>, a: T, b: T, samples: usize) -> T {
    if p.is_zero() {
        return T::zero();
    }
    if p.degree() == Some(0) || a == b {
        return p.at(a).abs();
    }
    let grid = uniform_grid(a, b, samples.max(3));
    let vals: Vec<T> = grid.iter().map(|&t| p.at(t).abs()).collect();
    let mut best = vals.iter().fold(T::zero(), |m, &v| fmax(m, v));
    for k in 1..grid.len() - 1 {
        if vals[k] >= vals[k - 1] && vals[k] >= vals[k + 1] && vals[k] > T::zero() {
            let (_, v) = golden_max(|t| p.at(t).abs(), grid[k - 1], grid[k + 1], 120);
            best = fmax(best, v);
        }
    }
    best
}

/// `sup |v|` of a sampled sequence.
pub fn sup_abs<T: Scalar>(values: &[T]) -> T {
    values.iter().fold(T::zero(), |m, v| fmax(m, v.abs()))
}

/// Largest slope between consecutive samples, `max |Δv| / Δt`.
pub fn max_slope<T: Scalar>(grid: &[T], values: &[T]) -> T {
    grid.windows(2)
        .zip(values.windows(2))
        .fold(T::zero(), |m, (t, v)| fmax(m, (v[1] - v[0]).abs() / (t[1] - t[0])))
}

/// `k`-th derivative estimates at every sample from `k`-th divided
/// differences over `k + 1` consecutive samples, as centred as the grid
/// allows. Requires `grid.len() > k`.
pub fn divided_derivatives<T: Scalar>(grid: &[T], values: &[T], k: usize) -> Vec<T> {
    let n = grid.len();
    if k == 0 {
        return values.to_vec();
    }
    assert!(n > k, "not enough samples for derivative of order {k}");
    let factorial = (1..=k).fold(T::one(), |f, j| f * T::from_index(j));
    (0..n)
        .map(|i| {
            let start = i.saturating_sub(k / 2).min(n - k - 1);
            divided_difference(&grid[start..=start + k], &values[start..=start + k]) * factorial
        })
        .collect()
}

fn divided_difference<T: Scalar>(t: &[T], v: &[T]) -> T {
    let mut table = v.to_vec();
    let m = t.len();
    for level in 1..m {
        for i in 0..m - level {
            table[i] = (table[i + 1] - table[i]) / (t[i + level] - t[i]);
        }
    }
    table[0]
}

/// Derivative at `t[2]` of the quadratic through three samples, using the two
/// samples on one side (`t[0], t[1]`) plus the point itself. Works for either
/// ordering of the abscissae.
pub(crate) fn quadratic_endpoint_derivative<T: Scalar>(t: [T; 3], v: [T; 3]) -> T {
    // Lagrange basis derivatives evaluated at t[2]
    let (t0, t1, t2) = (t[0], t[1], t[2]);
    let l0 = (t2 - t1) / ((t0 - t1) * (t0 - t2));
    let l1 = (t2 - t0) / ((t1 - t0) * (t1 - t2));
    let l2 = ((t2 - t0) + (t2 - t1)) / ((t2 - t0) * (t2 - t1));
    v[0] * l0 + v[1] * l1 + v[2] * l2
}

/// Derivative of the quadratic through three samples, evaluated at `x`.
pub(crate) fn quadratic_derivative_at<T: Scalar>(t: [T; 3], v: [T; 3], x: T) -> T {
    let (t0, t1, t2) = (t[0], t[1], t[2]);
    let l0 = ((x - t1) + (x - t2)) / ((t0 - t1) * (t0 - t2));
    let l1 = ((x - t0) + (x - t2)) / ((t1 - t0) * (t1 - t2));
    let l2 = ((x - t0) + (x - t1)) / ((t2 - t0) * (t2 - t1));
    v[0] * l0 + v[1] * l1 + v[2] * l2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints_exact() {
        let g = uniform_grid(-1.0, 1.0, 7);
        assert_eq!(g[0], -1.0);
        assert_eq!(g[6], 1.0);
        assert_eq!(g[3], 0.0);
    }

    #[test]
    fn interior_maximum_is_polished() {
        // 1 - (t - 0.3)^2 peaks at 0.3 with value 1; a coarse grid misses it
        let p = Poly::new(vec![1.0 - 0.09, 0.6, -1.0]);
        let s: f64 = sup_abs_poly(&p, -1.0, 1.0, 8);
        assert!((s - 1.0).abs() < 1e-14, "{s}");
    }

    #[test]
    fn divided_derivatives_exact_on_quadratics() {
        let g = vec![0.0, 0.5, 1.25, 2.0, 3.0];
        let v: Vec<f64> = g.iter().map(|t| 3.0 * t * t - t + 2.0).collect();
        let d1 = divided_derivatives(&g, &v, 2);
        assert!(d1.iter().all(|d| (d - 6.0).abs() < 1e-12));
    }

    #[test]
    fn quadratic_stencils() {
        let f = |t: f64| 2.0 * t * t + t;
        let d = quadratic_endpoint_derivative([0.0, 0.5, 1.0], [f(0.0), f(0.5), f(1.0)]);
        assert!((d - 5.0).abs() < 1e-12);
        let d = quadratic_endpoint_derivative([2.0, 1.5, 1.0], [f(2.0), f(1.5), f(1.0)]);
        assert!((d - 5.0).abs() < 1e-12);
        let d = quadratic_derivative_at([0.0, 0.5, 1.0], [f(0.0), f(0.5), f(1.0)], 1.7);
        assert!((d - 7.8).abs() < 1e-12);
    }
}
