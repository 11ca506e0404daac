//! Seeded random families shared by the integration tests.
#![allow(dead_code)]

use hyperlift::{Curve64, Poly64, SymMatrixCurve};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Polynomial of the given degree with coefficients uniform in `[-1, 1]`.
pub fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> Poly64 {
    Poly64::new((0..=degree).map(|_| rng.gen_range(-1.0..=1.0)).collect())
}

/// Root branches of a random family: `n ≤ max_n` polynomials of degree at
/// most `max_deg` in `t`.
pub fn random_root_polys(rng: &mut ChaCha8Rng, min_n: usize, max_n: usize, max_deg: usize) -> Vec<Poly64> {
    let n = rng.gen_range(min_n..=max_n);
    (0..n)
        .map(|_| {
            let d = rng.gen_range(0..=max_deg);
            random_poly(rng, d)
        })
        .collect()
}

/// Elementary curve on `[-1, 1]` whose roots are the given branches.
pub fn family(roots: &[Poly64]) -> Curve64 {
    Curve64::from_root_polys((-1.0, 1.0), roots).expect("valid family")
}

/// `count` random hyperbolic families on `[-1, 1]`.
pub fn random_families(seed: u64, count: usize, min_n: usize, max_n: usize, max_deg: usize) -> Vec<(Vec<Poly64>, Curve64)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let roots = random_root_polys(&mut r, min_n, max_n, max_deg);
            let c = family(&roots);
            (roots, c)
        })
        .collect()
}

/// Symmetric `m × m` matrix with entries uniform in `[-1, 1]`.
#[allow(clippy::needless_range_loop)]
pub fn random_symmetric(rng: &mut ChaCha8Rng, m: usize) -> Vec<Vec<f64>> {
    let mut a = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in i..m {
            let v = rng.gen_range(-1.0..=1.0);
            a[i][j] = v;
            a[j][i] = v;
        }
    }
    a
}

/// Pencil `A₀ + t·A₁` on `[-1, 1]` with random symmetric `A₀, A₁`.
pub fn random_pencil(rng: &mut ChaCha8Rng, m: usize) -> (SymMatrixCurve<f64>, Vec<Vec<f64>>) {
    let a0 = random_symmetric(rng, m);
    let a1 = random_symmetric(rng, m);
    (SymMatrixCurve::pencil((-1.0, 1.0), &a0, &a1).expect("symmetric pencil"), a1)
}

/// Spectral norm of a symmetric matrix.
pub fn spectral_norm(a: &[Vec<f64>]) -> f64 {
    let m = a.len();
    let mat = nalgebra::DMatrix::from_fn(m, m, |i, j| a[i][j]);
    mat.symmetric_eigenvalues().iter().fold(0.0, |acc: f64, v| acc.max(v.abs()))
}

/// Elementary symmetric values `(e₁, …, e_n)` of a root vector.
pub fn elementary(roots: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; roots.len() + 1];
    e[0] = 1.0;
    for (m, &r) in roots.iter().enumerate() {
        for k in (1..=m + 1).rev() {
            e[k] += r * e[k - 1];
        }
    }
    e.remove(0);
    e
}
