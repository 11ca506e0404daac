//! Lipschitz square roots of nonnegative functions.
//!
//! `g = s·√f` with a sign `s` that may change only at zeros of `f`. At each
//! zero the sign is chosen so the one-sided derivatives of `g` match as
//! closely as possible; exact ties keep the current sign.

use serde::{Deserialize, Serialize};

use crate::error::{LiftError, Result};
use crate::norms::{divided_derivatives, max_slope, quadratic_derivative_at, sup_abs, sup_abs_poly, uniform_grid, DEFAULT_SUP_SAMPLES};
use crate::poly::Poly;
use crate::scalar::{fmax, Scalar};

/// Relative level below which samples of `f` count as zeros.
pub const ZERO_LEVEL: f64 = 1e-12;

/// A nonnegative function of one variable.
#[derive(Clone, Debug, PartialEq)]
pub enum NonnegFunction<T> {
    /// `f = Σ p_k²` on an interval.
    Squares { interval: (T, T), squares: Vec<Poly<T>> },
    /// Values on a strictly increasing grid.
    Sampled { grid: Vec<T>, values: Vec<T> },
}

impl<T: Scalar> NonnegFunction<T> {
    /// `Σ p_k²` as a single polynomial.
    fn square_sum(squares: &[Poly<T>]) -> Poly<T> {
        squares.iter().fold(Poly::zero(), |acc, p| &acc + &(p * p))
    }

    fn validate(&self) -> Result<()> {
        match self {
            NonnegFunction::Squares { interval, squares } => {
                if !(interval.0 < interval.1) {
                    return Err(LiftError::InvalidInput(format!("empty interval [{}, {}]", interval.0, interval.1)));
                }
                if squares.iter().any(|p| !p.is_finite()) {
                    return Err(LiftError::InvalidInput("square terms must have finite coefficients".into()));
                }
            }
            NonnegFunction::Sampled { grid, values } => {
                if grid.len() < 2 || grid.len() != values.len() {
                    return Err(LiftError::InvalidInput("sampled function needs matching grid and values, at least 2".into()));
                }
                if !grid.windows(2).all(|w| w[1] > w[0]) || values.iter().any(|v| !v.is_finite()) {
                    return Err(LiftError::InvalidInput("grid must be strictly increasing and values finite".into()));
                }
            }
        }
        Ok(())
    }

    /// Grid and values used by [`sqrt_lift`].
    fn samples(&self, grid_size: usize) -> Result<(Vec<T>, Vec<T>)> {
        match self {
            NonnegFunction::Squares { interval, squares } => {
                if grid_size < 2 {
                    return Err(LiftError::InvalidParameter("grid needs at least 2 points".into()));
                }
                let f = Self::square_sum(squares);
                let grid = uniform_grid(interval.0, interval.1, grid_size);
                let values = grid.iter().map(|&t| f.at(t)).collect();
                Ok((grid, values))
            }
            NonnegFunction::Sampled { grid, values } => Ok((grid.clone(), values.clone())),
        }
    }

    /// Estimate of `Lip(f′)` over the whole domain.
    pub fn derivative_lip(&self) -> T {
        match self {
            NonnegFunction::Squares { interval, squares } => {
                sup_abs_poly(&Self::square_sum(squares).nth_derivative(2), interval.0, interval.1, DEFAULT_SUP_SAMPLES)
            }
            NonnegFunction::Sampled { grid, values } if grid.len() >= 3 => {
                max_slope(grid, &divided_derivatives(grid, values, 1))
            }
            NonnegFunction::Sampled { .. } => T::zero(),
        }
    }
}

/// A signed square root sampled on a grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignedSqrtLift<T> {
    pub grid: Vec<T>,
    pub values: Vec<T>,
    /// Midpoints of all zero runs of `f`.
    pub zero_sites: Vec<T>,
    /// The zero sites at which the sign changes.
    pub flips: Vec<T>,
    pub empirical_lip: T,
    /// `max |g² − f|`.
    pub residual: T,
    /// `sqrt(Lip(f′))`.
    pub lip_bound: T,
    /// `empirical_lip ≤ lip_bound + 1e−6`.
    pub lip_ok: bool,
}

/// One-sided derivative of `v` at `site`, extrapolated from up to three
/// samples of the adjacent segment.
fn side_derivative<T: Scalar>(grid: &[T], v: &[T], idx: &[usize], site: T) -> T {
    match idx.len() {
        0 | 1 => T::zero(),
        2 => (v[idx[0]] - v[idx[1]]) / (grid[idx[0]] - grid[idx[1]]),
        _ => quadratic_derivative_at(
            [grid[idx[2]], grid[idx[1]], grid[idx[0]]],
            [v[idx[2]], v[idx[1]], v[idx[0]]],
            site,
        ),
    }
}

/// Signed square root of `f` on a `grid_size`-point grid (the sample grid
/// for sampled input).
pub fn sqrt_lift<T: Scalar>(f: &NonnegFunction<T>, grid_size: usize) -> Result<SignedSqrtLift<T>> {
    f.validate()?;
    let (grid, values) = f.samples(grid_size)?;
    let level = T::lit(ZERO_LEVEL) * (T::one() + sup_abs(&values));
    if let Some(k) = values.iter().position(|&v| v < -level) {
        return Err(LiftError::NotNonnegative { t: grid[k].as_f64(), value: values[k].as_f64() });
    }
    let root: Vec<T> = values.iter().map(|&v| v.max(T::zero()).sqrt()).collect();
    let zero: Vec<bool> = values.iter().map(|&v| v <= level).collect();

    // maximal zero runs [lo, hi]
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut k = 0;
    while k < zero.len() {
        if zero[k] {
            let lo = k;
            while k + 1 < zero.len() && zero[k + 1] {
                k += 1;
            }
            runs.push((lo, k));
        }
        k += 1;
    }

    let mut sign = vec![T::one(); grid.len()];
    let mut current = T::one();
    let mut flips = Vec::new();
    let mut next = 0;
    for (r, &(lo, hi)) in runs.iter().enumerate() {
        for s in sign.iter_mut().take(hi + 1).skip(next) {
            *s = current;
        }
        let left_start = if r == 0 { 0 } else { runs[r - 1].1 + 1 };
        let right_end = runs.get(r + 1).map_or(grid.len(), |n| n.0);
        let left: Vec<usize> = (left_start..lo).rev().take(3).collect();
        let right: Vec<usize> = (hi + 1..right_end).take(3).collect();
        if !left.is_empty() && !right.is_empty() {
            let site = (grid[lo] + grid[hi]) / T::lit(2.0);
            let dl = side_derivative(&grid, &root, &left, site);
            let dr = side_derivative(&grid, &root, &right, site);
            let keep = (dl - dr).abs();
            let flip = (dl + dr).abs();
            let tie = T::lit(1e-6) * (T::one() + fmax(dl.abs(), dr.abs()));
            if flip < keep - tie {
                current = -current;
                flips.push(site);
            }
        }
        next = hi + 1;
    }
    for s in sign.iter_mut().skip(next) {
        *s = current;
    }
    // orient so the final segment is nonnegative
    if current < T::zero() {
        for s in sign.iter_mut() {
            *s = -*s;
        }
    }
    // adding zero turns −0 into +0
    let g: Vec<T> = root.iter().zip(&sign).map(|(&r, &s)| s * r + T::zero()).collect();
    let residual = g.iter().zip(&values).fold(T::zero(), |m, (&gv, &fv)| fmax(m, (gv * gv - fv).abs()));
    let empirical_lip = max_slope(&grid, &g);
    let lip_bound = f.derivative_lip().sqrt();
    Ok(SignedSqrtLift {
        zero_sites: runs.iter().map(|&(lo, hi)| (grid[lo] + grid[hi]) / T::lit(2.0)).collect(),
        grid,
        values: g,
        flips,
        empirical_lip,
        residual,
        lip_bound,
        lip_ok: empirical_lip <= lip_bound + T::lit(1e-6),
    })
}

/// On-disk function description: `{"interval": [a, b], "squares": [[…], …]}`
/// or `{"grid": […], "values": […]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum FunctionFile {
    Squares { interval: [f64; 2], squares: Vec<Vec<f64>> },
    Sampled { grid: Vec<f64>, values: Vec<f64> },
}

impl FunctionFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| LiftError::InvalidInput(format!("function spec: {e}")))
    }

    pub fn into_function<T: Scalar>(self) -> NonnegFunction<T> {
        let cast = |v: Vec<f64>| v.into_iter().map(T::lit).collect::<Vec<T>>();
        match self {
            FunctionFile::Squares { interval, squares } => NonnegFunction::Squares {
                interval: (T::lit(interval[0]), T::lit(interval[1])),
                squares: squares.into_iter().map(|c| Poly::new(cast(c))).collect(),
            },
            FunctionFile::Sampled { grid, values } => NonnegFunction::Sampled { grid: cast(grid), values: cast(values) },
        }
    }
}
