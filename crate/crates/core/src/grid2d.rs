//! Lifts over a rectangular grid of parameters.
//!
//! Every grid line in `y` is lifted by sorting; consecutive lines are glued
//! by the permutation matching their first nodes. Axis-wise Lipschitz
//! constants bound the planar one up to a factor `√2`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::assignment::{displacement_costs, min_cost_assignment};
use crate::error::{LiftError, Result};
use crate::hyperbolic::{HyperbolicPoly, DEFAULT_TOL};
use crate::lift::row_distance;
use crate::scalar::{fmax, Scalar};

/// Above this many nodes the planar Lipschitz estimate only compares nodes
/// within [`PAIR_WINDOW`] steps along each axis.
pub const ALL_PAIRS_NODES: usize = 1500;

/// Half-width, in grid steps, of the comparison window on large grids.
pub const PAIR_WINDOW: usize = 4;

/// Elementary symmetric values sampled on a rectangular grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid2d<T> {
    pub n: usize,
    pub x: Vec<T>,
    pub y: Vec<T>,
    /// `values[ix][iy]` holds `(e₁, …, e_n)` at `(x[ix], y[iy])`.
    pub values: Vec<Vec<Vec<T>>>,
}

impl<T: Scalar> Grid2d<T> {
    /// Samples `f(x, y) = (e₁, …, e_n)` at every node.
    pub fn from_fn<F: Fn(T, T) -> Vec<T>>(n: usize, x: Vec<T>, y: Vec<T>, f: F) -> Self {
        let values = x.iter().map(|&xi| y.iter().map(|&yj| f(xi, yj)).collect()).collect();
        Grid2d { n, x, y, values }
    }

    fn validate(&self) -> Result<()> {
        let increasing = |v: &[T]| v.len() >= 2 && v.windows(2).all(|w| w[1] > w[0]) && v.iter().all(|t| t.is_finite());
        if self.n == 0 {
            return Err(LiftError::InvalidInput("degree n must be positive".into()));
        }
        if !increasing(&self.x) || !increasing(&self.y) {
            return Err(LiftError::InvalidInput("x and y must be strictly increasing with at least 2 points".into()));
        }
        if self.values.len() != self.x.len() {
            return Err(LiftError::InvalidInput(format!("expected {} rows of values, got {}", self.x.len(), self.values.len())));
        }
        for (ix, row) in self.values.iter().enumerate() {
            if row.len() != self.y.len() {
                return Err(LiftError::InvalidInput(format!("row {ix} has {} nodes, expected {}", row.len(), self.y.len())));
            }
            if let Some(iy) = row.iter().position(|v| v.len() != self.n) {
                return Err(LiftError::InvalidInput(format!("node ({ix}, {iy}) does not hold {} values", self.n)));
            }
        }
        Ok(())
    }
}

/// A lift over a grid together with its Lipschitz diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid2dLift<T> {
    pub x: Vec<T>,
    pub y: Vec<T>,
    /// `branches[ix][iy]` is the lift value at `(x[ix], y[iy])`.
    pub branches: Vec<Vec<Vec<T>>>,
    /// Permutation applied to each grid line when gluing it to the previous.
    pub permutations: Vec<Vec<usize>>,
    pub lip_x: T,
    pub lip_y: T,
    /// Planar estimate `max ‖λ(p) − λ(q)‖ / |p − q|`.
    pub lip_2d: T,
    /// `max(lip_x, lip_y)·√2`.
    pub bound: T,
    pub within_bound: bool,
}

/// Lifts `f` over its grid and compares planar and axis-wise Lipschitz
/// constants.
pub fn lift_grid_2d<T: Scalar>(f: &Grid2d<T>) -> Result<Grid2dLift<T>> {
    f.validate()?;
    let tol = T::lit(DEFAULT_TOL);
    let mut lines: Vec<Vec<Vec<T>>> = f
        .values
        .par_iter()
        .enumerate()
        .map(|(ix, row)| {
            row.iter()
                .enumerate()
                .map(|(iy, e)| {
                    HyperbolicPoly::from_elementary(e.clone())
                        .and_then(|p| p.roots(tol))
                        .map(|r| r.into_vec())
                        .map_err(|err| node_error(err, f, ix, iy))
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let mut permutations = vec![(0..f.n).collect::<Vec<_>>()];
    for ix in 1..lines.len() {
        let perm = min_cost_assignment(&displacement_costs(&lines[ix - 1][0], &lines[ix][0]));
        for node in lines[ix].iter_mut() {
            *node = perm.iter().map(|&j| node[j]).collect();
        }
        let agree = T::lit(1e-8) * (T::one() + lines[ix][0].iter().fold(T::zero(), |m, v| fmax(m, v.abs())));
        let dx = f.x[ix] - f.x[ix - 1];
        // after gluing, no node may move faster across the seam than the
        // sorted labelling allows
        for (iy, (before, after)) in lines[ix - 1].iter().zip(&lines[ix]).enumerate() {
            let mut sorted = after.clone();
            sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
            let mut prev = before.clone();
            prev.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
            if row_distance(before, after) / dx > row_distance(&prev, &sorted) / dx + agree / dx {
                return Err(LiftError::IncompatibleLifts(format!(
                    "grid lines x = {} and x = {} do not glue at y = {}",
                    f.x[ix - 1],
                    f.x[ix],
                    f.y[iy]
                )));
            }
        }
        permutations.push(perm);
    }

    let mut lip_x = T::zero();
    let mut lip_y = T::zero();
    for ix in 0..f.x.len() {
        for iy in 0..f.y.len() {
            if ix + 1 < f.x.len() {
                lip_x = fmax(lip_x, row_distance(&lines[ix][iy], &lines[ix + 1][iy]) / (f.x[ix + 1] - f.x[ix]));
            }
            if iy + 1 < f.y.len() {
                lip_y = fmax(lip_y, row_distance(&lines[ix][iy], &lines[ix][iy + 1]) / (f.y[iy + 1] - f.y[iy]));
            }
        }
    }
    let lip_2d = planar_lip(&f.x, &f.y, &lines);
    let bound = fmax(lip_x, lip_y) * T::lit(2.0).sqrt();
    Ok(Grid2dLift {
        x: f.x.clone(),
        y: f.y.clone(),
        branches: lines,
        permutations,
        lip_x,
        lip_y,
        lip_2d,
        bound,
        within_bound: lip_2d <= bound * (T::one() + T::lit(1e-6)),
    })
}

fn node_error<T: Scalar>(err: LiftError, f: &Grid2d<T>, ix: usize, iy: usize) -> LiftError {
    let (x, y) = (f.x[ix].as_f64(), f.y[iy].as_f64());
    match err {
        LiftError::NotHyperbolic { witness, .. } => LiftError::NotHyperbolicAtNode { x, y, witness },
        other => LiftError::InvalidInput(format!("node (x = {x}, y = {y}): {other}")),
    }
}

fn planar_lip<T: Scalar>(x: &[T], y: &[T], lines: &[Vec<Vec<T>>]) -> T {
    let (nx, ny) = (x.len(), y.len());
    let all = nx * ny <= ALL_PAIRS_NODES;
    (0..nx * ny)
        .into_par_iter()
        .map(|p| {
            let (ix, iy) = (p / ny, p % ny);
            let (x_hi, y_lo, y_hi) = if all {
                (nx - 1, 0, ny - 1)
            } else {
                ((ix + PAIR_WINDOW).min(nx - 1), iy.saturating_sub(PAIR_WINDOW), (iy + PAIR_WINDOW).min(ny - 1))
            };
            let mut best = T::zero();
            for jx in ix..=x_hi {
                for jy in y_lo..=y_hi {
                    if jx == ix && jy <= iy {
                        continue;
                    }
                    let dist = ((x[jx] - x[ix]).powi(2) + (y[jy] - y[iy]).powi(2)).sqrt();
                    best = fmax(best, row_distance(&lines[ix][iy], &lines[jx][jy]) / dist);
                }
            }
            best
        })
        .reduce(T::zero, fmax)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::uniform_grid;

    fn axis() -> Vec<f64> {
        uniform_grid(-1.0, 1.0, 21)
    }

    #[test]
    fn diagonal_kink() {
        let f = Grid2d::from_fn(2, axis(), axis(), |x, y| vec![0.0, -(x + y) * (x + y)]);
        let r = lift_grid_2d(&f).unwrap();
        assert!((r.lip_x - 1.0).abs() < 1e-9 && (r.lip_y - 1.0).abs() < 1e-9);
        assert!((r.lip_2d - 2f64.sqrt()).abs() < 1e-9, "{}", r.lip_2d);
        assert!(r.within_bound);
    }

    #[test]
    fn constant_field() {
        let f = Grid2d::from_fn(3, axis(), axis(), |_, _| vec![6.0, 11.0, 6.0]);
        let r = lift_grid_2d(&f).unwrap();
        assert!(r.lip_x < 1e-9 && r.lip_y < 1e-9 && r.lip_2d < 1e-9);
    }

    #[test]
    fn min_and_max() {
        let f = Grid2d::from_fn(2, axis(), axis(), |x, y| vec![x + y, x * y]);
        let r = lift_grid_2d(&f).unwrap();
        assert!((r.lip_x - 1.0).abs() < 1e-6 && (r.lip_y - 1.0).abs() < 1e-6);
        assert!((r.lip_2d - 1.0).abs() < 1e-6);
        assert!(r.within_bound);
    }

    #[test]
    fn large_grid_uses_window() {
        let g = uniform_grid(-1.0, 1.0, 60);
        let f = Grid2d::from_fn(2, g.clone(), g, |x, y| vec![0.0, -(x + y) * (x + y)]);
        let r = lift_grid_2d(&f).unwrap();
        assert!((r.lip_2d - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn reports_node_of_failure() {
        let f = Grid2d::from_fn(2, axis(), axis(), |x, _| vec![0.0, x + 2.0]);
        let e = lift_grid_2d(&f).unwrap_err();
        assert!(e.to_string().contains("x = -1"), "{e}");
    }
}
