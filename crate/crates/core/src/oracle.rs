//! Brute-force reference machinery: dense lifting by per-step minimum-cost
//! matching, Lipschitz estimators, and adaptive grid refinement.

use serde::{Deserialize, Serialize};

use crate::assignment::{assignment_cost, displacement_costs, min_cost_assignment};
use crate::curve::CoeffCurve;
use crate::error::{LiftError, Result};
use crate::lift::{c1_minimiser, classify_dominant, row_distance, Case, LiftResult, LocalLip};
use crate::norms::uniform_grid;
use crate::scalar::{fmax, Scalar};

pub const DEFAULT_REFINE_TOL: f64 = 1e-3;
pub const DEFAULT_MAX_DEPTH: usize = 20;
/// Default size of the dense oracle grid.
pub const DEFAULT_ORACLE_GRID: usize = 100_000;
/// Largest grid accepted by the all-pairs Lipschitz estimator.
pub const ALL_PAIRS_LIMIT: usize = 2000;

/// Anything carrying a grid and row-wise branch values.
pub trait BranchData<T> {
    fn grid(&self) -> &[T];
    fn rows(&self) -> &[Vec<T>];
}

impl<T> BranchData<T> for LiftResult<T> {
    fn grid(&self) -> &[T] {
        &self.grid
    }
    fn rows(&self) -> &[Vec<T>] {
        &self.branches
    }
}

/// Lift obtained by chaining optimal matchings between consecutive rows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchingLift<T> {
    pub grid: Vec<T>,
    pub branches: Vec<Vec<T>>,
    /// `permutations[k][i]` is the sorted position at step `k + 1` that
    /// continues branch `i`.
    pub permutations: Vec<Vec<usize>>,
    /// Total displacement `Σ_i |Δλ_i|` of each step.
    pub step_costs: Vec<T>,
}

impl<T> BranchData<T> for MatchingLift<T> {
    fn grid(&self) -> &[T] {
        &self.grid
    }
    fn rows(&self) -> &[Vec<T>] {
        &self.branches
    }
}

/// Dense lift that matches every pair of consecutive sorted rows by a general
/// assignment solver, verifying that the optimum is the sorted order.
pub fn brute_force_lift<T: Scalar>(curve: &CoeffCurve<T>, dense_grid_size: usize) -> Result<MatchingLift<T>> {
    if dense_grid_size == 0 {
        return Err(LiftError::InvalidParameter("grid size must be positive".into()));
    }
    let (a, b) = curve.interval();
    let grid = if dense_grid_size == 1 { vec![a] } else { uniform_grid(a, b, dense_grid_size) };
    let sorted = curve.roots_on(&grid)?;
    let n = curve.n();
    let mut branches = Vec::with_capacity(grid.len());
    let mut permutations = Vec::with_capacity(grid.len().saturating_sub(1));
    let mut step_costs = Vec::with_capacity(grid.len().saturating_sub(1));
    branches.push(sorted[0].clone());
    for k in 1..grid.len() {
        let prev: &Vec<T> = &branches[k - 1];
        let cost = displacement_costs(prev, &sorted[k]);
        let perm = min_cost_assignment(&cost);
        let optimum = assignment_cost(&cost, &perm);
        let identity: Vec<usize> = (0..n).collect();
        let sorted_cost = assignment_cost(&cost, &identity);
        let scale = T::one() + row_distance(prev, &vec![T::zero(); n]);
        if sorted_cost > optimum + T::lit(1e-12) * scale * T::from_index(n) {
            return Err(LiftError::Precondition(format!(
                "sorted matching is not optimal at t = {}: {} > {}",
                grid[k], sorted_cost, optimum
            )));
        }
        branches.push(perm.iter().map(|&j| sorted[k][j]).collect());
        permutations.push(perm);
        step_costs.push(optimum);
    }
    Ok(MatchingLift { grid, branches, permutations, step_costs })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LipMode {
    Consecutive,
    AllPairs,
}

/// Finite-sample Lipschitz constant of a branch table.
pub fn empirical_lip<T: Scalar, L: BranchData<T> + ?Sized>(lift: &L, mode: LipMode) -> Result<T> {
    let (grid, rows) = (lift.grid(), lift.rows());
    if grid.len() < 2 {
        return Err(LiftError::InvalidInput("a Lipschitz estimate needs at least 2 grid points".into()));
    }
    match mode {
        LipMode::Consecutive => Ok((1..grid.len()).fold(T::zero(), |m, k| {
            fmax(m, row_distance(&rows[k - 1], &rows[k]) / (grid[k] - grid[k - 1]))
        })),
        LipMode::AllPairs => {
            if grid.len() > ALL_PAIRS_LIMIT {
                return Err(LiftError::InvalidParameter(format!(
                    "all-pairs estimation is limited to {ALL_PAIRS_LIMIT} points, got {}",
                    grid.len()
                )));
            }
            let mut best = T::zero();
            for j in 1..grid.len() {
                for i in 0..j {
                    best = fmax(best, row_distance(&rows[i], &rows[j]) / (grid[j] - grid[i]));
                }
            }
            Ok(best)
        }
    }
}

/// Cells whose branch slopes bend by more than `tol (1 + L)` relative to both
/// neighbouring cells.
fn kinked_cells<T: Scalar>(grid: &[T], rows: &[Vec<T>], lip: T, tol: T) -> Vec<usize> {
    let cells = grid.len() - 1;
    let n = rows[0].len();
    let slope = |k: usize, i: usize| (rows[k + 1][i] - rows[k][i]) / (grid[k + 1] - grid[k]);
    let limit = tol * (T::one() + lip);
    (0..cells)
        .filter(|&k| {
            (0..n).any(|i| {
                let s = slope(k, i);
                let left = (k > 0).then(|| (s - slope(k - 1, i)).abs());
                let right = (k + 1 < cells).then(|| (slope(k + 1, i) - s).abs());
                let bend = match (left, right) {
                    (Some(l), Some(r)) => l.min(r),
                    (Some(l), None) => l,
                    (None, Some(r)) => r,
                    (None, None) => T::zero(),
                };
                bend > limit
            })
        })
        .collect()
}

fn spread<T: Scalar>(row: &[T]) -> T {
    let mean = row.iter().copied().sum::<T>() / T::from_index(row.len());
    row.iter().map(|&r| (r - mean) * (r - mean)).sum()
}

/// Interior nodes where the root spread has a small local minimum.
fn spread_minima<T: Scalar>(rows: &[Vec<T>], include_zero: bool) -> Vec<usize> {
    let c1: Vec<T> = rows.iter().map(|r| spread(r)).collect();
    let top = c1.iter().fold(T::zero(), |m, &v| fmax(m, v));
    let small = T::lit(1e-2) * top;
    (1..c1.len().saturating_sub(1))
        .filter(|&k| {
            c1[k] <= c1[k - 1]
                && c1[k] <= c1[k + 1]
                && (c1[k] < c1[k - 1] || c1[k] < c1[k + 1])
                && c1[k] <= small
                && (include_zero || c1[k] > T::zero())
        })
        .collect()
}

/// Bisects cells near kinks of the branches and near small minima of the
/// root spread, at most `max_depth` times, then records local Lipschitz
/// constants around points where the spread vanishes.
pub fn refine<T: Scalar>(curve: &CoeffCurve<T>, lift: LiftResult<T>, tol: T, max_depth: usize) -> Result<LiftResult<T>> {
    let mut lift = lift;
    if lift.len() < 3 {
        return Ok(lift);
    }
    let (a, b) = (lift.grid[0], lift.grid[lift.len() - 1]);
    let h0 = lift.grid.windows(2).fold(T::zero(), |m, w| fmax(m, w[1] - w[0]));
    let depth_floor = h0 / T::lit(2.0).powi(max_depth as i32);
    let span_floor = T::lit(1e-5) * (b - a);
    let floor = fmax(depth_floor, span_floor);
    let mut unresolved = Vec::new();
    for level in 0..=max_depth {
        let mut flagged = kinked_cells(&lift.grid, &lift.branches, lift.empirical_lip, tol);
        for k in spread_minima(&lift.branches, false) {
            flagged.push(k - 1);
            flagged.push(k);
        }
        flagged.sort_unstable();
        flagged.dedup();
        let two = T::lit(2.0);
        let (eligible, stuck): (Vec<usize>, Vec<usize>) =
            flagged.into_iter().partition(|&k| (lift.grid[k + 1] - lift.grid[k]) / two >= floor);
        if eligible.is_empty() || level == max_depth {
            unresolved = if depth_floor >= span_floor { stuck } else { Vec::new() };
            if level == max_depth && !eligible.is_empty() {
                unresolved.extend(eligible);
            }
            break;
        }
        let mids: Vec<T> = eligible.iter().map(|&k| (lift.grid[k] + lift.grid[k + 1]) / two).collect();
        let new_rows = curve.roots_on(&mids)?;
        let mut grid = Vec::with_capacity(lift.len() + mids.len());
        let mut rows = Vec::with_capacity(lift.len() + mids.len());
        let mut next = eligible.iter().zip(mids.into_iter().zip(new_rows)).peekable();
        for (k, (t, row)) in lift.grid.iter().zip(&lift.branches).enumerate() {
            grid.push(*t);
            rows.push(row.clone());
            if let Some((_, (mt, mrow))) = next.next_if(|(&j, _)| j == k) {
                grid.push(mt);
                rows.push(mrow);
            }
        }
        lift.grid = grid;
        lift.branches = rows;
        lift.recompute_stats();
    }
    if !unresolved.is_empty() {
        lift.warnings.push(format!(
            "refinement depth exhausted with {} unresolved cell(s), first near t = {}",
            unresolved.len(),
            lift.grid[unresolved[0]]
        ));
    }
    lift.local_lips = local_lips(curve, &lift)?;
    Ok(lift)
}

fn local_lips<T: Scalar>(curve: &CoeffCurve<T>, lift: &LiftResult<T>) -> Result<Vec<LocalLip<T>>> {
    let grid = &lift.grid;
    let last = grid.len() - 1;
    let (a, b) = (grid[0], grid[last]);
    let dom = curve.to_dominant();
    let mut out: Vec<LocalLip<T>> = Vec::new();
    for k in spread_minima(&lift.branches, true) {
        let t_star = c1_minimiser(&dom, grid[k], grid[k - 1], grid[k + 1]);
        let point = classify_dominant(&dom, t_star)?;
        if point.class == Case::Case0 {
            continue;
        }
        if out.last().is_some_and(|prev| (prev.point.t - t_star).abs() <= grid[k + 1] - grid[k - 1]) {
            continue;
        }
        let cell = (grid[k] - grid[k - 1]).min(grid[k + 1] - grid[k]);
        let mut delta = (t_star - a).min(b - t_star).min((b - a) / T::lit(4.0));
        let mut windows = Vec::new();
        while delta >= T::lit(2.0) * cell && windows.len() < 16 {
            let lo = grid.partition_point(|&t| t < t_star - delta);
            let hi = grid.partition_point(|&t| t <= t_star + delta);
            let lip = (lo + 1..hi).fold(T::zero(), |m, j| {
                fmax(m, row_distance(&lift.branches[j - 1], &lift.branches[j]) / (grid[j] - grid[j - 1]))
            });
            windows.push((delta, lip));
            delta /= T::lit(2.0);
        }
        out.push(LocalLip { point, windows });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lift::{lift_sorted, lift_sorted_on, LiftMode};
    use crate::poly::Poly;

    fn roots_curve(roots: &[&[f64]]) -> CoeffCurve<f64> {
        let polys: Vec<Poly<f64>> = roots.iter().map(|c| Poly::new(c.to_vec())).collect();
        CoeffCurve::from_root_polys((-1.0, 1.0), &polys).unwrap()
    }

    #[test]
    fn brute_force_matches_sorted() {
        let c = roots_curve(&[&[-1.0, 1.0], &[1.0, 1.0]]);
        let m = brute_force_lift(&c, 10_000).unwrap();
        let s = lift_sorted_on(&c, &m.grid).unwrap();
        assert_eq!(m.branches, s.branches);
        let c = roots_curve(&[&[0.0, 3.0], &[0.0, -1.0]]);
        let m = brute_force_lift(&c, 10_000).unwrap();
        let s = lift_sorted_on(&c, &m.grid).unwrap();
        assert_eq!(m.branches, s.branches);
        let single = brute_force_lift(&c, 1).unwrap();
        assert_eq!(single.branches.len(), 1);
        assert!(single.step_costs.is_empty());
    }

    #[test]
    fn lip_examples() {
        let grid = uniform_grid(-1.0, 1.0, 201);
        let lin = LiftResult::from_rows(grid.clone(), grid.iter().map(|t| vec![t - 1.0, t + 1.0]).collect(), LiftMode::C0);
        let l: f64 = empirical_lip(&lin, LipMode::Consecutive).unwrap();
        assert!((l - 1.0).abs() < 1e-12);
        let kink = LiftResult::from_rows(
            grid.clone(),
            grid.iter().map(|&t: &f64| vec![(-t).min(3.0 * t), (-t).max(3.0 * t)]).collect(),
            LiftMode::C0,
        );
        let c = empirical_lip(&kink, LipMode::Consecutive).unwrap();
        let p = empirical_lip(&kink, LipMode::AllPairs).unwrap();
        assert!((c - 3.0).abs() < 1e-12);
        assert!(p <= c + 1e-9);
        let flat = LiftResult::from_rows(grid.clone(), vec![vec![2.0]; 201], LiftMode::C0);
        assert_eq!(empirical_lip(&flat, LipMode::AllPairs).unwrap(), 0.0);
        let one = LiftResult::from_rows(vec![0.0], vec![vec![1.0]], LiftMode::C0);
        assert!(empirical_lip(&one, LipMode::Consecutive).is_err());
    }

    #[test]
    fn flat_family_local_lips_shrink() {
        let c = roots_curve(&[&[0.0, 0.0, 1.0], &[0.0, 0.0, -1.0]]);
        let l = lift_sorted(&c, 100).unwrap();
        assert!(l.len() > 100);
        let local = &l.local_lips[0];
        assert_eq!(local.point.class, Case::Case2);
        let lips: Vec<f64> = local.windows.iter().map(|w| w.1).collect();
        assert!(lips.windows(2).all(|w| w[1] <= w[0]));
        assert!(lips.last().unwrap() < &(lips[0] / 100.0), "{lips:?}");
    }
}
