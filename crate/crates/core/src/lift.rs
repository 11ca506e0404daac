//! Continuous and C¹ parameterisations of roots along a coefficient curve.
//!
//! Branch values are stored row-wise: `branches[k][i]` is branch `i` at
//! `grid[k]`. Lipschitz estimates measure the largest single-branch
//! displacement per unit of `t`.

use serde::{Deserialize, Serialize};

use crate::assignment::{assignment_cost, displacement_costs, min_cost_assignment};
use crate::curve::{curve_grid, CoeffCurve, TRACK_CHUNK};
use crate::error::{LiftError, Result};
use crate::norms::{golden_max, quadratic_derivative_at, quadratic_endpoint_derivative};
use crate::oracle::{refine, DEFAULT_MAX_DEPTH, DEFAULT_REFINE_TOL};
use crate::scalar::{fmax, Scalar};

/// Tolerance separating the three point classes.
pub const CLASSIFY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LiftMode {
    C0,
    C1,
}

/// Finite-difference smoothness data of a C¹ lift.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivativeData<T> {
    /// Derivative estimate per grid point and branch.
    pub derivatives: Vec<Vec<T>>,
    /// Largest one-sided derivative mismatch `|D⁺ − D⁻|` over branches, per
    /// grid point (zero where a side is missing).
    pub jumps: Vec<T>,
    pub max_jump: T,
    /// Parameter values where branches were found to meet.
    pub collisions: Vec<T>,
}

/// Local Lipschitz constants on shrinking windows `(t − δ, t + δ)` around a
/// point where the dominant invariant vanishes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalLip<T> {
    pub point: PointClass<T>,
    /// `(δ, Lip)` pairs with decreasing `δ`.
    pub windows: Vec<(T, T)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftResult<T> {
    pub grid: Vec<T>,
    pub branches: Vec<Vec<T>>,
    pub mode: LiftMode,
    pub max_jump: T,
    pub empirical_lip: T,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivative_data: Option<DerivativeData<T>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub local_lips: Vec<LocalLip<T>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl<T: Scalar> LiftResult<T> {
    pub fn from_rows(grid: Vec<T>, branches: Vec<Vec<T>>, mode: LiftMode) -> Self {
        let (max_jump, empirical_lip) = step_stats(&grid, &branches);
        LiftResult {
            grid,
            branches,
            mode,
            max_jump,
            empirical_lip,
            derivative_data: None,
            local_lips: Vec::new(),
            warnings: Vec::new(),
        }
    }

    /// Number of branches.
    pub fn n(&self) -> usize {
        self.branches.first().map_or(0, Vec::len)
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Values of branch `i` along the grid.
    pub fn branch(&self, i: usize) -> Vec<T> {
        self.branches.iter().map(|row| row[i]).collect()
    }

    pub(crate) fn recompute_stats(&mut self) {
        let (max_jump, lip) = step_stats(&self.grid, &self.branches);
        self.max_jump = max_jump;
        self.empirical_lip = lip;
    }
}

/// `(max |Δ|, max |Δ| / Δt)` over consecutive rows.
pub(crate) fn step_stats<T: Scalar>(grid: &[T], rows: &[Vec<T>]) -> (T, T) {
    let mut jump = T::zero();
    let mut lip = T::zero();
    for k in 1..grid.len() {
        let d = row_distance(&rows[k - 1], &rows[k]);
        jump = fmax(jump, d);
        lip = fmax(lip, d / (grid[k] - grid[k - 1]));
    }
    (jump, lip)
}

#[inline]
pub(crate) fn row_distance<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |m, (x, y)| fmax(m, (*x - *y).abs()))
}

fn check_grid<T: Scalar>(grid: &[T]) -> Result<()> {
    if grid.is_empty() {
        return Err(LiftError::InvalidInput("empty grid".into()));
    }
    if let Some(k) = grid.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(LiftError::InvalidInput(format!("grid not strictly increasing at index {}", k + 1)));
    }
    Ok(())
}

/// Sorted roots on the given grid, without refinement.
pub fn lift_sorted_on<T: Scalar>(curve: &CoeffCurve<T>, grid: &[T]) -> Result<LiftResult<T>> {
    check_grid(grid)?;
    let rows = curve.roots_on(grid)?;
    Ok(LiftResult::from_rows(grid.to_vec(), rows, LiftMode::C0))
}

/// Sorted roots on a uniform grid, refined near collisions and near zeros of
/// the dominant invariant.
pub fn lift_sorted<T: Scalar>(curve: &CoeffCurve<T>, grid_size: usize) -> Result<LiftResult<T>> {
    if grid_size < 2 {
        return Err(LiftError::InvalidParameter("grid size must be at least 2".into()));
    }
    let lift = lift_sorted_on(curve, &curve_grid(curve, grid_size))?;
    refine(curve, lift, T::lit(DEFAULT_REFINE_TOL), DEFAULT_MAX_DEPTH)
}

/// Point classification by the vanishing order of the dominant invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    /// `c₁(t) > 0`
    Case0,
    /// `c₁(t) = 0`, `c₁″(t) ≠ 0`
    Case1,
    /// `c₁` vanishes to order at least three
    Case2,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointClass<T> {
    pub t: T,
    pub class: Case,
    pub c1: T,
    pub c1_prime: T,
    pub c1_second: T,
}

/// Classifies `t` using `c₁ = Σ (λ_i − mean)²` and its first two derivatives.
pub fn classify_point<T: Scalar>(curve: &CoeffCurve<T>, t: T) -> Result<PointClass<T>> {
    let dom = curve.to_dominant();
    classify_dominant(&dom, t)
}

pub(crate) fn classify_dominant<T: Scalar>(dom: &CoeffCurve<T>, t: T) -> Result<PointClass<T>> {
    let tol = T::lit(CLASSIFY_TOL);
    let d = |k| dom.derivative_samples(0, k, &[t]).map(|v| v[0]);
    let (c1, c1_prime, c1_second) = (d(0)?, d(1)?, d(2)?);
    let class = if c1 > tol {
        Case::Case0
    } else if c1_second.abs() > tol {
        Case::Case1
    } else {
        Case::Case2
    };
    Ok(PointClass { t, class, c1, c1_prime, c1_second })
}

/// Minimiser of `c₁` near `t` on `[lo, hi]` (exact curves are searched,
/// sampled ones answer `t`).
pub(crate) fn c1_minimiser<T: Scalar>(dom: &CoeffCurve<T>, t: T, lo: T, hi: T) -> T {
    match dom.component_derivative(0, 0) {
        Some(p) => {
            let (x, v) = golden_max(|s| -p.at(s), lo, hi, 200);
            if -v <= p.at(t) {
                x
            } else {
                t
            }
        }
        None => t,
    }
}

struct Collision<T> {
    t: T,
    lo: usize,
    hi: usize,
}

/// Collision tolerance for a row of root values.
#[inline]
fn collision_tol<T: Scalar>(row: &[T]) -> T {
    let norm = row.iter().fold(T::zero(), |m, v| fmax(m, v.abs()));
    T::lit(1e-7) * (T::one() + norm)
}

fn find_collisions<T: Scalar>(curve: &CoeffCurve<T>, grid: &[T], rows: &[Vec<T>]) -> Result<Vec<Collision<T>>> {
    let n = rows[0].len();
    let big_n = grid.len();
    let mut found: Vec<(T, usize)> = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let gap: Vec<T> = rows.iter().map(|r| r[i + 1] - r[i]).collect();
        let mut k = 0;
        while k < big_n {
            let tol_k = collision_tol(&rows[k]);
            let left = (k > 0).then(|| gap[k - 1]);
            let right = (k + 1 < big_n).then(|| gap[k + 1]);
            let is_min = left.is_none_or(|g| gap[k] <= g) && right.is_none_or(|g| gap[k] <= g);
            let persistent = left.is_none_or(|g| g <= tol_k) && right.is_none_or(|g| g <= tol_k) && gap[k] <= tol_k;
            let step = fmax(
                left.map_or(T::zero(), |g| (gap[k] - g).abs()),
                right.map_or(T::zero(), |g| (g - gap[k]).abs()),
            );
            if !is_min || persistent || gap[k] > T::lit(1.5) * step + tol_k {
                k += 1;
                continue;
            }
            let lo = grid[k.saturating_sub(1)];
            let hi = grid[(k + 1).min(big_n - 1)];
            let gap_at = |t: T| -> T {
                curve.roots_at(t).map_or(T::infinity(), |r| r.values()[i + 1] - r.values()[i])
            };
            let (t_star, neg) = golden_max(|t| -gap_at(t), lo, hi, 200);
            let (t_star, g_star) = if -neg <= gap[k] { (t_star, -neg) } else { (grid[k], gap[k]) };
            let row = curve.roots_at(t_star)?;
            if g_star <= collision_tol(row.values()) {
                found.push((t_star, i));
            }
            // a plateau of equal minima belongs to one site
            k += 2;
        }
    }
    found.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite").then(a.1.cmp(&b.1)));
    let (a, b) = curve.interval();
    let h = grid[1] - grid[0];
    let same_site = fmax(T::lit(1e-9) * (b - a), h * T::lit(1e-3));
    let mut sites: Vec<Collision<T>> = Vec::new();
    for (t, i) in found {
        if let Some(last) = sites.last_mut() {
            if (t - last.t).abs() <= same_site && i <= last.hi {
                last.hi = last.hi.max(i + 1);
                continue;
            }
        }
        sites.push(Collision { t, lo: i, hi: i + 1 });
    }
    Ok(sites)
}

/// Sorted-branch matching across a collision: returns `sigma` with
/// `sigma[l] = r` pairing left sorted position `lo + l` with right sorted
/// position `lo + r`.
fn match_collision<T: Scalar>(
    curve: &CoeffCurve<T>,
    site: &Collision<T>,
    hs: T,
) -> Result<Vec<usize>> {
    let t = site.t;
    let size = site.hi - site.lo + 1;
    let side = |sign: T| -> Result<Vec<T>> {
        let ts = [t + sign * T::lit(3.0) * hs, t + sign * T::lit(2.0) * hs, t + sign * hs];
        let rows: Vec<Vec<T>> = ts
            .iter()
            .map(|&s| curve.roots_at(s).map(|r| r.into_vec()))
            .collect::<Result<_>>()?;
        Ok((0..size)
            .map(|l| {
                let j = site.lo + l;
                quadratic_derivative_at(ts, [rows[0][j], rows[1][j], rows[2][j]], t)
            })
            .collect())
    };
    let left = side(-T::one())?;
    let right = side(T::one())?;
    let cost: Vec<Vec<T>> = left.iter().map(|&dl| right.iter().map(|&dr| (dl - dr).abs()).collect()).collect();
    let sigma = min_cost_assignment(&cost);
    let identity: Vec<usize> = (0..size).collect();
    let scale = left.iter().chain(&right).fold(T::zero(), |m, d| fmax(m, d.abs()));
    let tie = T::lit(1e-6) * (T::one() + scale);
    if assignment_cost(&cost, &identity) <= assignment_cost(&cost, &sigma) + tie {
        Ok(identity)
    } else {
        Ok(sigma)
    }
}

/// A C¹ lift: sorted roots re-labelled at every collision so that one-sided
/// derivatives match.
pub fn lift_c1<T: Scalar>(curve: &CoeffCurve<T>, grid_size: usize) -> Result<LiftResult<T>> {
    if grid_size < 5 {
        return Err(LiftError::InsufficientResolution(
            "a C1 lift needs at least 5 grid points for one-sided derivative stencils".into(),
        ));
    }
    let mut grid = curve_grid(curve, grid_size);
    let mut rows = curve.roots_on(&grid)?;
    let n = curve.n();
    let big_n = grid.len();
    let (a, b) = curve.interval();
    let h = grid[1] - grid[0];
    let sites = find_collisions(curve, &grid, &rows)?;

    // keep grid points a quarter cell away from every crossing
    let quarter = h / T::lit(4.0);
    let mut moved = Vec::new();
    for site in &sites {
        for k in 1..big_n - 1 {
            if (grid[k] - site.t).abs() < quarter {
                let target = if grid[k] < site.t { site.t - quarter } else { site.t + quarter };
                if target > grid[k - 1] && target < grid[k + 1] {
                    grid[k] = target;
                    moved.push(k);
                }
            }
        }
    }
    // recompute whole continuation chunks so the rows equal roots_on(grid)
    let mut chunks: Vec<usize> = moved.iter().map(|&k| k / TRACK_CHUNK).collect();
    chunks.dedup();
    for c in chunks {
        let span = c * TRACK_CHUNK..((c + 1) * TRACK_CHUNK).min(big_n);
        let fresh = curve.roots_on(&grid[span.clone()])?;
        rows.splice(span, fresh);
    }

    let min_step = T::lit(1e-12) * (b - a);
    let mut relabel: Vec<usize> = (0..n).collect();
    let mut out = vec![vec![T::zero(); n]; big_n];
    let mut next = 0;
    for k in 0..big_n {
        while next < sites.len() && sites[next].t < grid[k] {
            let site = &sites[next];
            let mut hs = h.min((site.t - a) / T::lit(3.0)).min((b - site.t) / T::lit(3.0));
            if next > 0 {
                hs = hs.min((site.t - sites[next - 1].t) / T::lit(3.0));
            }
            if let Some(after) = sites.get(next + 1) {
                hs = hs.min((after.t - site.t) / T::lit(3.0));
            }
            if hs > min_step {
                let sigma = match_collision(curve, site, hs)?;
                let before = relabel.clone();
                for (l, &r) in sigma.iter().enumerate() {
                    relabel[site.lo + r] = before[site.lo + l];
                }
            }
            next += 1;
        }
        for (j, &label) in relabel.iter().enumerate() {
            out[k][label] = rows[k][j];
        }
    }

    let mut lift = LiftResult::from_rows(grid, out, LiftMode::C1);
    let mut data = derivative_data(&lift.grid, &lift.branches);
    data.collisions = sites.iter().map(|s| s.t).collect();
    lift.derivative_data = Some(data);
    Ok(lift)
}

/// One-sided quadratic derivative estimates and their mismatch at every node.
pub(crate) fn derivative_data<T: Scalar>(grid: &[T], rows: &[Vec<T>]) -> DerivativeData<T> {
    let big_n = grid.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut derivatives = vec![vec![T::zero(); n]; big_n];
    let mut jumps = vec![T::zero(); big_n];
    if big_n < 3 {
        if big_n == 2 {
            for i in 0..n {
                let s = (rows[1][i] - rows[0][i]) / (grid[1] - grid[0]);
                derivatives[0][i] = s;
                derivatives[1][i] = s;
            }
        }
        return DerivativeData { derivatives, jumps, max_jump: T::zero(), collisions: Vec::new() };
    }
    for k in 0..big_n {
        let c = k.clamp(1, big_n - 2);
        let ts = [grid[c - 1], grid[c], grid[c + 1]];
        let mut jump = T::zero();
        for i in 0..n {
            derivatives[k][i] =
                quadratic_derivative_at(ts, [rows[c - 1][i], rows[c][i], rows[c + 1][i]], grid[k]);
            if k >= 2 && k + 2 < big_n {
                let minus = quadratic_endpoint_derivative(
                    [grid[k - 2], grid[k - 1], grid[k]],
                    [rows[k - 2][i], rows[k - 1][i], rows[k][i]],
                );
                let plus = quadratic_endpoint_derivative(
                    [grid[k + 2], grid[k + 1], grid[k]],
                    [rows[k + 2][i], rows[k + 1][i], rows[k][i]],
                );
                jump = fmax(jump, (plus - minus).abs());
            }
        }
        jumps[k] = jump;
    }
    let max_jump = jumps.iter().fold(T::zero(), |m, &j| fmax(m, j));
    DerivativeData { derivatives, jumps, max_jump, collisions: Vec::new() }
}

/// Joins two lifts whose grids meet in `overlap`, re-labelling `right` by the
/// permutation that matches it to `left` at a shared grid point.
pub fn glue<T: Scalar>(left: &LiftResult<T>, right: &LiftResult<T>, overlap: (T, T)) -> Result<LiftResult<T>> {
    let (lo, hi) = overlap;
    if left.n() != right.n() {
        return Err(LiftError::IncompatibleLifts(format!(
            "lifts have {} and {} branches",
            left.n(),
            right.n()
        )));
    }
    let mut best: Option<(usize, usize, T)> = None;
    let mut j = 0;
    for (k, &t) in left.grid.iter().enumerate() {
        if t < lo || t > hi {
            continue;
        }
        let close = T::lit(1e-12) * (T::one() + t.abs());
        while j < right.grid.len() && right.grid[j] < t - close {
            j += 1;
        }
        if j >= right.grid.len() || (right.grid[j] - t).abs() > close {
            continue;
        }
        let mut l = left.branches[k].clone();
        let mut r = right.branches[j].clone();
        l.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
        r.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
        let scale = T::one() + l.iter().fold(T::zero(), |m, v| fmax(m, v.abs()));
        if row_distance(&l, &r) > T::lit(1e-8) * scale {
            continue;
        }
        let separation = l.windows(2).fold(T::infinity(), |m, w| m.min(w[1] - w[0]));
        if best.is_none_or(|(_, _, s)| separation > s) {
            best = Some((k, j, separation));
        }
    }
    let Some((k, j, _)) = best else {
        return Err(LiftError::IncompatibleLifts(format!(
            "no shared grid point in [{lo}, {hi}] where the root multisets agree"
        )));
    };
    let perm = min_cost_assignment(&displacement_costs(&left.branches[k], &right.branches[j]));
    let mut grid = left.grid[..=k].to_vec();
    let mut rows = left.branches[..=k].to_vec();
    for m in j + 1..right.grid.len() {
        grid.push(right.grid[m]);
        rows.push(perm.iter().map(|&p| right.branches[m][p]).collect());
    }
    let mode = if left.mode == right.mode { left.mode } else { LiftMode::C0 };
    let mut out = LiftResult::from_rows(grid, rows, mode);
    if mode == LiftMode::C1 {
        out.derivative_data = Some(derivative_data(&out.grid, &out.branches));
    }
    let parts = fmax(left.empirical_lip, right.empirical_lip);
    if out.empirical_lip > parts + T::lit(1e-9) {
        out.warnings.push(format!(
            "glued Lipschitz estimate {} exceeds the parts' maximum {}",
            out.empirical_lip, parts
        ));
    }
    out.warnings.extend(left.warnings.iter().cloned());
    out.warnings.extend(right.warnings.iter().cloned());
    Ok(out)
}
