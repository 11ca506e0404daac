//! Interpolation inequalities and the explicit Lipschitz bound quantities.
//!
//! [`compute_bounds`] evaluates `A₁`, `A₂`, `A₀ = 6·max(A₁, A₂)` for a curve in
//! the centred dominant system and compares the bound expression with the
//! Lipschitz constant of the sorted lift. The remaining checks verify the
//! scalar inequalities the bound is assembled from on sampled data.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{CoeffCurve, SeminormEstimate};
use crate::error::{LiftError, Result};
use crate::lift::lift_sorted_on;
use crate::norms::{max_slope, sup_abs, sup_abs_poly, uniform_grid, DEFAULT_SUP_SAMPLES};
use crate::poly::Poly;
use crate::scalar::{fmax, Scalar};

/// Grid size used for the empirical Lipschitz constant and assumption checks.
pub const DEFAULT_BOUND_GRID: usize = 4096;

/// Bound quantities on a pair of nested intervals `I₀ ⋐ I₁`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport<T> {
    #[serde(rename = "I0")]
    pub i0: [T; 2],
    #[serde(rename = "I1")]
    pub i1: [T; 2],
    pub delta: T,
    /// `C^{d−1,1}(I₁)` ingredients of every component of the dominant curve.
    pub seminorms: Vec<SeminormEstimate<T>>,
    #[serde(rename = "A1")]
    pub a1: T,
    #[serde(rename = "A2")]
    pub a2: T,
    #[serde(rename = "A0")]
    pub a0: T,
    pub bound_expr: T,
    pub alt_bound: T,
    pub empirical_lip: T,
    /// `empirical_lip / bound_expr`; zero for the all-zero curve and `None`
    /// when only the denominator vanishes.
    pub ratio: Option<T>,
}

fn check_nested<T: Scalar>(curve: &CoeffCurve<T>, i0: (T, T), i1: (T, T)) -> Result<T> {
    let ((a0, b0), (a1, b1)) = (i0, i1);
    if !(a0 < b0) || !(a1 < b1) {
        return Err(LiftError::InvalidIntervals(format!("empty interval in I0 = ({a0}, {b0}), I1 = ({a1}, {b1})")));
    }
    if !curve.contains(a1) || !curve.contains(b1) {
        let (a, b) = curve.interval();
        return Err(LiftError::InvalidIntervals(format!("I1 = ({a1}, {b1}) leaves the curve interval [{a}, {b}]")));
    }
    let delta = (a0 - a1).min(b1 - b0);
    if !(delta > T::zero()) {
        return Err(LiftError::InvalidIntervals(format!(
            "I0 = ({a0}, {b0}) is not compactly contained in I1 = ({a1}, {b1})"
        )));
    }
    Ok(delta)
}

/// [`compute_bounds_with`] at the default sampling densities.
pub fn compute_bounds<T: Scalar>(curve: &CoeffCurve<T>, i0: (T, T), i1: (T, T)) -> Result<BoundReport<T>> {
    compute_bounds_with(curve, i0, i1, DEFAULT_BOUND_GRID, DEFAULT_SUP_SAMPLES)
}

/// Bound report for `curve` (converted to the dominant system if needed).
///
/// The empirical Lipschitz constant is that of the sorted lift of the
/// dominant curve on a uniform `grid`-point grid of the closure of `I₀`.
pub fn compute_bounds_with<T: Scalar>(
    curve: &CoeffCurve<T>,
    i0: (T, T),
    i1: (T, T),
    grid: usize,
    samples: usize,
) -> Result<BoundReport<T>> {
    let delta = check_nested(curve, i0, i1)?;
    if grid < 2 {
        return Err(LiftError::InvalidParameter("bound grid needs at least 2 points".into()));
    }
    let dom = curve.to_dominant();
    let d = dom.max_degree();
    let degrees = dom.degrees().to_vec();
    let seminorms = dom.seminorms_with(i1, d, samples)?;
    let c1_sup = seminorms[0].sup;
    let c1_lip = if d == 2 { seminorms[0].lip } else { dom.seminorms_with(i1, 2, samples)?[0].lip };

    let a1 = fmax(c1_sup.sqrt() / delta, c1_lip.sqrt());
    let dt = T::from_index(d);
    let a2 = seminorms.iter().zip(&degrees).fold(T::zero(), |m, (s, &di)| {
        let weight = c1_sup.powf(T::from_index(d - di) / T::lit(2.0));
        fmax(m, (s.lip * weight).powf(T::one() / dt))
    });
    let bound_expr = fmax(a1, a2);
    let alt_bound = seminorms
        .iter()
        .zip(&degrees)
        .fold(T::zero(), |m, (s, &di)| fmax(m, s.holder_norm().powf(T::one() / T::from_index(di))));

    let lift = lift_sorted_on(&dom, &uniform_grid(i0.0, i0.1, grid))?;
    let empirical_lip = lift.empirical_lip;
    let ratio = if bound_expr > T::zero() {
        Some(empirical_lip / bound_expr)
    } else if empirical_lip == T::zero() {
        Some(T::zero())
    } else {
        None
    };
    Ok(BoundReport {
        i0: [i0.0, i0.1],
        i1: [i1.0, i1.1],
        delta,
        seminorms,
        a1,
        a2,
        a0: T::lit(6.0) * bound_expr,
        bound_expr,
        alt_bound,
        empirical_lip,
        ratio,
    })
}

/// Outcome of checking the window assumptions for a given `A`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssumptionReport<T> {
    #[serde(rename = "A")]
    pub a: T,
    /// Number of base points `t₀ ∈ I₀` with `c₁(t₀) > 0` that were checked.
    pub checked: usize,
    pub window_ok: bool,
    pub doubling_ok: bool,
    pub derivative_ok: bool,
    /// Largest overshoot of a window beyond `I₁`, with its base point.
    pub worst_window: Option<(T, T)>,
    /// Extreme values of `c₁(t)/c₁(t₀)` over all windows.
    pub ratio_range: [T; 2],
    /// Smallest `C` for which every derivative inequality holds.
    pub derivative_constant: T,
    pub worst_derivative_at: Option<T>,
}

/// Points sampled across each window, endpoints included.
pub const WINDOW_SAMPLES: usize = 65;

/// Largest `C` the derivative inequality may need for the check to pass.
pub const ASSUMPTION_CONSTANT: f64 = 2.0;

/// Checks, for every grid point `t₀ ∈ I₀` with `c₁(t₀) > 0`, that the window
/// `I_{t₀}(A⁻¹) = (t₀ − r, t₀ + r)`, `r = c₁(t₀)^{1/2}/A`, lies in `I₁`, that
/// `c₁` stays within a factor two of `c₁(t₀)` on it, and that
/// `|c_i^{(k)}(t)| ≤ C·A^k·|c₁(t)|^{(d_i−k)/2}` for `k ≤ d` with
/// `C ≤` [`ASSUMPTION_CONSTANT`]. Base points come from a uniform `grid` on
/// `I₁`; each window is sampled on [`WINDOW_SAMPLES`] points of its closure.
pub fn verify_assumptions<T: Scalar>(
    curve: &CoeffCurve<T>,
    i0: (T, T),
    i1: (T, T),
    a: T,
    grid: usize,
) -> Result<AssumptionReport<T>> {
    check_nested(curve, i0, i1)?;
    if !(a > T::zero()) || !a.is_finite() {
        return Err(LiftError::InvalidParameter(format!("A must be positive, got {a}")));
    }
    if grid < 3 {
        return Err(LiftError::InvalidParameter("assumption grid needs at least 3 points".into()));
    }
    let dom = curve.to_dominant();
    let d = dom.max_degree();
    let ts = uniform_grid(i1.0, i1.1, grid);
    let c1 = dom.derivative_samples(0, 0, &ts)?;
    let floor = dom.tol() * (T::one() + sup_abs(&c1));

    // smallest C each point needs for the derivative inequality
    let need_on = |pts: &[T], c1: &[T]| -> Result<Vec<T>> {
        let mut need = vec![T::zero(); pts.len()];
        for (i, &di) in dom.degrees().iter().enumerate() {
            for k in 0..=d {
                let vals = dom.derivative_samples(i, k, pts)?;
                let ak = a.powi(k as i32);
                let expo = (T::from_index(di) - T::from_index(k)) / T::lit(2.0);
                for j in 0..pts.len() {
                    if c1[j] > floor {
                        need[j] = fmax(need[j], vals[j].abs() / (ak * c1[j].powf(expo)));
                    }
                }
            }
        }
        Ok(need)
    };

    let bases: Vec<usize> = (0..ts.len()).filter(|&j| ts[j] > i0.0 && ts[j] < i0.1 && c1[j] > floor).collect();
    struct Local<T> {
        overshoot: T,
        lo_ratio: T,
        hi_ratio: T,
        need: T,
        need_at: T,
    }
    let locals: Vec<(usize, Local<T>)> = bases
        .par_iter()
        .map(|&j| {
            let r = c1[j].sqrt() / a;
            let (lo_t, hi_t) = (ts[j] - r, ts[j] + r);
            let overshoot = fmax(i1.0 - lo_t, hi_t - i1.1);
            let pts: Vec<T> = uniform_grid(lo_t.max(i1.0), hi_t.min(i1.1), WINDOW_SAMPLES);
            let vals = dom.derivative_samples(0, 0, &pts)?;
            let need = need_on(&pts, &vals)?;
            let mut local =
                Local { overshoot, lo_ratio: T::infinity(), hi_ratio: T::zero(), need: T::zero(), need_at: ts[j] };
            for (m, &v) in vals.iter().enumerate() {
                let q = v / c1[j];
                local.lo_ratio = local.lo_ratio.min(q);
                local.hi_ratio = fmax(local.hi_ratio, q);
                if need[m] > local.need {
                    local.need = need[m];
                    local.need_at = pts[m];
                }
            }
            Ok((j, local))
        })
        .collect::<Result<_>>()?;

    let slack = T::lit(1e-12) * (i1.1 - i1.0);
    let mut report = AssumptionReport {
        a,
        checked: locals.len(),
        window_ok: true,
        doubling_ok: true,
        derivative_ok: true,
        worst_window: None,
        ratio_range: [T::one(), T::one()],
        derivative_constant: T::zero(),
        worst_derivative_at: None,
    };
    let mut worst_over = T::neg_infinity();
    for (j, l) in &locals {
        if l.overshoot > worst_over {
            worst_over = l.overshoot;
            report.worst_window = Some((ts[*j], l.overshoot));
        }
        report.ratio_range[0] = report.ratio_range[0].min(l.lo_ratio);
        report.ratio_range[1] = fmax(report.ratio_range[1], l.hi_ratio);
        if l.need > report.derivative_constant {
            report.derivative_constant = l.need;
            report.worst_derivative_at = Some(l.need_at);
        }
    }
    let fuzz = T::lit(1e-9);
    report.window_ok = worst_over <= slack;
    report.doubling_ok =
        report.ratio_range[0] >= T::lit(0.5) * (T::one() - fuzz) && report.ratio_range[1] <= T::lit(2.0) * (T::one() + fuzz);
    report.derivative_ok = report.derivative_constant <= T::lit(ASSUMPTION_CONSTANT);
    Ok(report)
}

/// A violation candidate of Glaeser's inequality.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlaeserCase<T> {
    pub t: T,
    pub lhs: T,
    pub rhs: T,
}

/// Outcome of [`glaeser_check`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlaeserReport<T> {
    pub checked: usize,
    pub violations: usize,
    /// Sample with the largest `lhs − rhs`.
    pub worst: Option<GlaeserCase<T>>,
}

/// Checks `|f′(t₀)| ≤ 2M·f(t₀)^{1/2}` at every interior sample whose window
/// `(t₀ − f(t₀)^{1/2}/M, t₀ + f(t₀)^{1/2}/M)` lies inside the sampled interval.
pub fn glaeser_check<T: Scalar>(grid: &[T], f: &[T], df: &[T], m: T) -> Result<GlaeserReport<T>> {
    if !(m > T::zero()) || !m.is_finite() {
        return Err(LiftError::InvalidParameter(format!("M must be positive, got {m}")));
    }
    if grid.len() != f.len() || grid.len() != df.len() || grid.len() < 2 {
        return Err(LiftError::InvalidInput("grid, values and derivatives must have equal length ≥ 2".into()));
    }
    let scale = T::one() + sup_abs(f);
    let tol = T::lit(1e-12) * scale;
    if let Some(k) = f.iter().position(|&v| v < -tol) {
        return Err(LiftError::NotNonnegative { t: grid[k].as_f64(), value: f[k].as_f64() });
    }
    let (a, b) = (grid[0], grid[grid.len() - 1]);
    let mut report = GlaeserReport { checked: 0, violations: 0, worst: None };
    let mut worst_gap = T::neg_infinity();
    for k in 1..grid.len() - 1 {
        let root = f[k].max(T::zero()).sqrt();
        let r = root / m;
        if grid[k] - r < a || grid[k] + r > b {
            continue;
        }
        report.checked += 1;
        let lhs = df[k].abs();
        let rhs = T::lit(2.0) * m * root;
        if lhs > rhs * (T::one() + T::lit(1e-9)) + T::lit(1e-9) * scale.sqrt() * m {
            report.violations += 1;
        }
        if lhs - rhs > worst_gap {
            worst_gap = lhs - rhs;
            report.worst = Some(GlaeserCase { t: grid[k], lhs, rhs });
        }
    }
    Ok(report)
}

/// [`glaeser_check`] for a polynomial, sampled on `samples` uniform points.
pub fn glaeser_check_poly<T: Scalar>(f: &Poly<T>, interval: (T, T), m: T, samples: usize) -> Result<GlaeserReport<T>> {
    let grid = uniform_grid(interval.0, interval.1, samples.max(3));
    let df = f.derivative();
    let fv: Vec<T> = grid.iter().map(|&t| f.at(t)).collect();
    let dv: Vec<T> = grid.iter().map(|&t| df.at(t)).collect();
    glaeser_check(&grid, &fv, &dv, m)
}

/// Outcome of [`lagrange_coeff_check`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LagrangeReport<T> {
    pub holds: bool,
    /// `(2m)^{m+1}·A·B^{−j}` for `j = 0..=m`.
    pub bounds: Vec<T>,
    /// `bounds[j] − |a_j|`.
    pub margins: Vec<T>,
}

/// Checks `|a_j| ≤ (2m)^{m+1}·A·B^{−j}` for a polynomial of degree at most
/// `m` bounded by `A` on `[0, B]`. The bound `|P| ≤ A` is verified first on
/// a dense grid. Degree-zero input is treated as `m = 1`.
pub fn lagrange_coeff_check<T: Scalar>(p: &Poly<T>, m: usize, a: T, b: T) -> Result<LagrangeReport<T>> {
    if !(b > T::zero()) || !(a >= T::zero()) {
        return Err(LiftError::InvalidParameter(format!("need A ≥ 0 and B > 0, got A = {a}, B = {b}")));
    }
    let deg = p.degree().unwrap_or(0);
    if deg > m {
        return Err(LiftError::InvalidParameter(format!("polynomial of degree {deg} exceeds m = {m}")));
    }
    let sup = sup_abs_poly(p, T::zero(), b, DEFAULT_SUP_SAMPLES);
    if sup > a * (T::one() + T::lit(1e-9)) + T::lit(1e-300) {
        return Err(LiftError::Precondition(format!("sup |P| on [0, {b}] is {sup}, above A = {a}")));
    }
    let m = m.max(1);
    let lead = T::from_index(2 * m).powi(m as i32 + 1) * a;
    let bounds: Vec<T> = (0..=m).map(|j| lead / b.powi(j as i32)).collect();
    let coeffs = p.coeffs();
    let margins: Vec<T> = bounds
        .iter()
        .enumerate()
        .map(|(j, &r)| r - coeffs.get(j).map_or(T::zero(), |c| c.abs()))
        .collect();
    Ok(LagrangeReport { holds: margins.iter().all(|&x| x >= T::zero()), bounds, margins })
}

/// Samples of `f, f′, …, f^{(m)}` on a common grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivativeTable<T> {
    pub grid: Vec<T>,
    /// `derivatives[k][j] = f^{(k)}(grid[j])`.
    pub derivatives: Vec<Vec<T>>,
}

impl<T: Scalar> DerivativeTable<T> {
    /// Exact derivatives of a polynomial up to order `m`.
    pub fn from_poly(f: &Poly<T>, interval: (T, T), m: usize, samples: usize) -> Self {
        let grid = uniform_grid(interval.0, interval.1, samples.max(2));
        let mut d = f.clone();
        let mut derivatives = Vec::with_capacity(m + 1);
        for _ in 0..=m {
            derivatives.push(grid.iter().map(|&t| d.at(t)).collect());
            d = d.derivative();
        }
        DerivativeTable { grid, derivatives }
    }
}

/// Outcome of [`taylor_derivative_check`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaylorReport<T> {
    pub holds: bool,
    /// The constant `C(m)` the check was run with.
    pub constant: T,
    /// Smallest constant for which every inequality holds.
    pub constant_estimate: T,
}

/// `(2m)^{m+1}·(m+1)`.
pub fn taylor_constant<T: Scalar>(m: usize) -> T {
    T::from_index(2 * m).powi(m as i32 + 1) * T::from_index(m + 1)
}

/// Checks `|f^{(k)}| ≤ C(m)·|I|^{−k}·(‖f‖ + Lip(f^{(m−1)})·|I|^m)` on the
/// sampled interval for `k = 1..=m`, with `C(m) =` [`taylor_constant`].
pub fn taylor_derivative_check<T: Scalar>(table: &DerivativeTable<T>, m: usize) -> Result<TaylorReport<T>> {
    if m == 0 {
        return Err(LiftError::InvalidParameter("order m must be at least 1".into()));
    }
    let grid = &table.grid;
    if table.derivatives.len() < m + 1 || grid.len() < 2 {
        return Err(LiftError::InsufficientResolution(format!(
            "need derivatives up to order {m} on at least 2 samples, have {} orders on {} samples",
            table.derivatives.len(),
            grid.len()
        )));
    }
    if table.derivatives.iter().any(|d| d.len() != grid.len()) {
        return Err(LiftError::InvalidInput("derivative rows must match the grid length".into()));
    }
    let len = grid[grid.len() - 1] - grid[0];
    let sup = sup_abs(&table.derivatives[0]);
    let lip = max_slope(grid, &table.derivatives[m - 1]);
    let denom = sup + lip * len.powi(m as i32);
    let mut estimate = T::zero();
    for k in 1..=m {
        let lhs = sup_abs(&table.derivatives[k]) * len.powi(k as i32);
        if lhs > T::zero() {
            estimate = fmax(estimate, if denom > T::zero() { lhs / denom } else { T::infinity() });
        }
    }
    let constant = taylor_constant(m);
    Ok(TaylorReport { holds: estimate <= constant, constant, constant_estimate: estimate })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm_t() -> CoeffCurve<f64> {
        CoeffCurve::elementary((-2.0, 2.0), vec![Poly::zero(), Poly::new(vec![0.0, 0.0, -1.0])]).unwrap()
    }

    #[test]
    fn worked_example_a0() {
        let r = compute_bounds(&pm_t(), (-1.0, 1.0), (-2.0, 2.0)).unwrap();
        assert_eq!(r.delta, 1.0);
        assert!((r.a1 - 8f64.sqrt()).abs() < 1e-12);
        assert!((r.a2 - 2.0).abs() < 1e-12);
        assert!((r.a0 - 12.0 * 2f64.sqrt()).abs() < 1e-9);
        assert!((r.empirical_lip - 1.0).abs() < 1e-9);
        let json = serde_json::to_value(&r).unwrap();
        for key in ["I0", "I1", "delta", "seminorms", "A1", "A2", "A0", "bound_expr", "alt_bound", "empirical_lip", "ratio"] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
    }

    #[test]
    fn zero_curve_gives_zero_report() {
        let c = CoeffCurve::elementary((-2.0, 2.0), vec![Poly::zero(), Poly::zero()]).unwrap();
        let r = compute_bounds(&c, (-1.0, 1.0), (-2.0, 2.0)).unwrap();
        assert_eq!((r.a0, r.a1, r.a2, r.empirical_lip), (0.0, 0.0, 0.0, 0.0));
        assert_eq!(r.ratio, Some(0.0));
    }

    #[test]
    fn rejects_bad_intervals() {
        let e = compute_bounds(&pm_t(), (-2.0, 1.0), (-2.0, 2.0)).unwrap_err();
        assert!(matches!(e, LiftError::InvalidIntervals(_)));
        let e = compute_bounds(&pm_t(), (-1.0, 1.0), (-3.0, 2.0)).unwrap_err();
        assert!(matches!(e, LiftError::InvalidIntervals(_)));
    }

    #[test]
    fn assumptions_hold_at_a0() {
        let c = pm_t();
        let r = compute_bounds(&c, (-1.0, 1.0), (-2.0, 2.0)).unwrap();
        let v = verify_assumptions(&c, (-1.0, 1.0), (-2.0, 2.0), r.a0, 4096).unwrap();
        assert!(v.checked > 0);
        assert!(v.window_ok && v.doubling_ok && v.derivative_ok, "{v:?}");
        assert!(v.derivative_constant <= 2.0);
    }

    #[test]
    fn small_a_breaks_window() {
        let v = verify_assumptions(&pm_t(), (-1.0, 1.0), (-2.0, 2.0), 0.5, 1024).unwrap();
        assert!(!v.window_ok);
        assert!(!v.doubling_ok);
    }

    #[test]
    fn glaeser_examples() {
        let sq = Poly::new(vec![0.0, 0.0, 1.0]);
        let r = glaeser_check_poly(&sq, (-1.0, 1.0), 2f64.sqrt(), 2001).unwrap();
        assert_eq!(r.violations, 0);
        assert!(r.checked > 0);
        let r = glaeser_check_poly(&Poly::constant(3.0), (-1.0, 1.0), 1.0, 101).unwrap();
        assert_eq!(r.violations, 0);
        // (t² − 1)², f″ = 12t² − 4, sup |f″| on (−2, 2) = 44
        let f = Poly::new(vec![1.0, 0.0, -2.0, 0.0, 1.0]);
        let r = glaeser_check_poly(&f, (-2.0, 2.0), 44f64.sqrt(), 4001).unwrap();
        assert_eq!(r.violations, 0);
        // too small an M is caught
        let r = glaeser_check_poly(&sq, (-1.0, 1.0), 0.4, 2001).unwrap();
        assert!(r.violations > 0);
        assert!(glaeser_check_poly(&sq, (-1.0, 1.0), 0.0, 11).is_err());
    }

    #[test]
    fn lagrange_examples() {
        let r = lagrange_coeff_check(&Poly::new(vec![0.0, 1.0]), 1, 1.0, 1.0).unwrap();
        assert!(r.holds);
        assert_eq!(r.bounds, vec![4.0, 4.0]);
        let t2 = Poly::new(vec![1.0, -8.0, 8.0]);
        let r = lagrange_coeff_check(&t2, 2, 1.0, 1.0).unwrap();
        assert_eq!(r.bounds, vec![64.0, 64.0, 64.0]);
        assert!(r.holds);
        let r = lagrange_coeff_check(&Poly::<f64>::zero(), 2, 1.0, 1.0).unwrap();
        assert_eq!(r.margins, r.bounds);
        assert!(lagrange_coeff_check(&t2, 2, 0.5, 1.0).is_err());
    }

    #[test]
    fn taylor_examples() {
        let t = DerivativeTable::from_poly(&Poly::new(vec![0.0, 1.0]), (0.0, 1.0), 1, 101);
        assert!(taylor_derivative_check(&t, 1).unwrap().holds);
        let t = DerivativeTable::from_poly(&Poly::new(vec![0.0, 0.0, 1.0]), (-1.0, 1.0), 2, 201);
        let r = taylor_derivative_check(&t, 2).unwrap();
        assert!(r.holds && r.constant_estimate <= 2.0, "{r:?}");
        let t = DerivativeTable::from_poly(&Poly::new(vec![0.0, 1.0, 0.0, -1.0 / 6.0]), (-1.0, 1.0), 3, 201);
        assert!(taylor_derivative_check(&t, 3).unwrap().holds);
        assert!(taylor_derivative_check(&t, 4).is_err());
        assert_eq!(taylor_constant::<f64>(1), 8.0);
    }

    #[test]
    fn flat_family_a0_decays() {
        let c = CoeffCurve::elementary((-2.0, 2.0), vec![Poly::zero(), Poly::new(vec![0.0, 0.0, 0.0, 0.0, -1.0])]).unwrap();
        let a: Vec<f64> = [1.0, 0.1, 0.01]
            .iter()
            .map(|&d| compute_bounds(&c, (-d, d), (-2.0 * d, 2.0 * d)).unwrap().a0)
            .collect();
        assert!(a[0] > a[1] && a[1] > a[2] && a[2] < a[0] / 10.0, "{a:?}");
    }
}
