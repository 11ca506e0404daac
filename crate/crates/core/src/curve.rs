//! One-parameter families of invariant values ("coefficient curves").
//!
//! A curve carries `n` components with declared invariant degrees. Two
//! generator systems are recognised from the degrees:
//!
//! * elementary: `(e₁, …, e_n)` with degrees `(1, …, n)`;
//! * dominant: `(p₂, e₂, …, e_n)` of centred roots with degrees
//!   `(2, 2, 3, …, n)`, where `p₂` is the sum of squared centred roots.
//!   For `n = 1` the dominant system is the single component `p₂ = 0` with
//!   degree `2`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{LiftError, Result};
use crate::hyperbolic::{
    binomial_table, shifted_elementary, track_roots, HyperbolicPoly, RootMultiset, DEFAULT_TOL,
};
use crate::norms::{self, divided_derivatives, max_slope, sup_abs, sup_abs_poly, DEFAULT_SUP_SAMPLES};
use crate::poly::Poly;
use crate::scalar::{fmax, Scalar};

/// Grid points per continuation chunk in [`CoeffCurve::roots_on`].
pub(crate) const TRACK_CHUNK: usize = 512;

/// Which generator system a curve's components are expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvariantSystem {
    Elementary,
    Dominant,
}

impl InvariantSystem {
    pub fn degrees(self, n: usize) -> Vec<usize> {
        match self {
            InvariantSystem::Elementary => (1..=n).collect(),
            InvariantSystem::Dominant if n == 1 => vec![2],
            InvariantSystem::Dominant => std::iter::once(2).chain(2..=n).collect(),
        }
    }

    fn detect(degrees: &[usize]) -> Option<Self> {
        let n = degrees.len();
        [InvariantSystem::Elementary, InvariantSystem::Dominant]
            .into_iter()
            .find(|s| s.degrees(n) == degrees)
    }
}

/// Piecewise cubic Hermite data on a strictly increasing grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledValues<T> {
    grid: Vec<T>,
    /// `values[k]` is the component vector at `grid[k]`.
    values: Vec<Vec<T>>,
    /// Finite-difference slopes per sample and component.
    slopes: Vec<Vec<T>>,
}

impl<T: Scalar> SampledValues<T> {
    fn new(grid: Vec<T>, values: Vec<Vec<T>>, n: usize) -> Result<Self> {
        if grid.len() < 2 {
            return Err(LiftError::InvalidInput("sampled grid needs at least 2 points".into()));
        }
        if grid.len() != values.len() {
            return Err(LiftError::InvalidInput(format!(
                "grid has {} points but {} value rows were given",
                grid.len(),
                values.len()
            )));
        }
        if let Some(k) = grid.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(LiftError::InvalidInput(format!(
                "sampled grid is not strictly increasing at index {}",
                k + 1
            )));
        }
        if grid.iter().any(|t| !t.is_finite()) {
            return Err(LiftError::InvalidInput("sampled grid has non-finite entries".into()));
        }
        for (k, row) in values.iter().enumerate() {
            if row.len() != n {
                return Err(LiftError::InvalidInput(format!(
                    "value row {k} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(LiftError::InvalidInput(format!("value row {k} has non-finite entries")));
            }
        }
        let slopes = hermite_slopes(&grid, &values, n);
        Ok(SampledValues { grid, values, slopes })
    }

    pub fn grid(&self) -> &[T] {
        &self.grid
    }

    pub fn values(&self) -> &[Vec<T>] {
        &self.values
    }

    fn component(&self, i: usize) -> Vec<T> {
        self.values.iter().map(|row| row[i]).collect()
    }

    fn interpolate(&self, t: T) -> Vec<T> {
        let g = &self.grid;
        let last = g.len() - 1;
        let t = t.max(g[0]).min(g[last]);
        let k = g.partition_point(|&x| x <= t).clamp(1, last) - 1;
        if t == g[k] {
            return self.values[k].clone();
        }
        let h = g[k + 1] - g[k];
        let s = (t - g[k]) / h;
        let (two, three) = (T::lit(2.0), T::lit(3.0));
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = two * s3 - three * s2 + T::one();
        let h10 = s3 - two * s2 + s;
        let h01 = three * s2 - two * s3;
        let h11 = s3 - s2;
        (0..self.values[k].len())
            .map(|i| {
                h00 * self.values[k][i]
                    + h10 * h * self.slopes[k][i]
                    + h01 * self.values[k + 1][i]
                    + h11 * h * self.slopes[k + 1][i]
            })
            .collect()
    }
}

fn hermite_slopes<T: Scalar>(grid: &[T], values: &[Vec<T>], n: usize) -> Vec<Vec<T>> {
    let m = grid.len();
    (0..m)
        .map(|k| {
            (0..n)
                .map(|i| {
                    if m == 2 {
                        return (values[1][i] - values[0][i]) / (grid[1] - grid[0]);
                    }
                    let j = k.clamp(1, m - 2);
                    let (h0, h1) = (grid[j] - grid[j - 1], grid[j + 1] - grid[j]);
                    let d0 = (values[j][i] - values[j - 1][i]) / h0;
                    let d1 = (values[j + 1][i] - values[j][i]) / h1;
                    if k == 0 {
                        d0 + (d0 - d1) * h0 / (h0 + h1)
                    } else if k == m - 1 {
                        d1 + (d1 - d0) * h1 / (h0 + h1)
                    } else {
                        (d0 * h1 + d1 * h0) / (h0 + h1)
                    }
                })
                .collect()
        })
        .collect()
}

/// How the component functions are stored.
#[derive(Clone, Debug, PartialEq)]
pub enum CurveRep<T> {
    PolynomialInT(Vec<Poly<T>>),
    Sampled(SampledValues<T>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoeffCurve<T> {
    n: usize,
    degrees: Vec<usize>,
    interval: (T, T),
    rep: CurveRep<T>,
    system: InvariantSystem,
    tol: T,
}

fn check_interval<T: Scalar>(interval: (T, T)) -> Result<()> {
    let (a, b) = interval;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(LiftError::InvalidInput(format!(
            "interval [{a}, {b}] must be finite with a < b"
        )));
    }
    Ok(())
}

fn check_degrees(degrees: &[usize], n: usize) -> Result<InvariantSystem> {
    if n == 0 {
        return Err(LiftError::InvalidInput("a curve needs at least one component".into()));
    }
    if degrees.len() != n {
        return Err(LiftError::InvalidInput(format!(
            "{} degrees declared for {n} components",
            degrees.len()
        )));
    }
    InvariantSystem::detect(degrees).ok_or_else(|| {
        LiftError::InvalidInput(format!(
            "degrees {degrees:?} match neither the elementary system {:?} nor the dominant system {:?}",
            InvariantSystem::Elementary.degrees(n),
            InvariantSystem::Dominant.degrees(n)
        ))
    })
}

impl<T: Scalar> CoeffCurve<T> {
    /// Curve with polynomial components in `t`.
    pub fn polynomial(degrees: Vec<usize>, interval: (T, T), components: Vec<Poly<T>>) -> Result<Self> {
        let n = components.len();
        let system = check_degrees(&degrees, n)?;
        check_interval(interval)?;
        if let Some(i) = components.iter().position(|p| !p.is_finite()) {
            return Err(LiftError::InvalidInput(format!("component {i} has non-finite coefficients")));
        }
        Ok(CoeffCurve { n, degrees, interval, rep: CurveRep::PolynomialInT(components), system, tol: T::lit(DEFAULT_TOL) })
    }

    /// Polynomial curve of elementary symmetric values `(e₁, …, e_n)`.
    pub fn elementary(interval: (T, T), components: Vec<Poly<T>>) -> Result<Self> {
        let degrees = (1..=components.len()).collect();
        Self::polynomial(degrees, interval, components)
    }

    /// The elementary curve whose roots are the given polynomial branches.
    pub fn from_root_polys(interval: (T, T), roots: &[Poly<T>]) -> Result<Self> {
        let n = roots.len();
        let mut elem: Vec<Poly<T>> = vec![Poly::zero(); n + 1];
        elem[0] = Poly::constant(T::one());
        for (m, r) in roots.iter().enumerate() {
            for k in (1..=m + 1).rev() {
                elem[k] = &elem[k] + &(r * &elem[k - 1]);
            }
        }
        elem.remove(0);
        Self::elementary(interval, elem)
    }

    /// Curve sampled on a strictly increasing grid; `values[k]` holds the
    /// components at `grid[k]`.
    pub fn sampled(degrees: Vec<usize>, grid: Vec<T>, values: Vec<Vec<T>>) -> Result<Self> {
        let n = degrees.len();
        let system = check_degrees(&degrees, n)?;
        let data = SampledValues::new(grid, values, n)?;
        let interval = (data.grid[0], data.grid[data.grid.len() - 1]);
        Ok(CoeffCurve { n, degrees, interval, rep: CurveRep::Sampled(data), system, tol: T::lit(DEFAULT_TOL) })
    }

    /// Replaces the hyperbolicity tolerance (default `1e-9`).
    pub fn with_tol(mut self, tol: T) -> Self {
        self.tol = tol;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Largest invariant degree.
    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(1)
    }

    pub fn interval(&self) -> (T, T) {
        self.interval
    }

    pub fn rep(&self) -> &CurveRep<T> {
        &self.rep
    }

    pub fn system(&self) -> InvariantSystem {
        self.system
    }

    pub fn tol(&self) -> T {
        self.tol
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self.rep, CurveRep::PolynomialInT(_))
    }

    pub fn contains(&self, t: T) -> bool {
        let (a, b) = self.interval;
        let slack = T::lit(1e-12) * (T::one() + a.abs() + b.abs());
        t >= a - slack && t <= b + slack
    }

    fn check_domain(&self, t: T) -> Result<()> {
        if self.contains(t) {
            Ok(())
        } else {
            let (a, b) = self.interval;
            Err(LiftError::Domain { t: t.as_f64(), a: a.as_f64(), b: b.as_f64() })
        }
    }

    /// Component values at `t` without any membership check.
    pub fn values_at(&self, t: T) -> Result<Vec<T>> {
        self.check_domain(t)?;
        Ok(self.values_unchecked(t))
    }

    fn values_unchecked(&self, t: T) -> Vec<T> {
        match &self.rep {
            CurveRep::PolynomialInT(ps) => ps.iter().map(|p| p.at(t)).collect(),
            CurveRep::Sampled(s) => s.interpolate(t),
        }
    }

    /// Elementary symmetric values of the polynomial at `t`; centred roots
    /// for dominant curves.
    fn elementary_at(&self, values: &[T]) -> Vec<T> {
        match self.system {
            InvariantSystem::Elementary => values.to_vec(),
            InvariantSystem::Dominant if self.n == 1 => vec![T::zero()],
            InvariantSystem::Dominant => std::iter::once(T::zero()).chain(values[1..].iter().copied()).collect(),
        }
    }

    /// The point `c(t)` and its polynomial, certified hyperbolic.
    pub fn eval(&self, t: T) -> Result<(Vec<T>, HyperbolicPoly<T>)> {
        let values = self.values_at(t)?;
        let poly = HyperbolicPoly::from_elementary(self.elementary_at(&values))
            .map_err(|e| e.with_location(t.as_f64()))?;
        let cert = poly.certify(self.tol);
        if !cert.hyperbolic {
            return Err(LiftError::NotHyperbolic { location: Some(t.as_f64()), witness: cert.witness.as_f64() });
        }
        Ok((values, poly))
    }

    /// Sorted roots at `t`.
    pub fn roots_at(&self, t: T) -> Result<RootMultiset<T>> {
        let values = self.values_at(t)?;
        let poly = HyperbolicPoly::from_elementary(self.elementary_at(&values))
            .map_err(|e| e.with_location(t.as_f64()))?;
        poly.roots(self.tol).map_err(|e| e.with_location(t.as_f64()))
    }

    /// Sorted roots at every grid point, computed in parallel. The first
    /// failure in grid order is reported.
    ///
    /// Within fixed-size chunks of the grid each point starts from the roots
    /// at its predecessor; the chunking does not depend on the thread count,
    /// so the output is identical for any degree of parallelism.
    pub fn roots_on(&self, grid: &[T]) -> Result<Vec<Vec<T>>> {
        let chunks: Vec<Vec<Vec<T>>> = grid
            .par_chunks(TRACK_CHUNK)
            .map(|chunk| {
                let mut out: Vec<Vec<T>> = Vec::with_capacity(chunk.len());
                for &t in chunk {
                    let values = self.values_at(t)?;
                    let elem = self.elementary_at(&values);
                    let tracked = out.last().and_then(|prev| track_roots(&elem, prev));
                    let roots = match tracked {
                        Some(r) => r,
                        None => HyperbolicPoly::from_elementary(elem)
                            .and_then(|p| p.roots(self.tol))
                            .map_err(|e| e.with_location(t.as_f64()))?
                            .into_vec(),
                    };
                    out.push(roots);
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        Ok(chunks.into_iter().flatten().collect())
    }

    /// Symbolic derivative of order `k` of component `i` (polynomial curves).
    pub fn component_derivative(&self, i: usize, k: usize) -> Option<Poly<T>> {
        match &self.rep {
            CurveRep::PolynomialInT(ps) => Some(ps[i].nth_derivative(k)),
            CurveRep::Sampled(_) => None,
        }
    }

    /// `c_i^{(k)}` at each point of `ts`. Polynomial curves differentiate
    /// exactly; sampled curves use divided differences on their own grid,
    /// interpolated linearly to `ts`.
    pub fn derivative_samples(&self, i: usize, k: usize, ts: &[T]) -> Result<Vec<T>> {
        match &self.rep {
            CurveRep::PolynomialInT(ps) => {
                let d = ps[i].nth_derivative(k);
                Ok(ts.iter().map(|&t| d.at(t)).collect())
            }
            CurveRep::Sampled(s) => {
                if k == 0 {
                    return Ok(ts.iter().map(|&t| s.interpolate(t)[i]).collect());
                }
                if s.grid.len() < k + 2 {
                    return Err(LiftError::InsufficientResolution(format!(
                        "{} samples cannot resolve derivatives of order {k}",
                        s.grid.len()
                    )));
                }
                let d = divided_derivatives(&s.grid, &s.component(i), k);
                Ok(ts.iter().map(|&t| linear_interp(&s.grid, &d, t)).collect())
            }
        }
    }

    /// The same family with every root multiplied by `lambda`:
    /// `c_i ↦ lambda^{d_i} c_i`.
    pub fn scale_roots(&self, lambda: T) -> Self {
        let factors: Vec<T> = self.degrees.iter().map(|&d| lambda.powi(d as i32)).collect();
        let rep = match &self.rep {
            CurveRep::PolynomialInT(ps) => {
                CurveRep::PolynomialInT(ps.iter().zip(&factors).map(|(p, f)| p.scale(f)).collect())
            }
            CurveRep::Sampled(s) => CurveRep::Sampled(SampledValues {
                grid: s.grid.clone(),
                values: s.values.iter().map(|row| row.iter().zip(&factors).map(|(v, f)| *v * *f).collect()).collect(),
                slopes: s.slopes.iter().map(|row| row.iter().zip(&factors).map(|(v, f)| *v * *f).collect()).collect(),
            }),
        };
        CoeffCurve { rep, ..self.clone() }
    }

    /// Re-expresses the curve in the centred dominant system
    /// `(p₂, e₂, …, e_n)`. Dominant curves are returned unchanged.
    pub fn to_dominant(&self) -> Self {
        if self.system == InvariantSystem::Dominant {
            return self.clone();
        }
        let n = self.n;
        let degrees = InvariantSystem::Dominant.degrees(n);
        let rep = match &self.rep {
            CurveRep::PolynomialInT(ps) => CurveRep::PolynomialInT(centered_dominant_polys(ps)),
            CurveRep::Sampled(s) => {
                let values: Vec<Vec<T>> = s
                    .values
                    .iter()
                    .map(|e| dominant_from_elementary(e))
                    .collect();
                let slopes = hermite_slopes(&s.grid, &values, n);
                CurveRep::Sampled(SampledValues { grid: s.grid.clone(), values, slopes })
            }
        };
        CoeffCurve { n, degrees, interval: self.interval, rep, system: InvariantSystem::Dominant, tol: self.tol }
    }

    /// Estimates of `‖c_i‖_{C^{p−1,1}(K)}` ingredients for every component.
    pub fn seminorms(&self, k: (T, T), p: usize) -> Result<Vec<SeminormEstimate<T>>> {
        self.seminorms_with(k, p, DEFAULT_SUP_SAMPLES)
    }

    /// [`CoeffCurve::seminorms`] with an explicit sampling density.
    pub fn seminorms_with(&self, k: (T, T), p: usize, samples: usize) -> Result<Vec<SeminormEstimate<T>>> {
        if p == 0 {
            return Err(LiftError::InvalidParameter("seminorm order must be at least 1".into()));
        }
        let (ka, kb) = k;
        if !(ka <= kb) || !self.contains(ka) || !self.contains(kb) {
            let (a, b) = self.interval;
            return Err(LiftError::InvalidIntervals(format!(
                "K = [{ka}, {kb}] is not contained in the curve interval [{a}, {b}]"
            )));
        }
        match &self.rep {
            CurveRep::PolynomialInT(ps) => Ok(ps
                .iter()
                .enumerate()
                .map(|(i, poly)| {
                    let mut d = poly.clone();
                    let mut derivative_sups = Vec::with_capacity(p);
                    for _ in 0..p {
                        derivative_sups.push(sup_abs_poly(&d, ka, kb, samples));
                        d = d.derivative();
                    }
                    SeminormEstimate {
                        component: i,
                        interval: [ka, kb],
                        sup: derivative_sups[0],
                        lip: sup_abs_poly(&d, ka, kb, samples),
                        derivative_sups,
                        method: SeminormMethod::ExactPolynomial { samples },
                    }
                })
                .collect()),
            CurveRep::Sampled(s) => {
                let lo = s.grid.partition_point(|&t| t < ka);
                let hi = s.grid.partition_point(|&t| t <= kb);
                let grid = &s.grid[lo..hi];
                if grid.len() < p + 2 {
                    return Err(LiftError::InsufficientResolution(format!(
                        "{} samples in K cannot resolve a seminorm of order {p} (need {})",
                        grid.len(),
                        p + 2
                    )));
                }
                let h = grid.windows(2).fold(T::zero(), |m, w| fmax(m, w[1] - w[0]));
                Ok((0..self.n)
                    .map(|i| {
                        let vals: Vec<T> = s.values[lo..hi].iter().map(|row| row[i]).collect();
                        let derivative_sups: Vec<T> =
                            (0..p).map(|order| sup_abs(&divided_derivatives(grid, &vals, order))).collect();
                        let top = divided_derivatives(grid, &vals, p - 1);
                        SeminormEstimate {
                            component: i,
                            interval: [ka, kb],
                            sup: derivative_sups[0],
                            lip: max_slope(grid, &top),
                            derivative_sups,
                            method: SeminormMethod::FiniteDifference { h: h.as_f64() },
                        }
                    })
                    .collect())
            }
        }
    }

    /// `max_j |c_j(t)|^{1/d_j} / (1 + c₁(t)^{1/2})` over `samples`, for
    /// curves in the dominant system.
    pub fn dominance_check(&self, samples: &[T]) -> Result<T> {
        if self.system != InvariantSystem::Dominant {
            return Err(LiftError::Precondition(
                "dominance is measured in the dominant system; call to_dominant first".into(),
            ));
        }
        let mut worst = T::zero();
        for &t in samples {
            let c = self.values_at(t)?;
            if c[0] < -self.tol * (T::one() + sup_abs(&c)) {
                return Err(LiftError::NotInOrbitSpace { t: t.as_f64(), value: c[0].as_f64() });
            }
            let denom = T::one() + c[0].max(T::zero()).sqrt();
            for (v, &d) in c.iter().zip(&self.degrees).skip(1) {
                worst = fmax(worst, v.abs().powf(T::one() / T::from_index(d)) / denom);
            }
        }
        Ok(worst)
    }
}

fn linear_interp<T: Scalar>(grid: &[T], vals: &[T], t: T) -> T {
    let last = grid.len() - 1;
    let k = grid.partition_point(|&x| x <= t).clamp(1, last) - 1;
    let s = ((t - grid[k]) / (grid[k + 1] - grid[k])).max(T::zero()).min(T::one());
    vals[k] + s * (vals[k + 1] - vals[k])
}

/// `(p₂, e₂, …, e_n)` of the centred roots from elementary values.
pub(crate) fn dominant_from_elementary<T: Scalar>(elem: &[T]) -> Vec<T> {
    let n = elem.len();
    if n == 1 {
        return vec![T::zero()];
    }
    let shift = elem[0] / T::from_index(n);
    let mut centered = shifted_elementary(elem, shift);
    centered[0] = -T::lit(2.0) * centered[1];
    centered
}

fn centered_dominant_polys<T: Scalar>(elem: &[Poly<T>]) -> Vec<Poly<T>> {
    let n = elem.len();
    if n == 1 {
        return vec![Poly::zero()];
    }
    let binom = binomial_table(n);
    let neg_shift = elem[0].scale(&(-T::one() / T::from_index(n)));
    let powers: Vec<Poly<T>> = (0..=n).map(|k| neg_shift.pow(k)).collect();
    let mut out: Vec<Poly<T>> = Vec::with_capacity(n);
    for k in 1..=n {
        // e'_k = sum_j e_j C(n-j, k-j) (-s)^{k-j}, with e_0 = 1
        let mut acc = powers[k].scale(&T::lit(binom[n][k]));
        for j in 1..=k {
            let term = &elem[j - 1] * &powers[k - j];
            acc = &acc + &term.scale(&T::lit(binom[n - j][k - j]));
        }
        out.push(acc);
    }
    out[0] = out[1].scale(&T::lit(-2.0));
    out
}

/// How a seminorm was estimated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SeminormMethod {
    ExactPolynomial { samples: usize },
    FiniteDifference { h: f64 },
}

/// Sup norms of a component and its derivatives up to order `p − 1`, and the
/// Lipschitz constant of the `(p − 1)`-st derivative, on an interval `K`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeminormEstimate<T> {
    pub component: usize,
    pub interval: [T; 2],
    pub sup: T,
    /// `derivative_sups[k] = sup_K |c^{(k)}|` for `k < p`.
    pub derivative_sups: Vec<T>,
    pub lip: T,
    pub method: SeminormMethod,
}

impl<T: Scalar> SeminormEstimate<T> {
    /// `‖c‖_{C^{p−1,1}(K)}`: the largest derivative sup plus the Lipschitz
    /// constant of the top derivative.
    pub fn holder_norm(&self) -> T {
        self.derivative_sups.iter().fold(T::zero(), |m, &v| fmax(m, v)) + self.lip
    }
}

/// On-disk curve description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub n: usize,
    pub degrees: Vec<usize>,
    pub interval: [f64; 2],
    pub rep: RepFile,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RepFile {
    PolyT { poly_t: Vec<Vec<f64>> },
    Sampled { grid: Vec<f64>, values: Vec<Vec<f64>> },
}

impl CurveFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| LiftError::InvalidInput(format!("curve JSON: {e}")))
    }

    pub fn into_curve<T: Scalar>(self) -> Result<CoeffCurve<T>> {
        if self.degrees.len() != self.n {
            return Err(LiftError::InvalidInput(format!(
                "n = {} but {} degrees were given",
                self.n,
                self.degrees.len()
            )));
        }
        let lit = |v: &[f64]| v.iter().map(|&x| T::lit(x)).collect::<Vec<T>>();
        match self.rep {
            RepFile::PolyT { poly_t } => {
                if poly_t.len() != self.n {
                    return Err(LiftError::InvalidInput(format!(
                        "n = {} but {} component polynomials were given",
                        self.n,
                        poly_t.len()
                    )));
                }
                let comps = poly_t.iter().map(|c| Poly::new(lit(c))).collect();
                let [a, b] = self.interval;
                CoeffCurve::polynomial(self.degrees, (T::lit(a), T::lit(b)), comps)
            }
            RepFile::Sampled { grid, values } => {
                let curve = CoeffCurve::sampled(self.degrees, lit(&grid), values.iter().map(|r| lit(r)).collect())?;
                let [a, b] = self.interval;
                if a != grid[0] || b != grid[grid.len() - 1] {
                    return Err(LiftError::InvalidInput(format!(
                        "interval [{a}, {b}] does not match the sampled grid [{}, {}]",
                        grid[0],
                        grid[grid.len() - 1]
                    )));
                }
                Ok(curve)
            }
        }
    }
}

impl<T: Scalar> From<&CoeffCurve<T>> for CurveFile {
    fn from(c: &CoeffCurve<T>) -> Self {
        let f = |v: &[T]| v.iter().map(|x| x.as_f64()).collect::<Vec<f64>>();
        let rep = match &c.rep {
            CurveRep::PolynomialInT(ps) => RepFile::PolyT { poly_t: ps.iter().map(|p| f(p.coeffs())).collect() },
            CurveRep::Sampled(s) => RepFile::Sampled { grid: f(&s.grid), values: s.values.iter().map(|r| f(r)).collect() },
        };
        CurveFile {
            n: c.n,
            degrees: c.degrees.clone(),
            interval: [c.interval.0.as_f64(), c.interval.1.as_f64()],
            rep,
        }
    }
}

/// Uniform grid over the curve interval.
pub fn curve_grid<T: Scalar>(curve: &CoeffCurve<T>, size: usize) -> Vec<T> {
    let (a, b) = curve.interval();
    norms::uniform_grid(a, b, size)
}
