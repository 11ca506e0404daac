//! Hyperbolic polynomials: conversions between roots, elementary symmetric
//! values and power sums, hyperbolicity certificates and centering.
//!
//! A degree-`n` monic polynomial is stored through its elementary symmetric
//! values `e = (e_1, ..., e_n)`; the monic coefficients are
//! `a_j = (-1)^j e_j`, so that `P(z) = z^n + a_1 z^(n-1) + ... + a_n`.
//!
//! Roots are computed by the interlacing recursion: the roots of `P'`
//! separate the roots of `P` whenever `P` is hyperbolic, so every root is the
//! unique zero of `P` on an interval where `P` is monotone. Each such zero is
//! found by safeguarded Newton iteration. The same pass doubles as the
//! hyperbolicity certificate: an interval without a sign change (beyond the
//! rounding noise of the evaluation) is a missing real root.

use serde::Serialize;

use crate::error::{LiftError, Result};
use crate::scalar::{fmax, total_cmp, Scalar};

/// Default hyperbolicity tolerance, relative to [`HyperbolicPoly::scale`].
pub const DEFAULT_TOL: f64 = 1e-9;

/// Sorted multiset of real roots.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct RootMultiset<T> {
    values: Vec<T>,
}

impl<T: Scalar> RootMultiset<T> {
    pub fn new(mut values: Vec<T>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(LiftError::InvalidInput(format!("non-finite root {bad}")));
        }
        values.sort_by(total_cmp);
        Ok(RootMultiset { values })
    }

    pub(crate) fn from_sorted(values: Vec<T>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        RootMultiset { values }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_vec(self) -> Vec<T> {
        self.values
    }
}

/// Result of a hyperbolicity test.
///
/// `witness` is the largest residual deficit found, relative to the scale of
/// the polynomial level where it occurred: `|P(x)|` at an endpoint of a
/// monotone interval that should contain a root but shows no sign change.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HyperbolicityCertificate<T> {
    pub hyperbolic: bool,
    pub witness: T,
}

/// Monic real polynomial given by its elementary symmetric values.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HyperbolicPoly<T> {
    elem: Vec<T>,
}

impl<T: Scalar> HyperbolicPoly<T> {
    /// Wraps elementary symmetric values `(e_1, ..., e_n)`. Hyperbolicity is
    /// not checked here; see [`HyperbolicPoly::certify`].
    pub fn from_elementary(elem: Vec<T>) -> Result<Self> {
        if elem.is_empty() {
            return Err(LiftError::InvalidInput("degree must be positive".into()));
        }
        if let Some(bad) = elem.iter().find(|v| !v.is_finite()) {
            return Err(LiftError::InvalidInput(format!("non-finite coefficient {bad}")));
        }
        Ok(HyperbolicPoly { elem })
    }

    /// Vieta: `e_i` is the `i`-th elementary symmetric function of the roots,
    /// accumulated left to right over the sorted roots.
    pub fn from_roots(roots: &RootMultiset<T>) -> Result<Self> {
        Self::from_elementary(elementary_from_sorted(roots.values()))
    }

    pub fn degree(&self) -> usize {
        self.elem.len()
    }

    pub fn elem(&self) -> &[T] {
        &self.elem
    }

    /// Monic coefficients in descending powers: `[1, a_1, ..., a_n]`.
    pub fn monic_coeffs(&self) -> Vec<T> {
        let mut a = Vec::with_capacity(self.elem.len() + 1);
        a.push(T::one());
        for (j, &e) in self.elem.iter().enumerate() {
            a.push(if j % 2 == 0 { -e } else { e });
        }
        a
    }

    /// `max(1, max_j |a_j|)`
    pub fn scale(&self) -> T {
        self.elem.iter().fold(T::one(), |m, e| fmax(m, e.abs()))
    }

    pub fn eval(&self, z: T) -> T {
        self.monic_coeffs().iter().fold(T::zero(), |acc, &c| acc * z + c)
    }

    pub fn certify(&self, tol: T) -> HyperbolicityCertificate<T> {
        let (_, witness) = interlacing_roots(&self.elem);
        HyperbolicityCertificate {
            hyperbolic: witness <= tol,
            witness,
        }
    }

    /// Sorted real roots with multiplicity.
    pub fn roots(&self, tol: T) -> Result<RootMultiset<T>> {
        let (roots, witness) = interlacing_roots(&self.elem);
        if witness > tol {
            return Err(LiftError::NotHyperbolic {
                location: None,
                witness: witness.as_f64(),
            });
        }
        Ok(RootMultiset::from_sorted(correct_tuple(&self.elem, roots)))
    }

    /// Removes the fixed-point component: returns `shift = e_1 / n` and the
    /// polynomial whose roots are `r_k - shift`.
    pub fn center(&self) -> (T, HyperbolicPoly<T>) {
        let n = self.degree();
        let shift = self.elem[0] / T::from_index(n);
        let elem = shifted_elementary(&self.elem, shift);
        (shift, HyperbolicPoly { elem })
    }

    /// `p_k = sum_i r_i^k` for `k = 1..n`.
    pub fn power_sums(&self) -> Vec<T> {
        elementary_to_power_sums(&self.elem)
    }
}

/// Elementary symmetric values of a sorted root vector.
pub(crate) fn elementary_from_sorted<T: Scalar>(roots: &[T]) -> Vec<T> {
    let n = roots.len();
    let mut e = vec![T::zero(); n + 1];
    e[0] = T::one();
    for (i, &r) in roots.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let prev = e[k - 1];
            e[k] += r * prev;
        }
    }
    e.remove(0);
    e
}

/// Elementary symmetric values of `{r_k - shift}` given those of `{r_k}`.
pub(crate) fn shifted_elementary<T: Scalar>(elem: &[T], shift: T) -> Vec<T> {
    let n = elem.len();
    let binom = binomial_table(n);
    (1..=n)
        .map(|k| {
            // e'_k = sum_{j=0}^{k} e_j C(n-j, k-j) (-shift)^(k-j)
            let mut acc = T::zero();
            let mut pow = T::one();
            for j in (0..=k).rev() {
                let ej = if j == 0 { T::one() } else { elem[j - 1] };
                acc += ej * T::lit(binom[n - j][k - j]) * pow;
                pow *= -shift;
            }
            if k == 1 {
                // exact by construction
                T::zero()
            } else {
                acc
            }
        })
        .collect()
}

pub(crate) fn binomial_table(n: usize) -> Vec<Vec<f64>> {
    let mut c = vec![vec![0.0; n + 1]; n + 1];
    for i in 0..=n {
        c[i][0] = 1.0;
        for j in 1..=i {
            c[i][j] = c[i - 1][j - 1] + if j < i { c[i - 1][j] } else { 0.0 };
        }
    }
    c
}

/// Newton's identities: power sums from elementary symmetric values.
pub fn elementary_to_power_sums<T: Scalar>(elem: &[T]) -> Vec<T> {
    let n = elem.len();
    let mut p: Vec<T> = Vec::with_capacity(n);
    for k in 1..=n {
        // p_k = e1 p_{k-1} - e2 p_{k-2} + ... + (-1)^(k-1) k e_k
        let mut acc = T::zero();
        for i in 1..k {
            let term = elem[i - 1] * p[k - i - 1];
            acc += if i % 2 == 1 { term } else { -term };
        }
        let last = T::from_index(k) * elem[k - 1];
        acc += if k % 2 == 1 { last } else { -last };
        p.push(acc);
    }
    p
}

/// Inverse of [`elementary_to_power_sums`].
pub fn power_sums_to_elementary<T: Scalar>(power: &[T]) -> Vec<T> {
    let n = power.len();
    let mut e: Vec<T> = Vec::with_capacity(n);
    for k in 1..=n {
        // k e_k = sum_{i=1}^{k} (-1)^(i-1) e_{k-i} p_i
        let mut acc = T::zero();
        for i in 1..=k {
            let ek_i = if k == i { T::one() } else { e[k - i - 1] };
            let term = ek_i * power[i - 1];
            acc += if i % 2 == 1 { term } else { -term };
        }
        e.push(acc / T::from_index(k));
    }
    e
}

/// Horner evaluation of a descending-coefficient polynomial together with its
/// derivative and a running rounding bound `sum |c_j| |x|^(m-j)`.
#[inline]
fn eval3<T: Scalar>(c: &[T], x: T) -> (T, T, T) {
    let ax = x.abs();
    let mut f = c[0];
    let mut df = T::zero();
    let mut bound = c[0].abs();
    for &cj in &c[1..] {
        df = df * x + f;
        f = f * x + cj;
        bound = bound * ax + cj.abs();
    }
    let m = T::from_index(c.len());
    (f, df, bound * T::lit(4.0) * m * T::epsilon())
}

#[inline]
fn coeff_scale<T: Scalar>(c: &[T]) -> T {
    c[1..].iter().fold(T::one(), |m, v| fmax(m, v.abs()))
}

/// Roots of the monic polynomial with elementary values `elem`, plus the
/// hyperbolicity witness. The returned roots are sorted.
pub(crate) fn interlacing_roots<T: Scalar>(elem: &[T]) -> (Vec<T>, T) {
    let n = elem.len();
    let nt = T::from_index(n);
    let mean = elem[0] / nt;
    if n == 1 {
        return (vec![elem[0]], T::zero());
    }
    let mut a = Vec::with_capacity(n + 1);
    a.push(T::one());
    for (j, &e) in elem.iter().enumerate() {
        a.push(if j % 2 == 0 { -e } else { e });
    }
    let scale = coeff_scale(&a);

    // sum_k (r_k - mean)^2 from the coefficients
    let spread = elem[0] * elem[0] * (T::one() - T::one() / nt) - T::lit(2.0) * elem[1];
    if spread <= T::zero() {
        // A hyperbolic polynomial with vanishing spread is (z - mean)^n.
        let binom = binomial_table(n);
        let mut witness = T::zero();
        let mut pow = T::one();
        for j in 1..=n {
            pow *= -mean;
            let expected = T::lit(binom[n][j]) * pow;
            witness = fmax(witness, (a[j] - expected).abs() / scale);
        }
        let eps_floor = T::lit(64.0) * nt * T::epsilon();
        if witness <= eps_floor {
            witness = T::zero();
        }
        return (vec![mean; n], witness);
    }

    // Laguerre-Samuelson: every root of a hyperbolic polynomial (and of its
    // derivatives) lies within mean +- w.
    let w = (spread * (nt - T::one()) / nt).sqrt();
    let pad = w * T::lit(1e-7) + T::lit(4.0) * T::epsilon() * (mean.abs() + w);
    let mut lo = mean - w - pad;
    let mut hi = mean + w + pad;

    // levels[m] holds the monic polynomial P^(n-m) / (n!/m!), degree m.
    let mut levels: Vec<Vec<T>> = vec![Vec::new(); n + 1];
    levels[n] = a;
    for m in (1..n).rev() {
        let up = &levels[m + 1];
        let mp1 = T::from_index(m + 1);
        let next: Vec<T> = (0..=m)
            .map(|j| up[j] * T::from_index(m + 1 - j) / mp1)
            .collect();
        levels[m] = next;
    }

    let mut witness = T::zero();
    let mut prev = vec![-levels[1][1]];
    for (m, q) in levels.iter().enumerate().take(n + 1).skip(2) {
        let qscale = coeff_scale(q);
        lo = lo.min(prev[0]);
        hi = hi.max(prev[prev.len() - 1]);
        let last = m == n;
        // q at every bracket end: lo, the previous level's roots, hi
        let ends: Vec<(T, T, T)> = std::iter::once(lo)
            .chain(prev.iter().copied())
            .chain(std::iter::once(hi))
            .map(|x| {
                let (f, _, noise) = eval3(q, x);
                (x, f, noise)
            })
            .collect();
        let mut cur = Vec::with_capacity(m);
        for k in 0..m {
            let (root, deficit) = root_in_monotone(q, ends[k], ends[k + 1], qscale, last);
            witness = fmax(witness, deficit);
            cur.push(root);
        }
        // rounding can only swap roots that share an endpoint
        cur.sort_by(total_cmp);
        prev = cur;
    }
    (prev, witness)
}

/// Roots continued from nearby guesses by Newton's method from each guess,
/// accepted only when the results are certified as `n` simple real roots by
/// sign alternation of `P` at the midpoints between them. Returns `None`
/// whenever the certificate cannot be established.
pub(crate) fn track_roots<T: Scalar>(elem: &[T], guess: &[T]) -> Option<Vec<T>> {
    let n = elem.len();
    if n == 1 {
        return Some(vec![elem[0]]);
    }
    if guess.len() != n {
        return None;
    }
    let mut a = Vec::with_capacity(n + 1);
    a.push(T::one());
    for (j, &e) in elem.iter().enumerate() {
        a.push(if j % 2 == 0 { -e } else { e });
    }
    let mut roots = Vec::with_capacity(n);
    for &g in guess {
        let mut x = g;
        let mut converged = false;
        for _ in 0..12 {
            let (f, df, noise) = eval3(&a, x);
            if f.abs() <= noise {
                x = polish(&a, x, f, df, T::neg_infinity(), T::infinity());
                converged = true;
                break;
            }
            if df == T::zero() {
                return None;
            }
            let dx = f / df;
            let xn = x - dx;
            if dx.abs() <= T::lit(4.0) * T::epsilon() * x.abs() {
                // one more step can only help when it lowers the residual
                let (fnew, _, _) = eval3(&a, xn);
                if fnew.abs() < f.abs() {
                    x = xn;
                }
                converged = true;
                break;
            }
            x = xn;
        }
        if !converged || !x.is_finite() {
            return None;
        }
        roots.push(x);
    }
    for k in 1..n {
        if !(roots[k] > roots[k - 1]) {
            return None;
        }
    }
    // sign of P between roots k and k+1 is (-1)^(n-1-k)
    for k in 0..n - 1 {
        let mid = roots[k] + (roots[k + 1] - roots[k]) / T::lit(2.0);
        let (f, _, noise) = eval3(&a, mid);
        if f.abs() <= T::lit(8.0) * noise {
            return None;
        }
        let positive = (n - 1 - k).is_multiple_of(2);
        if (f > T::zero()) != positive {
            return None;
        }
    }
    Some(correct_tuple(elem, roots))
}

/// `e(roots) − elem`, the coefficient residual of a root tuple.
fn tuple_residual<T: Scalar>(elem: &[T], roots: &[T]) -> Vec<T> {
    let n = roots.len();
    let mut e = vec![T::zero(); n + 1];
    e[0] = T::one();
    for (m, &r) in roots.iter().enumerate() {
        for k in (1..=m + 1).rev() {
            e[k] = e[k] + r * e[k - 1];
        }
    }
    e[1..].iter().zip(elem).map(|(&x, &y)| x - y).collect()
}

/// Weierstrass corrections of a sorted root tuple, computed from the
/// residual polynomial `∏(x − r_i) − P`. Evaluating that small polynomial at
/// nearby roots gives correlated errors, so the symmetric functions of a
/// tight cluster become accurate even where its individual roots are not.
/// Steps that reorder the roots or fail to shrink the residual are dropped.
fn correct_tuple<T: Scalar>(elem: &[T], mut roots: Vec<T>) -> Vec<T> {
    let n = roots.len();
    if n < 2 {
        return roots;
    }
    let size = |d: &[T]| d.iter().fold(T::zero(), |m, v| fmax(m, v.abs()));
    let mut residual = tuple_residual(elem, &roots);
    let mut current = size(&residual);
    for _ in 0..2 {
        if current == T::zero() {
            break;
        }
        let mut next = roots.clone();
        for (i, &r) in roots.iter().enumerate() {
            // R(x) = Σ_k (−1)^k d_k x^(n−k)
            let value = residual
                .iter()
                .enumerate()
                .fold(T::zero(), |acc, (k, &d)| acc * r + if k % 2 == 0 { -d } else { d });
            let basis = roots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(T::one(), |acc, (_, &q)| acc * (r - q));
            if basis == T::zero() {
                return roots;
            }
            next[i] = r + value / basis;
        }
        if !next.iter().all(|v| v.is_finite()) || next.windows(2).any(|w| w[1] < w[0]) {
            break;
        }
        let trial = tuple_residual(elem, &next);
        let size_trial = size(&trial);
        if !(size_trial < current) {
            break;
        }
        roots = next;
        residual = trial;
        current = size_trial;
    }
    roots
}

/// Zero of `q` on `[xl, xr]`, where `q` is monotone, given `(x, q(x), noise)`
/// at both ends. Returns the zero and the relative deficit (0 when a sign
/// change or a noise-level value was found).
fn root_in_monotone<T: Scalar>(q: &[T], left: (T, T, T), right: (T, T, T), qscale: T, last: bool) -> (T, T) {
    let (xl, fl, nl) = left;
    let (xr, fr, nr) = right;
    if fl == T::zero() {
        return (xl, T::zero());
    }
    if fr == T::zero() {
        return (xr, T::zero());
    }
    if (fl < T::zero()) != (fr < T::zero()) {
        return (safeguarded_newton(q, xl, xr, fl, fr, last), T::zero());
    }
    let ratio_l = fl.abs() / nl;
    let ratio_r = fr.abs() / nr;
    if ratio_l <= T::one() || ratio_r <= T::one() {
        // numerically a multiple root at a critical point
        return if ratio_l <= ratio_r { (xl, T::zero()) } else { (xr, T::zero()) };
    }
    if fl.abs() <= fr.abs() {
        (xl, fl.abs() / qscale)
    } else {
        (xr, fr.abs() / qscale)
    }
}

/// Bracketed Newton iteration. Intermediate levels only supply brackets, so
/// unless `full` is set the iteration stops once a Newton step is tiny
/// relative to the bracket; the quadratic convergence makes the returned
/// point far more accurate than that step.
fn safeguarded_newton<T: Scalar>(q: &[T], mut a: T, mut b: T, fa: T, fb: T, full: bool) -> T {
    let neg_at_a = fa < T::zero();
    let two = T::lit(2.0);
    let coarse = if full { T::zero() } else { T::lit(1e-7) * (b - a) };
    // secant start, kept away from the bracket ends
    let w = (fa / (fa - fb)).max(T::lit(0.05)).min(T::lit(0.95));
    let mut x = a + (b - a) * w;
    let mut dx_old = b - a;
    let mut dx = dx_old;
    for _ in 0..200 {
        let (f, df, noise) = eval3(q, x);
        if f == T::zero() {
            return x;
        }
        if f.abs() <= noise {
            return if full { polish(q, x, f, df, a, b) } else { x };
        }
        if (f < T::zero()) == neg_at_a {
            a = x;
        } else {
            b = x;
        }
        let newton_ok = df != T::zero() && {
            let xn = x - f / df;
            xn > a && xn < b && (two * f).abs() <= (dx_old * df).abs()
        };
        dx_old = dx;
        if newton_ok {
            dx = f / df;
            let xn = x - dx;
            if xn == x || dx.abs() <= coarse {
                return xn;
            }
            x = xn;
        } else {
            dx = (b - a) / two;
            let mid = a + dx;
            if mid <= a || mid >= b {
                return x;
            }
            x = mid;
        }
        if dx.abs() <= T::epsilon() * x.abs() {
            return x;
        }
    }
    x
}

/// A few plain Newton steps inside the bracket while the residual shrinks.
fn polish<T: Scalar>(q: &[T], mut x: T, mut f: T, mut df: T, a: T, b: T) -> T {
    for _ in 0..3 {
        if df == T::zero() {
            break;
        }
        let xn = x - f / df;
        if xn < a || xn > b || xn == x {
            break;
        }
        let (fn_, dfn, _) = eval3(q, xn);
        if fn_.abs() >= f.abs() {
            break;
        }
        x = xn;
        f = fn_;
        df = dfn;
    }
    x
}
