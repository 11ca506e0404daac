//! Eigenvalue curves of symmetric matrices with polynomial entries.
//!
//! The characteristic coefficients `Σ_i(A(t))` are polynomials in `t`,
//! computed exactly over the rationals by the Faddeev–LeVerrier recursion;
//! the eigenvalues are then the roots of a hyperbolic curve.

use nalgebra::{DMatrix, SymmetricEigen};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::CoeffCurve;
use crate::error::{LiftError, Result};
use crate::lift::{lift_sorted, LiftMode, LiftResult};
use crate::norms::uniform_grid;
use crate::poly::Poly;
use crate::scalar::{fmax, total_cmp, Coeff, Scalar};

/// Largest dimension for which characteristic coefficients are computed.
pub const MAX_CHARPOLY_DIM: usize = 64;

/// A curve `t ↦ A(t)` of symmetric `m × m` matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrixCurve<T> {
    m: usize,
    interval: (T, T),
    entries: Vec<Vec<Poly<T>>>,
}

impl<T: Scalar> SymMatrixCurve<T> {
    /// Builds the curve from a full matrix of polynomials, which must be
    /// exactly symmetric.
    pub fn new(interval: (T, T), entries: Vec<Vec<Poly<T>>>) -> Result<Self> {
        let m = entries.len();
        if m == 0 {
            return Err(LiftError::InvalidInput("matrix must be at least 1 × 1".into()));
        }
        if !(interval.0 < interval.1) {
            return Err(LiftError::InvalidInput(format!("empty interval [{}, {}]", interval.0, interval.1)));
        }
        if let Some(i) = entries.iter().position(|row| row.len() != m) {
            return Err(LiftError::InvalidInput(format!("row {i} has {} entries, expected {m}", entries[i].len())));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                if !entry.is_finite() {
                    return Err(LiftError::InvalidInput(format!("entry ({i}, {j}) has non-finite coefficients")));
                }
                if j > i && *entry != entries[j][i] {
                    return Err(LiftError::InvalidInput(format!("entries ({i}, {j}) and ({j}, {i}) differ")));
                }
            }
        }
        Ok(SymMatrixCurve { m, interval, entries })
    }

    /// The pencil `A₀ + t·A₁`.
    pub fn pencil(interval: (T, T), a0: &[Vec<T>], a1: &[Vec<T>]) -> Result<Self> {
        let entries = a0
            .iter()
            .zip(a1)
            .map(|(r0, r1)| r0.iter().zip(r1).map(|(&x, &y)| Poly::linear(x, y)).collect())
            .collect();
        Self::new(interval, entries)
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn interval(&self) -> (T, T) {
        self.interval
    }

    pub fn entries(&self) -> &[Vec<Poly<T>>] {
        &self.entries
    }

    fn matrix_at(&self, t: T) -> DMatrix<f64> {
        DMatrix::from_fn(self.m, self.m, |i, j| self.entries[i][j].at(t).as_f64())
    }

    /// The entrywise derivative `t ↦ A′(t)`.
    pub fn derivative(&self) -> Self {
        let entries = self.entries.iter().map(|row| row.iter().map(Poly::derivative).collect()).collect();
        SymMatrixCurve { m: self.m, interval: self.interval, entries }
    }

    /// Sorted eigenvalues of `A(t)` from a symmetric eigensolver.
    pub fn eigenvalues_at(&self, t: T) -> Vec<T> {
        let mut ev: Vec<T> = SymmetricEigen::new(self.matrix_at(t)).eigenvalues.iter().map(|&v| T::lit(v)).collect();
        ev.sort_by(total_cmp);
        ev
    }

    /// Spectral norm of `A(t)`.
    pub fn norm_at(&self, t: T) -> T {
        let ev = SymmetricEigen::new(self.matrix_at(t)).eigenvalues;
        T::lit(ev.iter().fold(0.0f64, |m, v| m.max(v.abs())))
    }
}

/// Elementary symmetric functions of the eigenvalues of a polynomial matrix,
/// `e_k = Σ_k(A)`, by the Faddeev–LeVerrier recursion
/// `M_k = A·M_{k−1} + a_{k−1}·I`, `a_k = −tr(A·M_k)/k`.
pub fn charpoly_elementary<R: Coeff>(entries: &[Vec<Poly<R>>]) -> Vec<Poly<R>> {
    let m = entries.len();
    let trace_of_product = |b: &[Vec<Poly<R>>]| {
        let mut acc = Poly::zero();
        for i in 0..m {
            for j in 0..m {
                acc = &acc + &(&entries[i][j] * &b[j][i]);
            }
        }
        acc
    };
    let identity = |c: &Poly<R>| -> Vec<Vec<Poly<R>>> {
        (0..m).map(|i| (0..m).map(|j| if i == j { c.clone() } else { Poly::zero() }).collect()).collect()
    };
    // monic coefficients a_k of z^{m−k}
    let mut a: Vec<Poly<R>> = Vec::with_capacity(m);
    let mut mk = identity(&Poly::constant(R::one()));
    for k in 1..=m {
        if k > 1 {
            let prev = mk;
            mk = identity(&a[k - 2]);
            for i in 0..m {
                for j in 0..m {
                    for l in 0..m {
                        mk[i][j] = &mk[i][j] + &(&entries[i][l] * &prev[l][j]);
                    }
                }
            }
        }
        let inv_k = R::one() / R::from_usize(k).expect("dimension fits the coefficient ring");
        a.push(trace_of_product(&mk).scale(&(R::zero() - inv_k)));
    }
    a.into_iter()
        .enumerate()
        .map(|(k, p)| if k % 2 == 0 { p.scale(&(R::zero() - R::one())) } else { p })
        .collect()
}

fn to_rational<T: Scalar>(p: &Poly<T>) -> Poly<BigRational> {
    Poly::new(
        p.coeffs()
            .iter()
            .map(|c| BigRational::from_float(c.as_f64()).expect("finite coefficient"))
            .collect(),
    )
}

fn from_rational<T: Scalar>(p: &Poly<BigRational>) -> Poly<T> {
    Poly::new(p.coeffs().iter().map(|c| T::lit(c.to_f64().unwrap_or(f64::NAN))).collect())
}

/// The coefficient curve `t ↦ (Σ₁(A(t)), …, Σ_m(A(t)))`, computed exactly
/// and rounded once.
pub fn charpoly_curve<T: Scalar>(a: &SymMatrixCurve<T>) -> Result<CoeffCurve<T>> {
    if a.m > MAX_CHARPOLY_DIM {
        return Err(LiftError::InvalidParameter(format!(
            "characteristic coefficients are limited to m ≤ {MAX_CHARPOLY_DIM}, got {}",
            a.m
        )));
    }
    let exact: Vec<Vec<Poly<BigRational>>> = a.entries.iter().map(|row| row.iter().map(to_rational).collect()).collect();
    let elem = charpoly_elementary(&exact).iter().map(from_rational).collect();
    CoeffCurve::elementary(a.interval, elem)
}

/// Eigenvalue lift with the perturbation bound `sup_t ‖A′(t)‖₂`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Deserialize<'de> + Default"))]
pub struct EigenLift<T> {
    pub lift: LiftResult<T>,
    pub weyl_bound: T,
    /// `empirical_lip ≤ weyl_bound·(1 + 1e−6)`.
    pub weyl_ok: bool,
}

/// Sorted eigenvalue branches of `a` and the check of the empirical
/// Lipschitz constant against `sup ‖A′‖₂` on the lift's grid. Dimensions
/// beyond [`MAX_CHARPOLY_DIM`] are lifted with the eigensolver directly.
pub fn eigen_lift<T: Scalar>(a: &SymMatrixCurve<T>, grid_size: usize) -> Result<EigenLift<T>> {
    let lift = if a.m <= MAX_CHARPOLY_DIM {
        lift_sorted(&charpoly_curve(a)?, grid_size)?
    } else {
        if grid_size < 2 {
            return Err(LiftError::InvalidParameter("grid needs at least 2 points".into()));
        }
        let grid = uniform_grid(a.interval.0, a.interval.1, grid_size);
        let rows = grid.iter().map(|&t| a.eigenvalues_at(t)).collect();
        LiftResult::from_rows(grid, rows, LiftMode::C0)
    };
    let da = a.derivative();
    let constant = da.entries.iter().flatten().all(|p| p.degree().unwrap_or(0) == 0);
    let weyl_bound = if constant {
        da.norm_at(a.interval.0)
    } else {
        lift.grid.par_iter().map(|&t| da.norm_at(t)).reduce(T::zero, fmax)
    };
    let weyl_ok = lift.empirical_lip <= weyl_bound * (T::one() + T::lit(1e-6));
    Ok(EigenLift { lift, weyl_bound, weyl_ok })
}

/// On-disk matrix curve: `entries[i]` lists polynomial coefficients (in `t`,
/// ascending) either for the whole row or for columns `i..m` only.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub m: usize,
    pub interval: [f64; 2],
    pub entries: Vec<Vec<Vec<f64>>>,
}

impl MatrixFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| LiftError::InvalidInput(format!("matrix curve: {e}")))
    }

    /// Mirrors an upper triangle and validates symmetry of full rows.
    pub fn into_curve<T: Scalar>(self) -> Result<SymMatrixCurve<T>> {
        let m = self.m;
        if self.entries.len() != m {
            return Err(LiftError::InvalidInput(format!("expected {m} rows, got {}", self.entries.len())));
        }
        let poly = |c: &[f64]| Poly::new(c.iter().map(|&v| T::lit(v)).collect());
        let mut full: Vec<Vec<Option<Poly<T>>>> = vec![vec![None; m]; m];
        for (i, row) in self.entries.iter().enumerate() {
            let offset = if row.len() == m {
                0
            } else if row.len() == m - i {
                i
            } else {
                return Err(LiftError::InvalidInput(format!(
                    "row {i} has {} entries; expected {m} or {} (upper triangle)",
                    row.len(),
                    m - i
                )));
            };
            for (k, c) in row.iter().enumerate() {
                full[i][k + offset] = Some(poly(c));
            }
        }
        let mut entries = vec![vec![Poly::zero(); m]; m];
        for i in 0..m {
            for j in 0..m {
                let (lo, hi) = (i.min(j), i.max(j));
                entries[i][j] = full[i][j]
                    .clone()
                    .or_else(|| full[j][i].clone())
                    .or_else(|| full[lo][hi].clone())
                    .ok_or_else(|| LiftError::InvalidInput(format!("entry ({i}, {j}) missing")))?;
            }
        }
        SymMatrixCurve::new((T::lit(self.interval[0]), T::lit(self.interval[1])), entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> Poly<f64> {
        Poly::new(c.to_vec())
    }

    #[test]
    fn diagonal_and_swap() {
        let a = SymMatrixCurve::new((-4.0, 4.0), vec![vec![p(&[0.0, 1.0]), p(&[])], vec![p(&[]), p(&[0.0, -1.0])]]).unwrap();
        let c = charpoly_curve(&a).unwrap();
        assert_eq!(c.values_at(3.0).unwrap(), vec![0.0, -9.0]);
        let b = SymMatrixCurve::new((-4.0, 4.0), vec![vec![p(&[]), p(&[0.0, 1.0])], vec![p(&[0.0, 1.0]), p(&[])]]).unwrap();
        assert_eq!(charpoly_curve(&b).unwrap().values_at(2.0).unwrap(), vec![0.0, -4.0]);
    }

    #[test]
    fn identity_three() {
        let one = p(&[1.0]);
        let z = Poly::zero();
        let a = SymMatrixCurve::new(
            (0.0, 1.0),
            vec![vec![one.clone(), z.clone(), z.clone()], vec![z.clone(), one.clone(), z.clone()], vec![z.clone(), z, one]],
        )
        .unwrap();
        assert_eq!(charpoly_curve(&a).unwrap().values_at(0.5).unwrap(), vec![3.0, 3.0, 1.0]);
    }

    #[test]
    fn float_recursion_matches_exact() {
        let entries = vec![
            vec![p(&[1.0, 2.0]), p(&[0.5]), p(&[0.0, -1.0])],
            vec![p(&[0.5]), p(&[-2.0, 0.0, 1.0]), p(&[3.0])],
            vec![p(&[0.0, -1.0]), p(&[3.0]), p(&[0.25, 1.0])],
        ];
        let float = charpoly_elementary(&entries);
        let a = SymMatrixCurve::new((-1.0, 1.0), entries).unwrap();
        let exact = charpoly_curve(&a).unwrap();
        for t in [-0.7, 0.0, 0.3] {
            let v = exact.values_at(t).unwrap();
            for (f, e) in float.iter().zip(&v) {
                assert!((f.at(t) - e).abs() < 1e-12);
            }
            let ev = a.eigenvalues_at(t);
            let roots = exact.roots_at(t).unwrap();
            for (x, y) in ev.iter().zip(roots.values()) {
                assert!((x - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn asymmetry_rejected() {
        let e = SymMatrixCurve::new((0.0, 1.0), vec![vec![p(&[]), p(&[1.0])], vec![p(&[1.0 + 1e-15]), p(&[])]]);
        assert!(matches!(e, Err(LiftError::InvalidInput(_))));
    }

    #[test]
    fn swap_matrix_meets_weyl_with_equality() {
        let b = SymMatrixCurve::new((-1.0, 1.0), vec![vec![p(&[]), p(&[0.0, 1.0])], vec![p(&[0.0, 1.0]), p(&[])]]).unwrap();
        let r = eigen_lift(&b, 1001).unwrap();
        assert!((r.lift.empirical_lip - 1.0).abs() < 1e-9);
        assert!((r.weyl_bound - 1.0).abs() < 1e-12);
        assert!(r.weyl_ok);
    }

    #[test]
    fn constant_matrix_is_still() {
        let a = SymMatrixCurve::pencil((-1.0, 1.0), &[vec![1.0, 2.0], vec![2.0, -1.0]], &[vec![0.0; 2], vec![0.0; 2]]).unwrap();
        let r = eigen_lift(&a, 101).unwrap();
        assert_eq!(r.lift.empirical_lip, 0.0);
        assert!(r.weyl_ok);
    }

    #[test]
    fn upper_triangle_file() {
        let f = MatrixFile::from_json(r#"{"m": 2, "interval": [-1, 1], "entries": [[[0], [0, 1]], [[0]]]}"#).unwrap();
        let a: SymMatrixCurve<f64> = f.into_curve().unwrap();
        assert_eq!(a.entries()[1][0], p(&[0.0, 1.0]));
        let bad = MatrixFile::from_json(r#"{"m": 2, "interval": [-1, 1], "entries": [[[0], [1]], [[2], [0]]]}"#).unwrap();
        assert!(bad.into_curve::<f64>().is_err());
    }
}
