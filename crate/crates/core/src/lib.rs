//! Certified Lipschitz and C¹ lifts of the roots of hyperbolic polynomial
//! curves and of the eigenvalues of symmetric-matrix curves.
//!
//! A curve `t ↦ (e₁(t), …, e_n(t))` of elementary symmetric values whose
//! polynomials have only real roots is lifted to `n` root branches. Sorting
//! gives a continuous lift that is locally Lipschitz; re-matching branches at
//! collisions by their derivatives gives a C¹ lift when one exists. The
//! crate also evaluates the explicit quantities bounding the Lipschitz
//! constant, checks the interpolation inequalities behind them, and ships a
//! brute-force oracle for testing.
//!
//! Numerical code is generic over [`Scalar`] (`f32`, `f64`); the aliases at
//! the crate root fix `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod assignment;
pub mod bounds;
pub mod cluster;
pub mod curve;
pub mod eigen;
pub mod error;
pub mod grid2d;
pub mod hyperbolic;
pub mod io;
pub mod lift;
pub mod norms;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod sqrt;

pub use bounds::{
    compute_bounds, compute_bounds_with, glaeser_check, glaeser_check_poly, lagrange_coeff_check, taylor_derivative_check,
    verify_assumptions, AssumptionReport, BoundReport, DerivativeTable, GlaeserReport, LagrangeReport, TaylorReport,
};
pub use cluster::{cluster_reduce, cluster_roots, ClusterTree};
pub use curve::{CoeffCurve, CurveFile, InvariantSystem, SeminormEstimate, SeminormMethod};
pub use eigen::{charpoly_curve, eigen_lift, EigenLift, MatrixFile, SymMatrixCurve};
pub use error::{LiftError, Result};
pub use grid2d::{lift_grid_2d, Grid2d, Grid2dLift};
pub use hyperbolic::{elementary_to_power_sums, power_sums_to_elementary, HyperbolicPoly, HyperbolicityCertificate, RootMultiset};
pub use lift::{classify_point, glue, lift_c1, lift_sorted, lift_sorted_on, Case, LiftMode, LiftResult, PointClass};
pub use oracle::{brute_force_lift, empirical_lip, refine, LipMode, MatchingLift};
pub use poly::Poly;
pub use scalar::{Coeff, Scalar};
pub use sqrt::{sqrt_lift, FunctionFile, NonnegFunction, SignedSqrtLift};

/// `f64` instantiations of the generic types.
pub type Poly64 = Poly<f64>;
pub type HyperbolicPoly64 = HyperbolicPoly<f64>;
pub type RootMultiset64 = RootMultiset<f64>;
pub type Curve64 = CoeffCurve<f64>;
pub type Lift64 = LiftResult<f64>;
pub type BoundReport64 = BoundReport<f64>;
pub type ClusterTree64 = ClusterTree<f64>;
pub type MatrixCurve64 = SymMatrixCurve<f64>;
pub type SqrtLift64 = SignedSqrtLift<f64>;
pub type Grid2d64 = Grid2d<f64>;
