//! Scalar abstraction shared by the numerical modules.
//!
//! Everything that does floating-point work is generic over [`Scalar`], which
//! is implemented for `f32` and `f64`. Exact computations (characteristic
//! coefficients of integer matrix curves) use the weaker [`Coeff`] bound so
//! they also run over `num_rational::BigRational`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, Num, NumAssign, ToPrimitive};

/// Floating-point scalar: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Panics only if the target cannot hold it,
    /// which never happens for the finite constants used in this crate.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_index(n: usize) -> Self {
        Self::from_usize(n).expect("index representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Coefficient ring for polynomial arithmetic: floats or exact rationals.
pub trait Coeff: Clone + Num + FromPrimitive + Debug {}

impl<T> Coeff for T where T: Clone + Num + FromPrimitive + Debug {}

/// `max` that ignores ordering subtleties of NaN (NaN never wins).
#[inline]
pub(crate) fn fmax<T: Scalar>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

/// Total order for sorting root values; `-0.0` sorts before `+0.0` so the
/// order of a multiset is independent of the input permutation.
#[inline]
pub(crate) fn total_cmp<T: Scalar>(a: &T, b: &T) -> std::cmp::Ordering {
    match a.partial_cmp(b) {
        Some(std::cmp::Ordering::Equal) => b.is_sign_negative().cmp(&a.is_sign_negative()),
        Some(o) => o,
        None => std::cmp::Ordering::Equal,
    }
}
