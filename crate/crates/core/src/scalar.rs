//! Numeric backends: exact arbitrary-precision rationals and binary64 floats.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Exact backend scalar: arbitrary-precision rational.
pub type Rational = BigRational;

/// Scalar type a problem is expressed in. Implemented by [`Rational`]
/// (exact) and `f64` (binary64 with a default comparison tolerance of
/// 1e-9).
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Signed
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + 'static
{
    /// True when arithmetic and comparisons are exact.
    const EXACT: bool;

    fn from_int(v: i64) -> Self;

    /// Exact ratio `num/den`, `den != 0`.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Exact conversion of a finite float (every finite `f64` is rational).
    fn from_f64(v: f64) -> Self;

    /// Conversion from an exact rational; lossy only for the float backend.
    fn from_rational(r: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    fn is_finite_value(&self) -> bool;

    /// Equality at the backend's precision: exact for rationals,
    /// `|a - b| <= tol` for floats.
    fn eq_within(&self, other: &Self, tol: f64) -> bool;

    /// `self >= other` at the backend's precision.
    fn ge_within(&self, other: &Self, tol: f64) -> bool;

    /// Default comparison tolerance for this backend.
    fn default_tolerance() -> f64;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }

    fn eq_within(&self, other: &Self, tol: f64) -> bool {
        (self - other).abs() <= tol
    }

    fn ge_within(&self, other: &Self, tol: f64) -> bool {
        *self >= other - tol
    }

    fn default_tolerance() -> f64 {
        1e-9
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_f64(v: f64) -> Self {
        <Rational as FromPrimitive>::from_f64(v).expect("finite float")
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_finite_value(&self) -> bool {
        true
    }

    fn eq_within(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn ge_within(&self, other: &Self, _tol: f64) -> bool {
        self >= other
    }

    fn default_tolerance() -> f64 {
        0.0
    }
}

/// Maximum of two scalars by `PartialOrd` (panics on incomparable values,
/// which only arise from NaN floats).
pub(crate) fn max_scalar<T: Scalar>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}
