//! Scalar abstractions shared by every numeric routine in the crate.
//!
//! [`Scalar`] covers anything the coefficient algebra needs (a field with
//! small-integer embedding), which includes exact [`BigRational`] values.
//! [`Real`] adds transcendental functions for the evaluators and solvers.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};

/// Conversion from an exact rational, used when specialising symbolic
/// polynomials at concrete values.
pub trait FromRational {
    fn from_rational(r: &BigRational) -> Self;
}

impl FromRational for f64 {
    fn from_rational(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

impl FromRational for f32 {
    fn from_rational(r: &BigRational) -> Self {
        r.to_f32().unwrap_or(f32::NAN)
    }
}

impl FromRational for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
}

/// Field-like scalar: `f32`, `f64` or [`BigRational`].
pub trait Scalar: Num + Clone + Debug + Neg<Output = Self> + FromPrimitive + FromRational {}

impl<T> Scalar for T where T: Num + Clone + Debug + Neg<Output = Self> + FromPrimitive + FromRational {}

/// Floating point scalar: `f32` or `f64`.
pub trait Real: Scalar + Float + FloatConst + Display + Send + Sync + 'static {}

impl<T> Real for T where T: Scalar + Float + FloatConst + Display + Send + Sync + 'static {}

/// Embeds an `f64` literal. Exact for every type implementing [`Scalar`] here.
#[inline]
pub fn lit<T: FromPrimitive>(x: f64) -> T {
    T::from_f64(x).expect("finite literal")
}

/// Embeds an integer.
#[inline]
pub fn int<T: FromPrimitive>(x: i64) -> T {
    T::from_i64(x).expect("integer embedding")
}

#[inline]
pub fn usz<T: FromPrimitive>(x: usize) -> T {
    T::from_usize(x).expect("integer embedding")
}
