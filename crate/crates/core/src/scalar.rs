//! Scalar abstraction shared by every numerical module.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst};

/// Floating-point type the pulse numerics are instantiated over.
pub trait Scalar:
    Float + FloatConst + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Float + FloatConst + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
}

/// Converts an `f64` constant into `F`.
#[inline]
pub(crate) fn lit<F: Scalar>(x: f64) -> F {
    F::from(x).expect("f64 constant representable in scalar type")
}

#[inline]
pub(crate) fn from_i64<F: Scalar>(x: i64) -> F {
    F::from(x).expect("integer representable in scalar type")
}

#[inline]
pub(crate) fn from_usize<F: Scalar>(x: usize) -> F {
    F::from(x).expect("integer representable in scalar type")
}
