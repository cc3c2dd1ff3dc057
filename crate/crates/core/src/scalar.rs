//! Scalar traits shared by the generic polynomial and matrix types.
//!
//! The exact algorithms run over [`num_bigint::BigInt`] and
//! [`num_rational::BigRational`]; the floating root finder runs over `f32`
//! or `f64`. Everything generic only needs the traits below.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{Float, FromPrimitive, One, Zero};

/// A commutative ring with identity.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> {}

impl<T> Field for T where T: Ring + Div<Output = T> {}

/// Floating point type usable by the approximate root finder.
pub trait RootFloat: Float + FromPrimitive + Debug + Send + Sync {}

impl RootFloat for f32 {}
impl RootFloat for f64 {}
