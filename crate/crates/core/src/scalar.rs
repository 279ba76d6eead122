//! Scalar abstractions.
//!
//! Polynomial arithmetic, orthogonalization and weighted moments only need
//! field operations, so they are written against [`Scalar`] and run equally on
//! `f64`, `f32` or exact rationals. Anything that compares against a
//! tolerance, finds roots or evaluates transcendental functions needs
//! [`Real`].

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};

/// Field-like number: exact (rational) or floating point.
pub trait Scalar: Num + Clone + PartialOrd + Debug + FromPrimitive + ToPrimitive {
    /// Converts a small integer constant.
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer constant representable")
    }

    /// Lossy conversion used for diagnostics.
    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where T: Num + Clone + PartialOrd + Debug + FromPrimitive + ToPrimitive {}

/// Floating point scalar (`f32` or `f64`).
pub trait Real:
    Scalar + Float + FloatConst + Copy + Display + LowerExp + Send + Sync + 'static
{
    /// Converts an `f64` literal.
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite literal")
    }

    /// Converts a count or index.
    fn count(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("count representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}
