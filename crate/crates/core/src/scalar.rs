//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! Times, speeds, weights and objective values are all carried in one
//! floating type chosen by the caller. `f64` is the default everywhere
//! (see the aliases at the crate root); `f32` is supported for
//! memory-constrained experiments.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::Serialize;

/// Floating point type used for all continuous quantities.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Serialize + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal or parsed value.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 converts to every supported scalar")
    }

    /// Widening conversion used by reports and file writers.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("every supported scalar converts to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
