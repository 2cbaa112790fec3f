//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All model math is written against [`Scalar`], implemented for `f32` and
//! `f64`. Serialized artifacts always carry `f64`, which both types widen
//! into losslessly.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + LowerExp
    + Default
    + Sum
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal or parameter into this scalar type.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 is representable in every Float type")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Smallest firing-strength total accepted before a point counts as degenerate.
    fn degenerate_threshold() -> Self {
        Self::lit(1e-300).max(Self::min_positive_value())
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
