//! Floating point abstraction shared by the generic modules.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real scalar the spectra and closed forms are computed in: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Smallest representable value strictly greater than `self`.
    fn next_up(self) -> Self;

    /// Lossy conversion from an `f64` literal or sample.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 is representable in every Scalar")
    }

    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count is representable in every Scalar")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("Scalar converts to f64")
    }
}

impl Scalar for f32 {
    #[inline]
    fn next_up(self) -> Self {
        f32::next_up(self)
    }
}

impl Scalar for f64 {
    #[inline]
    fn next_up(self) -> Self {
        f64::next_up(self)
    }
}
