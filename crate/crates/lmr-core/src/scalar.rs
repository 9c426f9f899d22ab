//! Scalar abstraction for the generic numerics.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::Float;

/// Floating-point scalar the core linear algebra is generic over.
///
/// Constants are obtained with `F::from(x).unwrap()` (via `NumCast`, which
/// `Float` implies); this is exact for every literal used in the crate.
pub trait Scalar:
    Float + AddAssign + SubAssign + MulAssign + DivAssign + Sum<Self> + Debug + Display + 'static
{
    /// Shorthand for converting an `f64` constant.
    #[inline]
    fn c(x: f64) -> Self {
        Self::from(x).expect("scalar constant conversion")
    }

    /// Shorthand for converting a `usize` count.
    #[inline]
    fn cu(x: usize) -> Self {
        Self::from(x).expect("scalar count conversion")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
