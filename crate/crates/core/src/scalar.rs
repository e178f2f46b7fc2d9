use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point type the engine computes in.
///
/// Both `f32` and `f64` qualify. The type must represent `+∞`, which the
/// engine uses to mark unsolved runs, so rationals are not supported.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from the `f64` values the parser produces.
    fn from_f64_lossy(value: f64) -> Self {
        <Self as FromPrimitive>::from_f64(value).unwrap_or_else(Self::nan)
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `count / total` computed in this scalar type; `0` when `total` is zero.
    fn fraction(count: usize, total: usize) -> Self {
        if total == 0 {
            return Self::zero();
        }
        let n = <Self as FromPrimitive>::from_usize(count).unwrap_or_else(Self::nan);
        let d = <Self as FromPrimitive>::from_usize(total).unwrap_or_else(Self::nan);
        n / d
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
