//! Scalar abstraction for the operator and statevector layer.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real floating-point type usable as the component type of complex amplitudes.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Every `Real` in use (f32, f64) accepts any finite f64.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Magnitude below which merged operator coefficients are discarded.
    fn merge_tolerance() -> Self;
}

impl Real for f64 {
    #[inline]
    fn merge_tolerance() -> Self {
        1e-14
    }
}

impl Real for f32 {
    #[inline]
    fn merge_tolerance() -> Self {
        1e-6
    }
}
