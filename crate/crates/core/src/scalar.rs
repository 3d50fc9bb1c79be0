//! Real scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar the matrices are built over: `f32` or `f64`.
///
/// The associated tolerances are the per-precision defaults used when a
/// caller does not supply its own [`Tolerance`](crate::Tolerance).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Default absolute tolerance.
    fn default_abs_tol() -> Self;
    /// Default relative tolerance.
    fn default_rel_tol() -> Self;
    /// Relative residual above which a closure candidate counts as a new
    /// independent direction.
    fn independence_threshold() -> Self;

    /// Converts an `f64` literal. Every value passed here is representable
    /// (possibly rounded) in both supported precisions.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn default_abs_tol() -> Self {
        1e-12
    }
    fn default_rel_tol() -> Self {
        1e-9
    }
    fn independence_threshold() -> Self {
        1e-8
    }
}

impl Real for f32 {
    fn default_abs_tol() -> Self {
        1e-5
    }
    fn default_rel_tol() -> Self {
        1e-4
    }
    fn independence_threshold() -> Self {
        1e-3
    }
}
