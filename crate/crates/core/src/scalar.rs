use num_traits::{Float, FloatConst, FromPrimitive};
use std::fmt::Debug;

/// Scalar bound for the closed-form frame mathematics (f32 or f64).
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// ħ in the requested precision.
pub fn hbar<T: Real>() -> T {
    T::lit(crate::HBAR)
}
