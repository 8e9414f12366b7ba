//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar the simulator can run on.
///
/// Tolerances are carried per type so the same checks stay meaningful in
/// single precision. The f64 values are the ones the library is specified
/// against; f32 gets loosened bounds matching its ~1e-7 unit roundoff.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Bound for construction-time invariants (Hermiticity, unit trace, PSD).
    const CONSTRUCT_TOL: f64;
    /// Bound for quantities derived through one more layer of arithmetic.
    const DERIVED_TOL: f64;
    /// Bound for normalization of probability vectors.
    const PROB_TOL: f64;

    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn construct_tol() -> Self {
        Self::lit(Self::CONSTRUCT_TOL)
    }

    #[inline]
    fn derived_tol() -> Self {
        Self::lit(Self::DERIVED_TOL)
    }

    #[inline]
    fn prob_tol() -> Self {
        Self::lit(Self::PROB_TOL)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const CONSTRUCT_TOL: f64 = 1e-10;
    const DERIVED_TOL: f64 = 1e-9;
    const PROB_TOL: f64 = 1e-9;
}

impl Real for f32 {
    const CONSTRUCT_TOL: f64 = 1e-5;
    const DERIVED_TOL: f64 = 1e-4;
    const PROB_TOL: f64 = 1e-5;
}
