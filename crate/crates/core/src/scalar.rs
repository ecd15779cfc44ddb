//! Scalar abstraction shared by every numerical kernel.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

use crate::linalg::DenseLinalg;

/// Real scalar the solver is generic over (`f32`, `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum
    + DenseLinalg
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion of an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    /// Conversion of a small integer.
    #[inline]
    fn int(n: i64) -> Self {
        Self::from_i64(n).expect("representable integer")
    }

    /// Euler-Mascheroni constant.
    #[inline]
    fn euler_gamma() -> Self {
        Self::lit(0.577_215_664_901_532_860_606_512_090_082_402_43)
    }

    /// Convergence floor for iterative schemes: `max(4 eps, 1e-15)`.
    #[inline]
    fn iteration_tolerance() -> Self {
        let four_eps = Self::epsilon() * Self::lit(4.0);
        four_eps.max(Self::lit(1e-15))
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `(-1)^n` for an integer exponent.
#[inline]
pub fn parity_sign<T: Real>(n: i64) -> T {
    if n.rem_euclid(2) == 0 {
        T::one()
    } else {
        -T::one()
    }
}
