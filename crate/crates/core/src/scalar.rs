//! Scalar abstractions.
//!
//! [`Scalar`] is what the linear algebra and the price solvers need: field
//! arithmetic, an ordering for pivot selection and a conversion to `f64`
//! for reporting. It is implemented for `f32`, `f64` and [`BigRational`],
//! so every price system can be solved exactly when the coefficients are
//! fractions. [`Real`] adds `num_traits::Float` for the iterative parts
//! (power iteration, root bracketing) that only make sense in floating point.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Float, FromPrimitive, Num, ToPrimitive, Zero};

pub trait Scalar:
    Clone + Debug + PartialOrd + Num + Neg<Output = Self> + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Relative pivot threshold below which a factorization is declared singular.
    fn pivot_tolerance() -> Self;

    /// Absolute value (named to avoid clashing with `Float::abs`).
    fn magnitude(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn from_ratio(ratio: &Ratio<i64>) -> Self;

    fn lossy_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("finite value")
    }
}

impl Scalar for f64 {
    fn pivot_tolerance() -> Self {
        1e-12
    }

    fn magnitude(&self) -> Self {
        self.abs()
    }

    fn from_ratio(ratio: &Ratio<i64>) -> Self {
        *ratio.numer() as f64 / *ratio.denom() as f64
    }

    fn lossy_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn pivot_tolerance() -> Self {
        1e-6
    }

    fn magnitude(&self) -> Self {
        self.abs()
    }

    fn from_ratio(ratio: &Ratio<i64>) -> Self {
        (*ratio.numer() as f64 / *ratio.denom() as f64) as f32
    }
}

impl Scalar for BigRational {
    fn pivot_tolerance() -> Self {
        BigRational::zero()
    }

    fn from_ratio(ratio: &Ratio<i64>) -> Self {
        BigRational::new(BigInt::from(*ratio.numer()), BigInt::from(*ratio.denom()))
    }
}

/// Floating-point scalars.
pub trait Real: Scalar + Float {}

impl Real for f32 {}
impl Real for f64 {}

/// Converts a value between scalar types through `f64`.
pub fn cast<S: Scalar, T: Scalar>(x: &S) -> T {
    T::from_f64_lossy(x.lossy_f64())
}
