//! Scalar abstractions.
//!
//! Numerical code is generic over [`Real`] (implemented for `f32` and `f64`).
//! Spectral coefficients are generic over [`Coefficient`], which additionally
//! admits exact rationals such as [`Rational`].

use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{Float, FloatConst, FromPrimitive, Num, NumAssign, ToPrimitive};

pub type Rational = Ratio<i64>;

pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Default + Debug + Display + Send + Sync + 'static
{
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("float literal")
    }

    fn from_rational(x: &Rational) -> Self {
        Self::lit(*x.numer() as f64) / Self::lit(*x.denom() as f64)
    }
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + NumAssign + Default + Debug + Display + Send + Sync + 'static
{
}

/// Field used for series amplitudes and areas.
pub trait Coefficient:
    Clone + PartialEq + Num + FromPrimitive + ToPrimitive + Debug + Send + Sync + 'static
{
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_u64_exact(n: u64) -> Self {
        Self::from_u64(n).expect("integer fits coefficient type")
    }

    fn is_negative_or_zero(&self) -> bool {
        self.to_f64_lossy() <= 0.0
    }
}

impl<T> Coefficient for T where
    T: Clone + PartialEq + Num + FromPrimitive + ToPrimitive + Debug + Send + Sync + 'static
{
}

pub(crate) fn pow_int<S: Coefficient>(base: &S, exp: i64) -> S {
    let mut acc = S::one();
    for _ in 0..exp.unsigned_abs() {
        acc = acc * base.clone();
    }
    if exp < 0 {
        S::one() / acc
    } else {
        acc
    }
}
