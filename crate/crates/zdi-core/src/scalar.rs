//! Generic real scalar for all numeric kernels.
//!
//! Everything in this crate is written against `Scalar` so the same code
//! runs in f32 and f64; the crate root exports concrete aliases.

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Real scalar type: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Lossless conversion from an `f64` literal, saturating on overflow.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal conversion")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Angle in `[0, 2π)` of a nonzero complex number (the paper-side `arg` convention).
pub fn arg_two_pi<T: Scalar>(z: num_complex::Complex<T>) -> T {
    let a = z.arg();
    if a < T::zero() {
        a + T::TAU()
    } else {
        a
    }
}

/// Normalize an angle into `[0, 2π)`.
pub fn wrap_two_pi<T: Scalar>(theta: T) -> T {
    let tau = T::TAU();
    let mut t = theta % tau;
    if t < T::zero() {
        t += tau;
    }
    // `%` may return exactly tau after the add when theta is a tiny negative.
    if t >= tau {
        t -= tau;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    #[test]
    fn arg_convention_is_zero_to_two_pi() {
        let z = Complex::new(0.0f64, -1.0);
        let a = arg_two_pi(z);
        assert!((a - 3.0 * std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!(arg_two_pi(Complex::new(1.0f64, 0.0)).abs() < 1e-15);
    }

    #[test]
    fn wrap_handles_negatives() {
        assert!((wrap_two_pi(-0.5f64) - (2.0 * std::f64::consts::PI - 0.5)).abs() < 1e-12);
        assert!(wrap_two_pi(7.0f64) < 2.0 * std::f64::consts::PI);
        assert_eq!(wrap_two_pi(0.0f64), 0.0);
    }
}
