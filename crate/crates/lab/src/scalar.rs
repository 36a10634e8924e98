//! Scalar abstraction: the same verification code runs in `f64` (fast,
//! tolerance-based) and in `BigRational` (exact) arithmetic.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};

/// Number type for the laboratory's numeric kernels.
///
/// `EXACT` distinguishes the two regimes: exact scalars compare against
/// literal zero, floating scalars against the tolerances in [`crate::tol`].
pub trait Scalar: Num + Signed + PartialOrd + Clone + Debug + Display {
    /// True when arithmetic is exact (no rounding anywhere).
    const EXACT: bool;

    fn from_int(v: i64) -> Self;

    /// Exact ratio `num/den`. Panics if `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Conversion from `f64`, exact where `Self` can represent every
    /// dyadic rational (every finite `f64` is one).
    fn from_f64(v: f64) -> Self;

    /// Lossy view for reporting; exact values may round.
    fn as_f64(&self) -> f64;

    /// `self^e` by repeated multiplication (exact where `Self` is exact).
    fn powi(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn as_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f32
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f32 / den as f32
    }

    fn from_f64(v: f64) -> Self {
        v as f32
    }

    fn as_f64(&self) -> f64 {
        f64::from(*self)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "cannot represent non-finite value");
        // Decompose v = sign * mantissa * 2^e exactly.
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let exponent = ((bits >> 52) & 0x7ff) as i64;
        let mantissa = if exponent == 0 {
            (bits & 0xf_ffff_ffff_ffff) << 1
        } else {
            (bits & 0xf_ffff_ffff_ffff) | 0x10_0000_0000_0000
        };
        let e = exponent - 1075; // 1023 bias + 52 mantissa bits
        let m = Self::from_int(sign * mantissa as i64);
        if e >= 0 {
            m * Self::from_int(2).powi(e as u32)
        } else {
            m / Self::from_int(2).powi((-e) as u32)
        }
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Pivot/zero threshold: literal zero in exact mode, a small epsilon in
/// float mode (well below every tolerance in [`crate::tol`]).
pub fn pivot_eps<S: Scalar>() -> S {
    if S::EXACT {
        S::zero()
    } else {
        S::from_ratio(1, 100_000_000_000_000)
    }
}
