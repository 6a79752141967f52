//! Exact-arithmetic analysis of quasiperiodic torus flows.
//!
//! Given a constant vector field on the n-torus whose frequencies span a real
//! algebraic number field (or are formally transcendental), this library
//! computes the multiplier group of the flow, its index in the unit group of
//! the ring of integers, explicit GL(n,Z) witness matrices, and affine
//! (semi)conjugacy witnesses between flows. Everything is computed over
//! arbitrary-precision rationals; there is no floating point anywhere.

pub mod conjugacy;
pub mod error;
pub mod exactmath;
pub mod lattice;
pub mod multiplier;
pub mod numberfield;
pub mod units;

pub use error::Error;

/// Arbitrary-precision rational scalar used throughout the crate.
/// Always reduced, denominator always positive.
pub type Rational = num_rational::BigRational;

#[cfg(test)]
pub(crate) mod testutil {
    use crate::exactmath::poly::IntPolynomial;
    use crate::numberfield::NumberField;
    use crate::Rational;
    use num_bigint::BigInt;

    pub fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Q(sqrt 3) presented by z^2 - 3 with the positive root.
    pub fn sqrt3_field() -> NumberField {
        NumberField::new(IntPolynomial::from_i64(&[-3, 0, 1]), (rat(1, 1), rat(2, 1))).unwrap()
    }

    /// Q(2^(1/3)) presented by z^3 - 2 with the real root.
    pub fn cbrt2_field() -> NumberField {
        NumberField::new(
            IntPolynomial::from_i64(&[-2, 0, 0, 1]),
            (rat(5, 4), rat(4, 3)),
        )
        .unwrap()
    }
}
