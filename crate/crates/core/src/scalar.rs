//! Scalar traits shared by the generic kernels.
//!
//! Lattice algorithms are written against [`IntScalar`] so they run over
//! machine integers (`i64`, `i128`) as well as [`num_bigint::BigInt`]. Dense
//! univariate polynomials are written against [`Field`], implemented for
//! exact rationals and for cyclotomic numbers.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Integer type usable as a lattice entry.
pub trait IntScalar:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + Hash
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn from_i64(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("integer out of range")
    }

    fn to_bigint(&self) -> BigInt;

    /// Panics when the value does not fit.
    fn from_bigint_checked(v: &BigInt) -> Self;
}

impl IntScalar for i64 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn from_bigint_checked(v: &BigInt) -> Self {
        v.to_i64().expect("integer does not fit in i64")
    }
}

impl IntScalar for i128 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn from_bigint_checked(v: &BigInt) -> Self {
        v.to_i128().expect("integer does not fit in i128")
    }
}

impl IntScalar for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }

    fn from_bigint_checked(v: &BigInt) -> Self {
        v.clone()
    }
}

/// Exact field arithmetic.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Send
    + Sync
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_integer(v: i64) -> Self;
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_integer(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}
