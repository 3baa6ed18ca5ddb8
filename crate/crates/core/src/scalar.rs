//! Exact integer scalars.
//!
//! Everything that does ring arithmetic (Smith normal form, Laurent
//! polynomials, quadratic forms) is written against [`IntScalar`] so that the
//! same code runs on machine integers for speed and on [`num_bigint::BigInt`]
//! when coefficients may grow without bound.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact, signed integer type usable as matrix or polynomial coefficient.
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
    fn int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("i64 fits every IntScalar")
    }

    fn to_big(&self) -> BigInt {
        BigInt::from_i128(self.to_i128().expect("IntScalar value fits i128"))
            .expect("i128 always converts")
    }
}

impl IntScalar for i32 {}
impl IntScalar for i64 {}
impl IntScalar for i128 {}

impl IntScalar for BigInt {
    fn int(v: i64) -> Self {
        BigInt::from(v)
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Converts between scalar types, panicking on overflow.
pub fn cast<S: IntScalar, T: IntScalar>(v: &S) -> T {
    let big = v.to_big();
    if let Some(t) = big.to_i128().and_then(T::from_i128) {
        return t;
    }
    // Only BigInt holds values this large.
    let any: &dyn std::any::Any = &big;
    any.downcast_ref::<T>().cloned().expect("value does not fit target scalar")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cast_round_trips() {
        let v: i64 = -12345;
        let b: BigInt = cast(&v);
        assert_eq!(b, BigInt::from(-12345));
        let back: i32 = cast(&b);
        assert_eq!(back, -12345);
    }

    #[test]
    fn big_to_big_keeps_huge_values() {
        let huge = BigInt::from(u128::MAX) * 7;
        let again: BigInt = cast(&huge);
        assert_eq!(again, huge);
    }
}
