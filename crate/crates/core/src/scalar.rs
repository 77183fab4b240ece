//! Exact integer scalars.
//!
//! Every computation in this crate is carried out over an exact signed
//! integer type. [`num_bigint::BigInt`] is the default (see the aliases at
//! the crate root); `i64` and `i128` work as well when the inputs are small
//! enough that intermediate determinants cannot overflow.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer usable as a lattice coordinate.
pub trait Scalar:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_int(value: i64) -> Self {
        Self::from_i64(value).expect("i64 fits in every scalar type")
    }

    fn from_count(value: u64) -> Self {
        Self::from_u64(value).expect("count does not fit in scalar type")
    }

    /// Lossless conversion to `i64`, `None` on overflow.
    fn to_small(&self) -> Option<i64> {
        self.to_i64()
    }
}

impl<T> Scalar for T where
    T: Integer
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
}

/// Binomial coefficient with the convention `C(a, b) = 0` for `b > a` or
/// `b < 0`; negative `a` is never needed.
pub fn binomial<T: Scalar>(a: i64, b: i64) -> T {
    if b < 0 || a < 0 || b > a {
        return T::zero();
    }
    let b = b.min(a - b);
    let mut acc = T::one();
    for i in 0..b {
        acc = acc * T::from_int(a - i);
        acc = acc / T::from_int(i + 1);
    }
    acc
}

/// `(-1)^e` as a scalar.
pub fn sign<T: Scalar>(e: i64) -> T {
    if e.rem_euclid(2) == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// Gcd of a slice, zero for an all-zero (or empty) slice.
pub fn gcd_all<T: Scalar>(values: &[T]) -> T {
    values.iter().fold(T::zero(), |acc, v| acc.gcd(v))
}

/// Divides by the gcd; the zero vector is returned unchanged.
pub fn make_primitive<T: Scalar>(values: &mut [T]) -> T {
    let g = gcd_all(values);
    if !g.is_zero() && !g.is_one() {
        for v in values.iter_mut() {
            *v = v.clone() / g.clone();
        }
    }
    g
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial::<i64>(5, 2), 10);
        assert_eq!(binomial::<i64>(2, 3), 0);
        assert_eq!(binomial::<i64>(0, 0), 1);
        assert_eq!(binomial::<BigInt>(40, 20), BigInt::from(137846528820u64));
    }

    #[test]
    fn primitive_vectors() {
        let mut v = vec![4i64, -6, 8];
        assert_eq!(make_primitive(&mut v), 2);
        assert_eq!(v, vec![2, -3, 4]);
        let mut z = vec![0i64, 0];
        assert_eq!(make_primitive(&mut z), 0);
    }
}
