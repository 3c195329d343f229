//! The coefficient-domain abstraction shared by series and tails.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;

pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `n!` as a rational.
pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Render as `num/den`, or just `num` for integers.
pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A commutative ring with a rational structure, enough for series and tail kernels.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero_r() -> Self;
    fn one_r() -> Self;
    fn is_zero_r(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn from_rational(r: &Rational) -> Self;

    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }
    fn scale(&self, r: &Rational) -> Self {
        self.times(&Self::from_rational(r))
    }
    /// Exact division when possible.
    fn try_div(&self, o: &Self) -> Option<Self>;

    fn pow_r(&self, e: u32) -> Self {
        let mut acc = Self::one_r();
        for _ in 0..e {
            acc = acc.times(self);
        }
        acc
    }
}

impl Ring for Rational {
    fn zero_r() -> Self {
        Zero::zero()
    }
    fn one_r() -> Self {
        One::one()
    }
    fn is_zero_r(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        if num_traits::Zero::is_zero(o) {
            None
        } else {
            Some(self / o)
        }
    }
}

/// Square root of a nonnegative rational that is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(factorial(0), q(1));
        assert_eq!(factorial(6), q(720));
        assert_eq!(binomial(6, 2), q(15));
        assert_eq!(binomial(2, 3), q(0));
    }

    #[test]
    fn rendering() {
        assert_eq!(render_rational(&qf(-2, 4)), "-1/2");
        assert_eq!(render_rational(&q(7)), "7");
    }

    #[test]
    fn sqrt_of_squares() {
        assert_eq!(rational_sqrt(&qf(9, 4)), Some(qf(3, 2)));
        assert_eq!(rational_sqrt(&q(2)), None);
        assert_eq!(rational_sqrt(&q(-4)), None);
    }
}
