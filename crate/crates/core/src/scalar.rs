//! Coefficient scalars for the ordered-ring layer.
//!
//! Every value the library compares is built from a [`Scalar`]. The exact
//! instantiations (`BigRational`, `Rational64`) give exact answers; the float
//! instantiations exist for quick exploration and inherit the usual rounding.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Num + Signed + FromPrimitive + Send + Sync
{
    /// True when arithmetic on this type never rounds.
    const EXACT: bool;

    fn floor(&self) -> Self;
    fn ceil(&self) -> Self;
    fn is_integer(&self) -> bool;
    fn to_i64(&self) -> Option<i64>;
    /// Square root if it exists in the type (always for floats on non-negatives).
    fn exact_sqrt(&self) -> Option<Self>;
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn floor(&self) -> Self {
        BigRational::floor(self)
    }
    fn ceil(&self) -> Self {
        BigRational::ceil(self)
    }
    fn is_integer(&self) -> bool {
        BigRational::is_integer(self)
    }
    fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
    fn exact_sqrt(&self) -> Option<Self> {
        let n = int_sqrt(self.numer())?;
        let d = int_sqrt(self.denom())?;
        Some(BigRational::new(n, d))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

impl Scalar for Rational64 {
    const EXACT: bool = true;

    fn floor(&self) -> Self {
        Rational64::floor(self)
    }
    fn ceil(&self) -> Self {
        Rational64::ceil(self)
    }
    fn is_integer(&self) -> bool {
        Rational64::is_integer(self)
    }
    fn to_i64(&self) -> Option<i64> {
        self.is_integer().then(|| *self.numer())
    }
    fn exact_sqrt(&self) -> Option<Self> {
        let n = int_sqrt(&BigInt::from(*self.numer()))?.to_i64()?;
        let d = int_sqrt(&BigInt::from(*self.denom()))?.to_i64()?;
        Some(Rational64::new(n, d))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rational64::new(num, den)
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn floor(&self) -> Self {
                <$t>::floor(*self)
            }
            fn ceil(&self) -> Self {
                <$t>::ceil(*self)
            }
            fn is_integer(&self) -> bool {
                <$t>::fract(*self) == 0.0
            }
            fn to_i64(&self) -> Option<i64> {
                if Scalar::is_integer(self) {
                    ToPrimitive::to_i64(self)
                } else {
                    None
                }
            }
            fn exact_sqrt(&self) -> Option<Self> {
                (*self >= 0.0).then(|| <$t>::sqrt(*self))
            }
            fn from_ratio(num: i64, den: i64) -> Self {
                num as $t / den as $t
            }
        }
    };
}

float_scalar!(f64);
float_scalar!(f32);

/// Numerator/denominator pair used by the JSON formats.
pub fn ratio_parts(x: &BigRational) -> (BigInt, BigInt) {
    (x.numer().clone(), x.denom().clone())
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn half<S: Scalar>() -> S {
    S::one() / (S::one() + S::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sqrt() {
        let x = ratio(9, 4);
        assert_eq!(x.exact_sqrt(), Some(ratio(3, 2)));
        assert_eq!(ratio(2, 1).exact_sqrt(), None);
        assert_eq!(ratio(-1, 1).exact_sqrt(), None);
        assert_eq!(Rational64::new(25, 49).exact_sqrt(), Some(Rational64::new(5, 7)));
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(Scalar::floor(&ratio(-3, 2)), ratio(-2, 1));
        assert_eq!(Scalar::ceil(&ratio(-3, 2)), ratio(-1, 1));
        assert_eq!(Scalar::to_i64(&ratio(6, 3)), Some(2));
        assert_eq!(Scalar::to_i64(&2.5f64), None);
    }
}
