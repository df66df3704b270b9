//! Truncated arithmetic in `F = 𝔽_q((t₁))((t₂))` and its residue field `F₁ = 𝔽_q((t₁))`.
//!
//! Both [`LS1`] and [`LS2`] carry absolute precision: an [`LS1`] is known
//! modulo `t₁^{prec}` and an [`LS2`] modulo `t₂^{prec}`, with every stored
//! level carrying its own `t₁`-precision. Levels below the stored range are
//! exact zeros. Precision [`EXACT`] marks an exactly known value.
//!
//! `q` must be a prime below `2¹⁶` so that coefficient products accumulate in
//! `u64` without overflow.

mod json;
mod ls1;
mod ls2;
mod random;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

pub use json::{ls2_from_json, ls2_to_json};
pub use ls1::LS1;
pub use ls2::LS2;
pub use random::{random_ls1, random_series, random_unit, rng_from_seed, SeriesSpec};

/// Precision value meaning "known exactly".
pub const EXACT: i64 = i64::MAX / 4;
pub const DEFAULT_Q: u32 = 5;
pub const DEFAULT_P1: i64 = 12;
pub const DEFAULT_P2: i64 = 6;

/// Saturating precision addition.
pub(crate) fn padd(a: i64, b: i64) -> i64 {
    if a >= EXACT || b >= EXACT {
        EXACT
    } else {
        (a + b).min(EXACT)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("precision exhausted")]
    PrecisionExhausted,
    #[error("division by zero")]
    ZeroDivision,
    #[error("value is zero to the tracked precision")]
    ZeroToPrecision,
    #[error("element is not in the discrete valuation ring")]
    NotInScrOF,
    #[error("characteristic mismatch ({0} vs {1})")]
    FieldMismatch(u32, u32),
    #[error("q = {0} is not a prime below 65536")]
    BadQ(u32),
    #[error("malformed series: {0}")]
    Malformed(String),
}

pub fn check_q(q: u32) -> Result<u32, FieldError> {
    let prime = q >= 2 && q < 65536 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0);
    if prime {
        Ok(q)
    } else {
        Err(FieldError::BadQ(q))
    }
}

pub(crate) mod fp {
    pub fn add(q: u32, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % q as u64) as u32
    }
    pub fn neg(q: u32, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            q - a
        }
    }
    pub fn mul(q: u32, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % q as u64) as u32
    }
    pub fn inv(q: u32, a: u32) -> u32 {
        assert!(a % q != 0, "inverse of zero in F_q");
        let (mut base, mut e, mut acc) = (a as u64 % q as u64, q as u64 - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % q as u64;
            }
            base = base * base % q as u64;
            e >>= 1;
        }
        acc as u32
    }
    pub fn from_i64(q: u32, x: i64) -> u32 {
        x.rem_euclid(q as i64) as u32
    }
}

/// Rank-2 valuation `(j, i) ↔ jω₂ + iω₁`, ordered lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Val2 {
    pub j: i64,
    pub i: i64,
}

impl Val2 {
    pub const fn new(j: i64, i: i64) -> Self {
        Val2 { j, i }
    }
}

impl Add for Val2 {
    type Output = Val2;
    fn add(self, o: Val2) -> Val2 {
        Val2::new(self.j + o.j, self.i + o.i)
    }
}

impl Sub for Val2 {
    type Output = Val2;
    fn sub(self, o: Val2) -> Val2 {
        Val2::new(self.j - o.j, self.i - o.i)
    }
}

impl Neg for Val2 {
    type Output = Val2;
    fn neg(self) -> Val2 {
        Val2::new(-self.j, -self.i)
    }
}

impl fmt::Display for Val2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.j, self.i)
    }
}

/// Value group of a [`ValuedField`].
pub trait Valuation: Copy + Ord + fmt::Debug + Send + Sync + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self> {
    fn zero() -> Self;
    /// Valuation of `t₁`, the least positive element.
    fn t1() -> Self;
    /// Coefficients on `ω₁, ω₂, …`.
    fn omega_coords(&self) -> Vec<i64>;
}

impl Valuation for Val2 {
    fn zero() -> Self {
        Val2::new(0, 0)
    }
    fn t1() -> Self {
        Val2::new(0, 1)
    }
    fn omega_coords(&self) -> Vec<i64> {
        vec![self.i, self.j]
    }
}

impl Valuation for i64 {
    fn zero() -> Self {
        0
    }
    fn t1() -> Self {
        1
    }
    fn omega_coords(&self) -> Vec<i64> {
        vec![*self]
    }
}

/// What the tracked precision says about a valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValBound<V> {
    Exact(V),
    /// Every known coefficient below this valuation vanishes; nothing more is known.
    AtLeast(V),
    /// Exact zero.
    Infinite,
}

impl<V: Valuation> ValBound<V> {
    /// Decides `v(x) ≥ v0`.
    pub fn ge(&self, v0: V) -> Result<bool, FieldError> {
        match *self {
            ValBound::Infinite => Ok(true),
            ValBound::Exact(v) => Ok(v >= v0),
            ValBound::AtLeast(b) if b >= v0 => Ok(true),
            ValBound::AtLeast(_) => Err(FieldError::PrecisionExhausted),
        }
    }

    pub fn exact(&self) -> Result<V, FieldError> {
        match *self {
            ValBound::Exact(v) => Ok(v),
            ValBound::AtLeast(_) => Err(FieldError::PrecisionExhausted),
            ValBound::Infinite => Err(FieldError::ZeroToPrecision),
        }
    }

    /// Decides the order of two valuations, `Infinite` being the largest.
    pub fn cmp(&self, o: &Self) -> Result<Ordering, FieldError> {
        use ValBound::*;
        match (*self, *o) {
            (Infinite, Infinite) => Ok(Ordering::Equal),
            (Infinite, Exact(_)) => Ok(Ordering::Greater),
            (Exact(_), Infinite) => Ok(Ordering::Less),
            (Exact(a), Exact(b)) => Ok(a.cmp(&b)),
            (AtLeast(a), Exact(b)) if a > b => Ok(Ordering::Greater),
            (Exact(a), AtLeast(b)) if b > a => Ok(Ordering::Less),
            _ => Err(FieldError::PrecisionExhausted),
        }
    }
}

/// Field operations shared by `F` and `F₁`, enough to run one elimination engine on both.
pub trait ValuedField: Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync {
    type V: Valuation;

    fn q(&self) -> u32;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// Exact `c·t^v`.
    fn monomial_like(&self, c: u32, v: Self::V) -> Self;
    fn is_exact_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, FieldError>;
    fn val_bound(&self) -> ValBound<Self::V>;
    /// Leading coefficient when the leading term is known.
    fn leading_coeff(&self) -> Result<u32, FieldError>;
    /// `self − o` has no known nonzero coefficient.
    fn eq_to_precision(&self, o: &Self) -> bool;

    fn val(&self) -> Result<Self::V, FieldError> {
        self.val_bound().exact()
    }

    fn div(&self, o: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&o.inv()?))
    }

    /// Splits `x = u·t^v` with `u` a unit.
    fn unit_part(&self) -> Result<(Self, Self::V), FieldError> {
        let v = self.val()?;
        let u = self.mul(&self.monomial_like(1, -v));
        Ok((u, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_check() {
        assert_eq!(check_q(5), Ok(5));
        assert_eq!(check_q(65521), Ok(65521));
        assert!(check_q(4).is_err());
        assert!(check_q(1).is_err());
        assert!(check_q(65537).is_err());
    }

    #[test]
    fn fp_inverse() {
        for q in [2u32, 3, 5, 7, 101] {
            for a in 1..q {
                assert_eq!(fp::mul(q, a, fp::inv(q, a)), 1);
            }
        }
    }

    #[test]
    fn val2_is_lex() {
        assert!(Val2::new(0, 100) < Val2::new(1, -100));
        assert!(Val2::new(-1, 5) < Val2::new(0, 0));
        assert_eq!(Val2::new(2, -3).omega_coords(), vec![-3, 2]);
    }

    #[test]
    fn bounds_decide_or_refuse() {
        let b = ValBound::AtLeast(Val2::new(0, 12));
        assert_eq!(b.ge(Val2::new(0, 0)), Ok(true));
        assert_eq!(b.ge(Val2::new(1, 0)), Err(FieldError::PrecisionExhausted));
        assert_eq!(b.cmp(&ValBound::Exact(Val2::new(0, 3))), Ok(Ordering::Greater));
        assert_eq!(ValBound::<Val2>::Infinite.ge(Val2::new(9, 9)), Ok(true));
    }
}
