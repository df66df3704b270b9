use std::fmt;
use std::str::FromStr;

use super::{Mat2, Sl2Error, SL2};
use crate::hlf::{FieldError, Val2, ValBound, Valuation, ValuedField, LS2};

/// `v(x) = 0`.
pub(crate) fn is_unit<F: ValuedField>(x: &F) -> Result<bool, FieldError> {
    match x.val_bound() {
        ValBound::Exact(v) => Ok(v == F::V::zero()),
        ValBound::Infinite => Ok(false),
        ValBound::AtLeast(b) if b > F::V::zero() => Ok(false),
        ValBound::AtLeast(_) => Err(FieldError::PrecisionExhausted),
    }
}

/// Iwahori subgroup `[[O^×, O], [t₁O, O^×]]`.
pub fn in_iwahori<F: ValuedField>(g: &Mat2<F>) -> Result<bool, FieldError> {
    Ok(is_unit(&g.a)?
        && is_unit(&g.d)?
        && g.b.val_bound().ge(F::V::zero())?
        && g.c.val_bound().ge(F::V::t1())?
        && g.det_is_one())
}

/// `SL₂` of the valuation ring.
pub fn in_k<F: ValuedField>(g: &Mat2<F>) -> Result<bool, FieldError> {
    for x in g.entries() {
        if !x.val_bound().ge(F::V::zero())? {
            return Ok(false);
        }
    }
    Ok(g.det_is_one())
}

pub fn in_n<F: ValuedField>(g: &Mat2<F>) -> bool {
    g.is_monomial() && g.det_is_one()
}

/// `x ∈ t₂^k·𝒪_F`.
fn level_at_least(x: &LS2, k: i64) -> Result<bool, FieldError> {
    x.shift(Val2::new(-k, 0)).in_scr_of()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subgroup {
    B,
    N,
    K,
    S1,
    S2,
    H,
}

impl Subgroup {
    pub fn contains(self, g: &SL2) -> Result<bool, FieldError> {
        match self {
            Subgroup::B => in_iwahori(g),
            Subgroup::N => Ok(in_n(g)),
            Subgroup::K => in_k(g),
            Subgroup::H => Ok(in_n(g) && in_iwahori(g)?),
            Subgroup::S1 => Ok(is_unit(&g.a)?
                && is_unit(&g.d)?
                && level_at_least(&g.b, 0)?
                && level_at_least(&g.c, 1)?
                && g.det_is_one()),
            Subgroup::S2 => {
                let one = LS2::one(g.a.q());
                Ok(g.a.eq_to_precision(&one) && g.d.eq_to_precision(&one) && !g.c.has_nonzero() && g.c.prec() > 0)
            }
        }
    }
}

impl FromStr for Subgroup {
    type Err = Sl2Error;
    fn from_str(s: &str) -> Result<Self, Sl2Error> {
        match s {
            "B" => Ok(Subgroup::B),
            "N" => Ok(Subgroup::N),
            "K" => Ok(Subgroup::K),
            "S1" => Ok(Subgroup::S1),
            "S2" => Ok(Subgroup::S2),
            "H" => Ok(Subgroup::H),
            _ => Err(Sl2Error::Malformed(format!("unknown subgroup {s}"))),
        }
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators() {
        let one = LS2::one(5);
        let id = Mat2::identity(&one);
        for h in [Subgroup::B, Subgroup::N, Subgroup::K, Subgroup::S1, Subgroup::S2, Subgroup::H] {
            assert_eq!(h.contains(&id), Ok(true), "{h}");
        }
        let s = Mat2::s(&one);
        assert_eq!(Subgroup::K.contains(&s), Ok(true));
        assert_eq!(Subgroup::B.contains(&s), Ok(false));
        let w2 = Mat2::antidiag(LS2::t(5, -1, 0).neg()).unwrap();
        assert_eq!(Subgroup::N.contains(&w2), Ok(true));
        assert_eq!(Subgroup::K.contains(&w2), Ok(false));
        let low = Mat2::lower(LS2::t(5, 0, 1));
        assert_eq!(Subgroup::B.contains(&low), Ok(true));
        assert_eq!(Subgroup::S1.contains(&low), Ok(false));
        let low2 = Mat2::lower(LS2::t(5, 1, -7));
        assert_eq!(Subgroup::S1.contains(&low2), Ok(true));
        assert_eq!(Subgroup::B.contains(&low2), Ok(true));
        let up = Mat2::upper(LS2::t(5, -3, 0));
        assert_eq!(Subgroup::S2.contains(&up), Ok(true));
        assert_eq!(Subgroup::S1.contains(&up), Ok(false));
    }
}
