use std::fmt;

use super::{fp, padd, FieldError, ValBound, ValuedField, DEFAULT_P1, EXACT};

/// Element of `𝔽_q((t₁))` known modulo `t₁^{prec}`.
///
/// Coefficients are stored densely from `start`; the first and last stored
/// coefficients are nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LS1 {
    q: u32,
    start: i64,
    c: Vec<u32>,
    prec: i64,
}

impl LS1 {
    pub fn new(q: u32, start: i64, c: Vec<u32>, prec: i64) -> Self {
        let mut x = LS1 { q, start, c: c.into_iter().map(|v| v % q).collect(), prec };
        x.normalize();
        x
    }

    pub fn exact_zero(q: u32) -> Self {
        LS1 { q, start: 0, c: Vec::new(), prec: EXACT }
    }

    /// `O(t₁^{prec})`.
    pub fn zero_to(q: u32, prec: i64) -> Self {
        LS1 { q, start: 0, c: Vec::new(), prec }
    }

    pub fn one(q: u32) -> Self {
        Self::mono(q, 1, 0)
    }

    /// Exact `c·t₁^i`.
    pub fn mono(q: u32, c: u32, i: i64) -> Self {
        Self::new(q, i, vec![c], EXACT)
    }

    /// Builds from `(exponent, coefficient)` pairs.
    pub fn from_terms(q: u32, terms: &[(i64, i64)], prec: i64) -> Self {
        if terms.is_empty() {
            return Self::zero_to(q, prec);
        }
        let lo = terms.iter().map(|t| t.0).min().expect("non-empty");
        let hi = terms.iter().map(|t| t.0).max().expect("non-empty");
        let mut c = vec![0u32; (hi - lo + 1) as usize];
        for &(e, v) in terms {
            let k = (e - lo) as usize;
            c[k] = fp::add(q, c[k], fp::from_i64(q, v));
        }
        Self::new(q, lo, c, prec)
    }

    fn normalize(&mut self) {
        if self.prec < EXACT {
            let keep = (self.prec - self.start).clamp(0, self.c.len() as i64) as usize;
            self.c.truncate(keep);
        }
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        let lead = self.c.iter().position(|&v| v != 0).unwrap_or(self.c.len());
        if lead > 0 {
            self.c.drain(..lead);
            self.start += lead as i64;
        }
        if self.c.is_empty() {
            self.start = 0;
        }
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }

    pub fn with_prec(&self, prec: i64) -> Self {
        let mut x = self.clone();
        x.prec = x.prec.min(prec);
        x.normalize();
        x
    }

    /// Coefficient of `t₁^i` (zero outside the stored range).
    pub fn coeff(&self, i: i64) -> u32 {
        if i < self.start {
            return 0;
        }
        self.c.get((i - self.start) as usize).copied().unwrap_or(0)
    }

    /// Known nonzero terms in increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.c.iter().enumerate().filter(|(_, &v)| v != 0).map(move |(k, &v)| (self.start + k as i64, v))
    }

    pub fn has_nonzero(&self) -> bool {
        !self.c.is_empty()
    }

    /// Lowest exponent that might carry a nonzero coefficient.
    pub(crate) fn low(&self) -> i64 {
        if self.c.is_empty() {
            self.prec
        } else {
            self.start
        }
    }

    pub fn scale(&self, k: u32) -> Self {
        let q = self.q;
        Self::new(q, self.start, self.c.iter().map(|&v| fp::mul(q, v, k)).collect(), self.prec)
    }

    /// `self · t₁^e`.
    pub fn shift(&self, e: i64) -> Self {
        LS1 { q: self.q, start: self.start + e, c: self.c.clone(), prec: padd(self.prec, e) }
    }

    fn combine(&self, o: &Self, sign: bool) -> Self {
        assert_eq!(self.q, o.q, "characteristic mismatch");
        let q = self.q;
        let prec = self.prec.min(o.prec);
        if o.c.is_empty() {
            return self.with_prec(prec);
        }
        if self.c.is_empty() {
            let r = if sign { o.clone() } else { o.neg_ls() };
            return r.with_prec(prec);
        }
        let start = self.start.min(o.start);
        let end = (self.start + self.c.len() as i64).max(o.start + o.c.len() as i64).min(prec.max(start));
        let mut c = vec![0u32; (end - start).max(0) as usize];
        for (k, slot) in c.iter_mut().enumerate() {
            let e = start + k as i64;
            let b = o.coeff(e);
            *slot = fp::add(q, self.coeff(e), if sign { b } else { fp::neg(q, b) });
        }
        Self::new(q, start, c, prec)
    }

    fn neg_ls(&self) -> Self {
        let q = self.q;
        LS1 { q, start: self.start, c: self.c.iter().map(|&v| fp::neg(q, v)).collect(), prec: self.prec }
    }

    fn mul_ls(&self, o: &Self) -> Self {
        assert_eq!(self.q, o.q, "characteristic mismatch");
        let q = self.q;
        let prec = padd(self.prec, o.low()).min(padd(o.prec, self.low()));
        if self.c.is_empty() || o.c.is_empty() {
            return Self::zero_to(q, prec);
        }
        let start = self.start + o.start;
        let full = self.c.len() + o.c.len() - 1;
        let len = if prec >= EXACT { full } else { ((prec - start).max(0) as usize).min(full) };
        let mut acc = vec![0u64; len];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 || i >= len {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate().take(len - i) {
                acc[i + j] += a as u64 * b as u64;
            }
        }
        let c = acc.into_iter().map(|v| (v % q as u64) as u32).collect();
        Self::new(q, start, c, prec)
    }

    /// Inverse; exact non-monomial inputs are truncated at relative precision `cap`.
    pub fn inv_capped(&self, cap: i64) -> Result<Self, FieldError> {
        let q = self.q;
        if self.c.is_empty() {
            return Err(if self.is_exact() { FieldError::ZeroDivision } else { FieldError::ZeroToPrecision });
        }
        let m = self.start;
        let c0inv = fp::inv(q, self.c[0]);
        if self.is_exact() && self.c.len() == 1 {
            return Ok(Self::mono(q, c0inv, -m));
        }
        let rel = if self.is_exact() { cap } else { self.prec - m };
        let rel = rel.max(1) as usize;
        let mut y = vec![0u32; rel];
        y[0] = c0inv;
        for k in 1..rel {
            let mut s = 0u64;
            for l in 1..=k.min(self.c.len() - 1) {
                s += self.c[l] as u64 * y[k - l] as u64;
            }
            y[k] = fp::mul(q, fp::neg(q, (s % q as u64) as u32), c0inv);
        }
        Ok(Self::new(q, -m, y, -m + rel as i64))
    }
}

impl ValuedField for LS1 {
    type V = i64;

    fn q(&self) -> u32 {
        self.q
    }
    fn zero_like(&self) -> Self {
        Self::exact_zero(self.q)
    }
    fn one_like(&self) -> Self {
        Self::one(self.q)
    }
    fn monomial_like(&self, c: u32, v: i64) -> Self {
        Self::mono(self.q, c, v)
    }
    fn is_exact_zero(&self) -> bool {
        self.c.is_empty() && self.is_exact()
    }
    fn add(&self, o: &Self) -> Self {
        self.combine(o, true)
    }
    fn sub(&self, o: &Self) -> Self {
        self.combine(o, false)
    }
    fn mul(&self, o: &Self) -> Self {
        self.mul_ls(o)
    }
    fn neg(&self) -> Self {
        self.neg_ls()
    }
    fn inv(&self) -> Result<Self, FieldError> {
        self.inv_capped(DEFAULT_P1)
    }
    fn val_bound(&self) -> ValBound<i64> {
        if !self.c.is_empty() {
            ValBound::Exact(self.start)
        } else if self.is_exact() {
            ValBound::Infinite
        } else {
            ValBound::AtLeast(self.prec)
        }
    }
    fn leading_coeff(&self) -> Result<u32, FieldError> {
        match self.val_bound() {
            ValBound::Exact(_) => Ok(self.c[0]),
            ValBound::AtLeast(_) => Err(FieldError::PrecisionExhausted),
            ValBound::Infinite => Err(FieldError::ZeroToPrecision),
        }
    }
    fn eq_to_precision(&self, o: &Self) -> bool {
        !self.sub(o).has_nonzero()
    }
}

impl fmt::Display for LS1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t1")?,
                _ => write!(f, "{c}*t1^{e}")?,
            }
        }
        if !self.is_exact() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "O(t1^{})", self.prec)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let x = LS1::from_terms(5, &[(0, 1), (1, -1)], EXACT);
        let y = x.inv().unwrap();
        assert_eq!(y.prec(), DEFAULT_P1);
        assert!((0..DEFAULT_P1).all(|i| y.coeff(i) == 1));
        assert!(x.mul(&y).eq_to_precision(&LS1::one(5)));
    }

    #[test]
    fn precision_bookkeeping() {
        let x = LS1::from_terms(5, &[(-2, 3), (0, 1)], 6);
        let y = LS1::from_terms(5, &[(1, 2)], 4);
        let p = x.mul(&y);
        // min(6 + 1, 4 − 2)
        assert_eq!(p.prec(), 2);
        assert_eq!(p.val_bound(), ValBound::Exact(-1));
        let s = x.add(&y);
        assert_eq!(s.prec(), 4);
        let inv = x.inv().unwrap();
        // relative precision 6 − (−2) = 8 from exponent 2
        assert_eq!(inv.prec(), 10);
        assert!(x.mul(&inv).eq_to_precision(&LS1::one(5)));
    }

    #[test]
    fn monomials_invert_exactly() {
        let x = LS1::mono(7, 3, -4);
        let y = x.inv().unwrap();
        assert!(y.is_exact());
        assert_eq!(x.mul(&y), LS1::one(7));
    }

    #[test]
    fn zero_handling() {
        assert_eq!(LS1::exact_zero(5).inv(), Err(FieldError::ZeroDivision));
        assert_eq!(LS1::zero_to(5, 3).inv(), Err(FieldError::ZeroToPrecision));
        assert_eq!(LS1::zero_to(5, 3).val_bound(), ValBound::AtLeast(3));
        let x = LS1::from_terms(5, &[(0, 1)], 4);
        assert!(x.sub(&x).val_bound() == ValBound::AtLeast(4));
    }

    #[test]
    fn truncation_drops_high_terms() {
        let x = LS1::from_terms(5, &[(0, 1), (5, 2)], 3);
        assert_eq!(x.coeff(5), 0);
        assert_eq!(format!("{x}"), "1 + O(t1^3)");
    }
}
