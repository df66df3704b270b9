use std::fmt;

use super::{padd, FieldError, Val2, ValBound, ValuedField, DEFAULT_P1, DEFAULT_P2, EXACT, LS1};

/// Element of `F = 𝔽_q((t₁))((t₂))` known modulo `t₂^{prec}`.
///
/// Level `start + k` is `lv[k]`; levels below `start` and stored-range gaps up
/// to `prec` are exact zeros. Every stored level has its own `t₁`-precision.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LS2 {
    q: u32,
    start: i64,
    lv: Vec<LS1>,
    prec: i64,
}

impl LS2 {
    pub fn new(q: u32, start: i64, lv: Vec<LS1>, prec: i64) -> Self {
        let mut x = LS2 { q, start, lv, prec };
        x.normalize();
        x
    }

    pub fn exact_zero(q: u32) -> Self {
        LS2 { q, start: 0, lv: Vec::new(), prec: EXACT }
    }

    pub fn zero_to(q: u32, prec: i64) -> Self {
        LS2 { q, start: 0, lv: Vec::new(), prec }
    }

    pub fn one(q: u32) -> Self {
        Self::mono(q, 1, Val2::new(0, 0))
    }

    /// Exact `c·t₂^j·t₁^i`.
    pub fn mono(q: u32, c: u32, v: Val2) -> Self {
        Self::new(q, v.j, vec![LS1::mono(q, c, v.i)], EXACT)
    }

    /// `t₂^j·t₁^i`.
    pub fn t(q: u32, j: i64, i: i64) -> Self {
        Self::mono(q, 1, Val2::new(j, i))
    }

    /// Constant in `t₂`.
    pub fn embed(x: &LS1) -> Self {
        Self::new(x.q(), 0, vec![x.clone()], EXACT)
    }

    /// Builds from `(j, i, c)` triples; every level gets `t₁`-precision `p1`.
    pub fn from_terms(q: u32, terms: &[(i64, i64, i64)], p2: i64, p1: i64) -> Self {
        if terms.is_empty() {
            return Self::zero_to(q, p2);
        }
        let lo = terms.iter().map(|t| t.0).min().expect("non-empty");
        let hi = terms.iter().map(|t| t.0).max().expect("non-empty").max(lo);
        let top = if p2 >= EXACT { hi } else { hi.max(p2 - 1) };
        let lv = (lo..=top)
            .map(|j| {
                let ts: Vec<(i64, i64)> = terms.iter().filter(|t| t.0 == j).map(|t| (t.1, t.2)).collect();
                LS1::from_terms(q, &ts, p1)
            })
            .collect();
        Self::new(q, lo, lv, p2)
    }

    fn normalize(&mut self) {
        if self.prec < EXACT {
            let keep = (self.prec - self.start).clamp(0, self.lv.len() as i64) as usize;
            self.lv.truncate(keep);
        }
        while self.lv.last().is_some_and(|l| l.is_exact_zero()) {
            self.lv.pop();
        }
        let lead = self.lv.iter().position(|l| !l.is_exact_zero()).unwrap_or(self.lv.len());
        if lead > 0 {
            self.lv.drain(..lead);
            self.start += lead as i64;
        }
        if self.lv.is_empty() {
            self.start = 0;
        }
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT && self.lv.iter().all(LS1::is_exact)
    }

    /// Smallest `t₁`-precision among stored levels.
    pub fn prec1(&self) -> i64 {
        self.lv.iter().map(LS1::prec).min().unwrap_or(EXACT)
    }

    pub fn with_prec(&self, prec: i64) -> Self {
        let mut x = self.clone();
        x.prec = x.prec.min(prec);
        x.normalize();
        x
    }

    /// Caps the `t₁`-precision of every level at `p1`.
    pub fn with_prec1(&self, p1: i64) -> Self {
        Self::new(self.q, self.start, self.lv.iter().map(|l| l.with_prec(p1)).collect(), self.prec)
    }

    /// Coefficient of `t₂^j` in `F₁`.
    pub fn level(&self, j: i64) -> LS1 {
        if j >= self.prec {
            return LS1::zero_to(self.q, i64::MIN / 4);
        }
        if j < self.start {
            return LS1::exact_zero(self.q);
        }
        self.lv.get((j - self.start) as usize).cloned().unwrap_or_else(|| LS1::exact_zero(self.q))
    }

    /// Stored levels with their index.
    pub fn levels(&self) -> impl Iterator<Item = (i64, &LS1)> + '_ {
        self.lv.iter().enumerate().map(move |(k, l)| (self.start + k as i64, l))
    }

    /// Known nonzero terms `(j, i, c)`.
    pub fn terms(&self) -> Vec<(i64, i64, u32)> {
        self.levels().flat_map(|(j, l)| l.terms().map(move |(i, c)| (j, i, c))).collect()
    }

    pub fn has_nonzero(&self) -> bool {
        self.lv.iter().any(LS1::has_nonzero)
    }

    fn low(&self) -> i64 {
        if self.lv.is_empty() {
            self.prec
        } else {
            self.start
        }
    }

    /// `self · t₂^j t₁^i`.
    pub fn shift(&self, v: Val2) -> Self {
        LS2 { q: self.q, start: self.start + v.j, lv: self.lv.iter().map(|l| l.shift(v.i)).collect(), prec: padd(self.prec, v.j) }
    }

    fn combine(&self, o: &Self, sign: bool) -> Self {
        assert_eq!(self.q, o.q, "characteristic mismatch");
        let prec = self.prec.min(o.prec);
        if self.lv.is_empty() && o.lv.is_empty() {
            return Self::zero_to(self.q, prec);
        }
        let lo = self.low().min(o.low());
        let hi = (self.start + self.lv.len() as i64).max(o.start + o.lv.len() as i64).min(prec.max(lo));
        let lv = (lo..hi)
            .map(|j| {
                let (a, b) = (self.level(j), o.level(j));
                if sign {
                    a.add(&b)
                } else {
                    a.sub(&b)
                }
            })
            .collect();
        Self::new(self.q, lo, lv, prec)
    }

    fn mul_ls(&self, o: &Self) -> Self {
        assert_eq!(self.q, o.q, "characteristic mismatch");
        let q = self.q;
        let prec = padd(self.prec, o.low()).min(padd(o.prec, self.low()));
        if self.lv.is_empty() || o.lv.is_empty() {
            return Self::zero_to(q, prec);
        }
        let start = self.start + o.start;
        let full = self.lv.len() + o.lv.len() - 1;
        let len = if prec >= EXACT { full } else { ((prec - start).max(0) as usize).min(full) };
        let mut lv = vec![LS1::exact_zero(q); len];
        for (a, x) in self.lv.iter().enumerate() {
            if x.is_exact_zero() || a >= len {
                continue;
            }
            for (b, y) in o.lv.iter().enumerate().take(len - a) {
                if !y.is_exact_zero() {
                    lv[a + b] = lv[a + b].add(&x.mul(y));
                }
            }
        }
        Self::new(q, start, lv, prec)
    }

    /// Inverse with explicit caps for exact non-monomial inputs.
    pub fn inv_capped(&self, p2: i64, p1: i64) -> Result<Self, FieldError> {
        let q = self.q;
        let (l, lead) = match self.levels().find(|(_, x)| !x.is_exact_zero()) {
            None if self.is_exact_zero() => return Err(FieldError::ZeroDivision),
            None => return Err(FieldError::ZeroToPrecision),
            Some((l, x)) if x.has_nonzero() => (l, x.clone()),
            Some(_) => {
                return Err(if self.has_nonzero() { FieldError::PrecisionExhausted } else { FieldError::ZeroToPrecision });
            }
        };
        let li = lead.inv_capped(p1)?;
        let li2 = Self::embed(&li);
        // x = t₂^ℓ·x_ℓ·(1 + y)
        let y = self.shift(Val2::new(-l, 0)).mul(&li2).sub(&Self::one(q));
        let rel = if self.prec >= EXACT { p2 } else { self.prec - l };
        let geo = if y.lv.is_empty() && y.prec >= EXACT {
            Self::one(q)
        } else {
            let y = y.with_prec(rel.max(1));
            let mut s = Self::one(q).with_prec(rel.max(1));
            for _ in 0..rel.max(1) {
                s = Self::one(q).sub(&y.mul(&s));
            }
            s
        };
        Ok(geo.mul(&li2).shift(Val2::new(-l, 0)))
    }

    /// Element of `𝒪 = F₁[[t₂]]` when no negative level can be nonzero.
    pub fn in_scr_of(&self) -> Result<bool, FieldError> {
        for (j, l) in self.levels() {
            if j >= 0 {
                break;
            }
            if l.has_nonzero() {
                return Ok(false);
            }
            if !l.is_exact_zero() {
                return Err(FieldError::PrecisionExhausted);
            }
        }
        Ok(true)
    }

    /// Element of the valuation ring `𝒪_F = {v ≥ 0}`.
    pub fn in_of(&self) -> Result<bool, FieldError> {
        self.val_bound().ge(Val2::new(0, 0))
    }

    /// Image in `F₁` under `𝒪 → 𝒪/t₂𝒪`.
    pub fn residue_to_f1(&self) -> Result<LS1, FieldError> {
        if !self.in_scr_of()? {
            return Err(FieldError::NotInScrOF);
        }
        if self.prec <= 0 {
            return Err(FieldError::PrecisionExhausted);
        }
        Ok(self.level(0))
    }
}

impl ValuedField for LS2 {
    type V = Val2;

    fn q(&self) -> u32 {
        self.q
    }
    fn zero_like(&self) -> Self {
        Self::exact_zero(self.q)
    }
    fn one_like(&self) -> Self {
        Self::one(self.q)
    }
    fn monomial_like(&self, c: u32, v: Val2) -> Self {
        Self::mono(self.q, c, v)
    }
    fn is_exact_zero(&self) -> bool {
        self.lv.is_empty() && self.prec >= EXACT
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
        LS2 { q: self.q, start: self.start, lv: self.lv.iter().map(LS1::neg).collect(), prec: self.prec }
    }
    fn inv(&self) -> Result<Self, FieldError> {
        self.inv_capped(DEFAULT_P2, DEFAULT_P1)
    }
    fn val_bound(&self) -> ValBound<Val2> {
        for (j, l) in self.levels() {
            match l.val_bound() {
                ValBound::Infinite => continue,
                ValBound::Exact(i) => return ValBound::Exact(Val2::new(j, i)),
                ValBound::AtLeast(p1) => return ValBound::AtLeast(Val2::new(j, p1)),
            }
        }
        if self.prec >= EXACT {
            ValBound::Infinite
        } else {
            ValBound::AtLeast(Val2::new(self.prec, i64::MIN / 4))
        }
    }
    fn leading_coeff(&self) -> Result<u32, FieldError> {
        let v = self.val_bound().exact()?;
        self.level(v.j).leading_coeff()
    }
    fn eq_to_precision(&self, o: &Self) -> bool {
        !self.sub(o).has_nonzero()
    }
}

impl fmt::Display for LS2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, l) in self.levels() {
            if l.is_exact_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "({l})")?,
                1 => write!(f, "({l})*t2")?,
                _ => write!(f, "({l})*t2^{j}")?,
            }
        }
        if self.prec < EXACT {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "O(t2^{})", self.prec)?;
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

    fn s(terms: &[(i64, i64, i64)]) -> LS2 {
        LS2::from_terms(5, terms, 6, 12)
    }

    #[test]
    fn valuation_is_lex_leading_term() {
        assert_eq!(s(&[(1, -3, 2), (0, 4, 1)]).val(), Ok(Val2::new(0, 4)));
        assert_eq!(s(&[(-1, 7, 1)]).val(), Ok(Val2::new(-1, 7)));
        assert_eq!(LS2::zero_to(5, 3).val_bound(), ValBound::AtLeast(Val2::new(3, i64::MIN / 4)));
    }

    #[test]
    fn inverse_round_trip() {
        let x = s(&[(0, 0, 2), (0, 1, 1), (1, -2, 3), (2, 0, 1)]);
        let y = x.inv().unwrap();
        let p = x.mul(&y);
        assert!(p.eq_to_precision(&LS2::one(5)));
        assert!(p.prec() >= 6);
        let z = s(&[(-1, 2, 1), (0, 0, 4)]);
        let w = z.inv().unwrap();
        assert_eq!(w.val(), Ok(Val2::new(1, -2)));
        assert!(z.mul(&w).eq_to_precision(&LS2::one(5)));
    }

    #[test]
    fn exact_monomials_stay_exact() {
        let x = LS2::t(5, 2, -1);
        let y = x.inv().unwrap();
        assert!(y.is_exact());
        assert_eq!(x.mul(&y), LS2::one(5));
    }

    #[test]
    fn undetermined_leading_level_refuses() {
        let x = LS2::new(5, 0, vec![LS1::zero_to(5, 4), LS1::one(5)], 6);
        assert_eq!(x.inv(), Err(FieldError::PrecisionExhausted));
        assert_eq!(x.val_bound(), ValBound::AtLeast(Val2::new(0, 4)));
        assert_eq!(LS2::zero_to(5, 6).inv(), Err(FieldError::ZeroToPrecision));
    }

    #[test]
    fn residue_and_membership() {
        let x = s(&[(0, -3, 1), (1, 0, 2)]);
        assert_eq!(x.in_scr_of(), Ok(true));
        assert_eq!(x.in_of(), Ok(false));
        assert_eq!(x.residue_to_f1().unwrap(), LS1::from_terms(5, &[(-3, 1)], 12));
        let y = s(&[(-1, 5, 1)]);
        assert_eq!(y.residue_to_f1(), Err(FieldError::NotInScrOF));
        assert_eq!(s(&[(0, 1, 1), (1, -9, 1)]).in_of(), Ok(true));
    }

    #[test]
    fn residue_is_a_ring_map() {
        let (x, y) = (s(&[(0, 1, 2), (1, 0, 1)]), s(&[(0, -1, 3), (2, 2, 4)]));
        let rx = x.residue_to_f1().unwrap();
        let ry = y.residue_to_f1().unwrap();
        assert!(x.mul(&y).residue_to_f1().unwrap().eq_to_precision(&rx.mul(&ry)));
        assert!(x.add(&y).residue_to_f1().unwrap().eq_to_precision(&rx.add(&ry)));
    }
}
