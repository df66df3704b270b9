//! Elimination keeping `g = l·m·r`.
//!
//! Each step clears one entry of `m` by an elementary row or column operation.
//! The cleared entry is set to an exact zero and its partner (the entry that
//! the same operation changes) is recomputed from `det m = 1`. Cancellation
//! inside a truncated series can never be certified, so this is what keeps the
//! middle factor exactly monomial.

use super::Mat2;
use crate::hlf::{FieldError, ValuedField};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Entry {
    A,
    B,
    C,
    D,
}

impl Entry {
    fn pos(self) -> (usize, usize) {
        match self {
            Entry::A => (0, 0),
            Entry::B => (0, 1),
            Entry::C => (1, 0),
            Entry::D => (1, 1),
        }
    }

    fn at(r: usize, c: usize) -> Entry {
        match (r, c) {
            (0, 0) => Entry::A,
            (0, 1) => Entry::B,
            (1, 0) => Entry::C,
            _ => Entry::D,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Side {
    Left,
    Right,
}

fn get<F>(m: &Mat2<F>, e: Entry) -> &F {
    match e {
        Entry::A => &m.a,
        Entry::B => &m.b,
        Entry::C => &m.c,
        Entry::D => &m.d,
    }
}

fn set<F>(m: &mut Mat2<F>, e: Entry, x: F) {
    match e {
        Entry::A => m.a = x,
        Entry::B => m.b = x,
        Entry::C => m.c = x,
        Entry::D => m.d = x,
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Elim<F> {
    pub l: Mat2<F>,
    pub m: Mat2<F>,
    pub r: Mat2<F>,
}

impl<F: ValuedField> Elim<F> {
    pub fn new(g: &Mat2<F>) -> Self {
        let id = Mat2::identity(&g.a);
        Elim { l: id.clone(), m: g.clone(), r: id }
    }

    pub fn get(&self, e: Entry) -> &F {
        get(&self.m, e)
    }

    /// Clears `target` with a row operation (`Left`) or a column operation (`Right`).
    pub fn kill(&mut self, side: Side, target: Entry) -> Result<(), FieldError> {
        let t = self.get(target).clone();
        if t.is_exact_zero() {
            return Ok(());
        }
        let (r, c) = target.pos();
        let (pivot, partner) = match side {
            Side::Left => (Entry::at(1 - r, c), Entry::at(r, 1 - c)),
            Side::Right => (Entry::at(r, 1 - c), Entry::at(1 - r, c)),
        };
        let x = t.div(self.get(pivot))?.neg();
        // Row op on row r uses upper(x) for r = 0; column op on column c uses upper(x) for c = 1.
        let upper = match side {
            Side::Left => r == 0,
            Side::Right => c == 1,
        };
        let e_inv = if upper { Mat2::upper(x.neg()) } else { Mat2::lower(x.neg()) };
        match side {
            Side::Left => self.l = self.l.mul(&e_inv),
            Side::Right => self.r = e_inv.mul(&self.r),
        }
        let diagonal = matches!(target, Entry::A | Entry::D);
        let p = if diagonal {
            let other = if matches!(partner, Entry::B) { Entry::C } else { Entry::B };
            self.get(other).inv()?.neg()
        } else {
            let other = if matches!(partner, Entry::A) { Entry::D } else { Entry::A };
            self.get(other).inv()?
        };
        set(&mut self.m, target, t.zero_like());
        set(&mut self.m, partner, p);
        Ok(())
    }

    /// Replaces a diagonal or antidiagonal `m` by the exact monomial with the
    /// same leading terms (coefficient 1 when `monic`), moving the unit part to `side`.
    pub fn normalize(&mut self, side: Side, monic: bool) -> Result<(), FieldError> {
        let diagonal = self.m.b.is_exact_zero() && self.m.c.is_exact_zero();
        let x = if diagonal { self.m.a.clone() } else { self.m.b.clone() };
        let v = x.val()?;
        let c0 = if monic { 1 } else { x.leading_coeff()? };
        let lead = x.monomial_like(c0, v);
        let u = x.div(&lead)?;
        let n = if diagonal { Mat2::diag(lead)? } else { Mat2::antidiag(lead)? };
        self.m = n;
        if u == u.one_like() {
            return Ok(());
        }
        // diagonal: m = U·n = n·U with U = diag(u, u⁻¹); antidiagonal: m = diag(u, u⁻¹)·n = n·diag(u⁻¹, u).
        let ui = u.inv()?;
        let unit = match (diagonal, side) {
            (true, _) | (false, Side::Left) => Mat2::new(u.clone(), u.zero_like(), u.zero_like(), ui),
            (false, Side::Right) => Mat2::new(ui, u.zero_like(), u.zero_like(), u.clone()),
        };
        match side {
            Side::Left => self.l = self.l.mul(&unit),
            Side::Right => self.r = unit.mul(&self.r),
        }
        Ok(())
    }

    /// Left and right multiply by `s = [[0,1],[−1,0]]`-type swaps.
    pub fn swap_rows(&mut self) {
        let s = Mat2::s(&self.m.a);
        // m ← s·m, l ← l·s⁻¹
        self.m = s.mul(&self.m);
        self.l = self.l.mul(&s.inv());
    }

    pub fn swap_cols(&mut self) {
        let s = Mat2::s(&self.m.a);
        self.m = self.m.mul(&s);
        self.r = s.inv().mul(&self.r);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hlf::LS2;

    fn s(t: &[(i64, i64, i64)]) -> LS2 {
        LS2::from_terms(5, t, 6, 12)
    }

    #[test]
    fn kills_keep_the_factorization() {
        let (a, b, c) = (s(&[(0, 0, 2), (1, 1, 1)]), s(&[(0, -1, 3)]), s(&[(0, 2, 1), (2, 0, 4)]));
        let d = LS2::one(5).add(&b.mul(&c)).div(&a).unwrap();
        let g = Mat2::new(a, b, c, d);
        for (side, e) in [(Side::Left, Entry::C), (Side::Right, Entry::B), (Side::Left, Entry::A), (Side::Right, Entry::D)] {
            let mut el = Elim::new(&g);
            el.kill(side, e).unwrap();
            assert!(el.get(e).is_exact_zero());
            assert!(el.l.mul(&el.m).mul(&el.r).eq_to_precision(&g), "{side:?} {e:?}");
        }
    }

    #[test]
    fn normalize_extracts_leading_monomial() {
        let a = s(&[(0, 1, 3), (1, 0, 1)]);
        let g = Mat2::diag(a).unwrap();
        for side in [Side::Left, Side::Right] {
            let mut el = Elim::new(&g);
            el.normalize(side, false).unwrap();
            assert_eq!(el.m.a, LS2::mono(5, 3, crate::hlf::Val2::new(0, 1)));
            assert!(el.l.mul(&el.m).mul(&el.r).eq_to_precision(&g));
        }
    }
}
