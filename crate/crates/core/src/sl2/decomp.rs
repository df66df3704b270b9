use std::cmp::Ordering;

use super::elim::{Elim, Entry, Side};
use super::{Mat2, Sl2Error, SL2};
use crate::hlf::{FieldError, Val2, ValBound, Valuation, ValuedField, LS2};
use crate::weyl::WeylElement;

/// `ν̂`: `diag(x, x⁻¹) ↦ τ_{−2v(x)}`, `[[0, x], [·, 0]] ↦ −1 ∘ τ_{−2v(x)}`.
///
/// Translations are stored in coroot units, one entry per level, `ω₁` first.
pub fn nu_monomial<F: ValuedField>(m: &Mat2<F>) -> Result<WeylElement, Sl2Error> {
    if !m.is_monomial() {
        return Err(Sl2Error::NotMonomial);
    }
    let (sign, x) = if m.b.is_exact_zero() { (1, &m.a) } else { (-1, &m.b) };
    let v = x.val()?;
    Ok(WeylElement { fin: vec![vec![sign]], trans: vec![v.omega_coords().iter().map(|e| -e).collect()] })
}

fn vcmp<F: ValuedField>(x: &F, y: &F) -> Result<Ordering, FieldError> {
    x.val_bound().cmp(&y.val_bound())
}

/// Compares `t₂`-levels only.
fn level_bound(x: &LS2) -> ValBound<i64> {
    match x.val_bound() {
        ValBound::Exact(v) => ValBound::Exact(v.j),
        ValBound::AtLeast(v) => ValBound::AtLeast(v.j),
        ValBound::Infinite => ValBound::Infinite,
    }
}

fn lcmp(x: &LS2, y: &LS2) -> Result<Ordering, FieldError> {
    match (level_bound(x), level_bound(y)) {
        // A level that is zero to t₁-precision may still be the leading level.
        (ValBound::AtLeast(a), ValBound::Exact(b)) if a == b => Err(FieldError::PrecisionExhausted),
        (ValBound::Exact(a), ValBound::AtLeast(b)) if a == b => Err(FieldError::PrecisionExhausted),
        (a, b) => a.cmp(&b),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Bruhat<F> {
    pub b: Mat2<F>,
    pub n: Mat2<F>,
    pub b2: Mat2<F>,
    pub label: WeylElement,
}

impl<F: ValuedField> Bruhat<F> {
    pub fn product(&self) -> Mat2<F> {
        self.b.mul(&self.n).mul(&self.b2)
    }
}

/// `g = b·n·b′` with `b, b′` in the Iwahori subgroup.
pub fn bruhat_decompose<F: ValuedField>(g: &Mat2<F>) -> Result<Bruhat<F>, Sl2Error> {
    use Entry::*;
    use Side::*;
    let mut e = Elim::new(g);
    if vcmp(&g.c, &g.a)? == Ordering::Greater {
        e.kill(Left, C)?;
        let (a, b) = (e.m.a.clone(), e.m.b.clone());
        if vcmp(&b, &a)? != Ordering::Less {
            e.kill(Right, B)?;
        } else if a.mul(&b).val_bound().ge(F::V::zero())? {
            e.kill(Left, B)?;
        } else {
            e.kill(Right, A)?;
            e.kill(Left, D)?;
        }
    } else {
        e.kill(Left, A)?;
        let (c, d) = (e.m.c.clone(), e.m.d.clone());
        if vcmp(&d, &c)? != Ordering::Less {
            e.kill(Right, D)?;
        } else if d.mul(&c).val_bound().ge(F::V::t1())? {
            e.kill(Left, D)?;
        } else {
            e.kill(Right, C)?;
            e.kill(Left, B)?;
        }
    }
    e.normalize(Right, false)?;
    let label = nu_monomial(&e.m)?;
    Ok(Bruhat { b: e.l, n: e.m, b2: e.r, label })
}

pub fn cell_of<F: ValuedField>(g: &Mat2<F>) -> Result<WeylElement, Sl2Error> {
    Ok(bruhat_decompose(g)?.label)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cartan<F: ValuedField> {
    pub k: Mat2<F>,
    pub m: F::V,
    pub k2: Mat2<F>,
}

impl<F: ValuedField> Cartan<F> {
    pub fn middle(&self) -> Mat2<F> {
        Mat2::diag_t(&self.k.a, self.m)
    }

    pub fn product(&self) -> Mat2<F> {
        self.k.mul(&self.middle()).mul(&self.k2)
    }
}

/// `g = k·diag(t^m, t^{−m})·k′` with `m ≥ 0`.
pub fn cartan_decompose<F: ValuedField>(g: &Mat2<F>) -> Result<Cartan<F>, Sl2Error> {
    let mut e = Elim::new(g);
    // Lex-least valuation, ties toward d then a.
    let order = [Entry::D, Entry::A, Entry::B, Entry::C];
    let mut best = Entry::D;
    for &cand in &order[1..] {
        if vcmp(e.get(cand), e.get(best))? == Ordering::Less {
            best = cand;
        }
    }
    match best {
        Entry::A => {
            e.swap_rows();
            e.swap_cols();
        }
        Entry::B => e.swap_rows(),
        Entry::C => e.swap_cols(),
        Entry::D => {}
    }
    e.kill(Side::Right, Entry::C)?;
    e.kill(Side::Left, Entry::B)?;
    e.normalize(Side::Right, true)?;
    let m = e.m.a.val()?;
    Ok(Cartan { k: e.l, m, k2: e.r })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KapranovPair {
    /// `B·N·S₁`
    P01,
    /// `S₁·N·S₂`
    P12,
}

impl std::str::FromStr for KapranovPair {
    type Err = Sl2Error;
    fn from_str(s: &str) -> Result<Self, Sl2Error> {
        match s.replace([' ', '(', ')'], "").as_str() {
            "0,1" | "01" => Ok(KapranovPair::P01),
            "1,2" | "12" => Ok(KapranovPair::P12),
            _ => Err(Sl2Error::Malformed(format!("unknown Kapranov pair {s}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Kapranov {
    pub pair: KapranovPair,
    pub left: SL2,
    pub n: SL2,
    pub right: SL2,
}

impl Kapranov {
    pub fn product(&self) -> SL2 {
        self.left.mul(&self.n).mul(&self.right)
    }
}

pub fn kapranov_decompose(g: &SL2, pair: KapranovPair) -> Result<Kapranov, Sl2Error> {
    use Entry::*;
    use Side::*;
    let mut e = Elim::new(g);
    match pair {
        KapranovPair::P01 => {
            if lcmp(&g.c, &g.d)? == Ordering::Greater {
                e.kill(Right, C)?;
            } else {
                e.kill(Right, D)?;
            }
            let (a, b, c) = (e.m.a.clone(), e.m.b.clone(), e.m.c.clone());
            if c.is_exact_zero() {
                if a.mul(&b).val_bound().ge(Val2::zero())? {
                    e.kill(Left, B)?;
                } else if lcmp(&b, &a)? != Ordering::Less {
                    e.kill(Right, B)?;
                } else {
                    e.kill(Right, A)?;
                    e.kill(Left, D)?;
                }
            } else if vcmp(&a, &c)? != Ordering::Less {
                e.kill(Left, A)?;
            } else if lcmp(&a, &b)? == Ordering::Greater {
                e.kill(Right, A)?;
            } else {
                e.kill(Left, C)?;
                e.kill(Right, B)?;
            }
            e.normalize(Right, false)?;
        }
        KapranovPair::P12 => {
            if lcmp(&g.c, &g.a)? == Ordering::Greater {
                e.kill(Left, C)?;
                e.kill(Right, B)?;
            } else {
                e.kill(Left, A)?;
                e.kill(Right, D)?;
            }
            e.normalize(Left, false)?;
        }
    }
    Ok(Kapranov { pair, left: e.l, n: e.m, right: e.r })
}
