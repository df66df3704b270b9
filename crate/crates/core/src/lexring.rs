//! The ordered ring `S[ω₂, …, ω_n]` used as a computable model of the
//! n-fold hyper-real line.
//!
//! `ωⱼ` is larger than every polynomial in `ω₂, …, ωⱼ₋₁` with coefficients in
//! `S`, so a polynomial is positive exactly when the coefficient of its largest
//! monomial is positive. `ω₁` is the unit and is stored as the empty monomial.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LexError {
    #[error("negative radicand in square-root comparison")]
    NegativeRadicand,
    #[error("malformed value: {0}")]
    Malformed(String),
}

/// Exponent vector; slot `k` holds the exponent of `ω_{k+2}`. Trailing zeros
/// are trimmed so the empty vector is the constant monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_exps(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    /// Monomial `ωⱼ` (`j ≥ 1`, `ω₁ = 1`).
    pub fn omega(j: usize) -> Self {
        assert!(j >= 1, "omega index starts at 1");
        if j == 1 {
            return Self::one();
        }
        let mut e = vec![0; j - 1];
        e[j - 2] = 1;
        Monomial(e)
    }

    /// Exponent of `ωⱼ` for `j ≥ 2`.
    pub fn exp(&self, j: usize) -> u32 {
        if j < 2 {
            return 0;
        }
        self.0.get(j - 2).copied().unwrap_or(0)
    }

    /// Largest `j` with a positive exponent, or 1 for the constant monomial.
    pub fn top_variable(&self) -> usize {
        if self.0.is_empty() {
            1
        } else {
            self.0.len() + 1
        }
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Self) -> Self {
        let len = self.0.len().max(other.0.len());
        let e = (0..len)
            .map(|k| self.0.get(k).copied().unwrap_or(0) + other.0.get(k).copied().unwrap_or(0))
            .collect();
        Monomial(e)
    }

    /// Exponents listed highest variable first, padded to `ω_n`.
    pub fn exps_desc(&self, n: usize) -> Vec<u32> {
        (2..=n).rev().map(|j| self.exp(j)).collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of `S[ω₂, …, ω_n]` with the lexicographic order.
#[derive(Clone, Debug, PartialEq)]
pub struct LexPoly<S> {
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> LexPoly<S> {
    pub fn zero() -> Self {
        LexPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(S::from_int(c))
    }

    pub fn omega(j: usize) -> Self {
        Self::term(Monomial::omega(j), S::one())
    }

    pub fn term(m: Monomial, c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LexPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, S)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &S)> {
        self.terms.iter().next_back()
    }

    pub fn signum(&self) -> Ordering {
        match self.leading() {
            None => Ordering::Equal,
            Some((_, c)) => c.partial_cmp(&S::zero()).expect("comparable coefficient"),
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn scale(&self, k: &S) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LexPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * k.clone())).collect(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Largest `j` such that `ωⱼ` occurs, or 1 for constants.
    pub fn level(&self) -> usize {
        self.terms.keys().map(Monomial::top_variable).max().unwrap_or(1)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// The value as a degree ≤ 1 element, if it is one.
    pub fn to_linlex(&self, n: usize) -> Option<LinLex<S>> {
        let mut out = LinLex::zero(n);
        for (m, c) in &self.terms {
            match m.degree() {
                0 => out.coeffs[0] = c.clone(),
                1 => {
                    let j = m.top_variable();
                    if j > n {
                        return None;
                    }
                    out.coeffs[j - 1] = c.clone();
                }
                _ => return None,
            }
        }
        Some(out)
    }

    pub fn square(&self) -> Self {
        self * self
    }
}

/// Total order on `S[ω₂, …, ω_n]`: the sign of `p − q`.
pub fn lex_cmp<S: Scalar>(p: &LexPoly<S>, q: &LexPoly<S>) -> Ordering {
    (p - q).signum()
}

/// Level of a value: the largest `j` with `ωⱼ` present (1 for reals).
pub fn level_of<S: Scalar>(p: &LexPoly<S>) -> usize {
    p.level()
}

impl<S: Scalar> PartialOrd for LexPoly<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(lex_cmp(self, other))
    }
}

impl<S: Scalar> Add for &LexPoly<S> {
    type Output = LexPoly<S>;
    fn add(self, rhs: Self) -> LexPoly<S> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<S: Scalar> Neg for &LexPoly<S> {
    type Output = LexPoly<S>;
    fn neg(self) -> LexPoly<S> {
        LexPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl<S: Scalar> Sub for &LexPoly<S> {
    type Output = LexPoly<S>;
    fn sub(self, rhs: Self) -> LexPoly<S> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<S: Scalar> Mul for &LexPoly<S> {
    type Output = LexPoly<S>;
    fn mul(self, rhs: Self) -> LexPoly<S> {
        let mut out = LexPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($ty:ident, $($tr:ident $f:ident),*) => {$(
        impl<S: Scalar> $tr for $ty<S> {
            type Output = $ty<S>;
            fn $f(self, rhs: Self) -> $ty<S> {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(LexPoly, Add add, Sub sub, Mul mul);

impl<S: Scalar> Neg for LexPoly<S> {
    type Output = LexPoly<S>;
    fn neg(self) -> LexPoly<S> {
        -&self
    }
}

impl<S: Scalar> fmt::Display for LexPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for j in (2..=m.top_variable()).rev() {
                match m.exp(j) {
                    0 => {}
                    1 => write!(f, "·ω{j}")?,
                    e => write!(f, "·ω{j}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

/// `Σ rᵢωᵢ` for `i = 1..n`; slot 0 is the real part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinLex<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> LinLex<S> {
    pub fn zero(n: usize) -> Self {
        LinLex { coeffs: vec![S::zero(); n] }
    }

    pub fn new(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "LinLex needs at least the real slot");
        LinLex { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| S::from_int(c)).collect())
    }

    /// Real constant embedded at level `n`.
    pub fn real(n: usize, r: S) -> Self {
        let mut v = Self::zero(n);
        v.coeffs[0] = r;
        v
    }

    pub fn omega(n: usize, j: usize) -> Self {
        let mut v = Self::zero(n);
        v.coeffs[j - 1] = S::one();
        v
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `ωⱼ`, `j` from 1.
    pub fn at(&self, j: usize) -> &S {
        &self.coeffs[j - 1]
    }

    pub fn set(&mut self, j: usize, v: S) {
        self.coeffs[j - 1] = v;
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_integer)
    }

    pub fn scale(&self, k: &S) -> Self {
        LinLex { coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect() }
    }

    pub fn to_poly(&self) -> LexPoly<S> {
        LexPoly::from_terms(
            self.coeffs.iter().enumerate().map(|(i, c)| (Monomial::omega(i + 1), c.clone())),
        )
    }

    pub fn mul_poly(&self, other: &Self) -> LexPoly<S> {
        &self.to_poly() * &other.to_poly()
    }

    /// Lexicographic comparison reading `ω_n` first.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.n(), other.n(), "level mismatch");
        for (a, b) in self.coeffs.iter().zip(&other.coeffs).rev() {
            match a.partial_cmp(b).expect("comparable coefficients") {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    pub fn signum(&self) -> Ordering {
        self.lex_cmp(&Self::zero(self.n()))
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    pub fn level(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).map_or(1, |i| i + 1)
    }

    /// Same value with all `ωⱼ`, `j ≥ 2`, coefficients dropped.
    pub fn real_part(&self) -> S {
        self.coeffs[0].clone()
    }

    pub fn max(&self, other: &Self) -> Self {
        if self.lex_cmp(other) == Ordering::Less {
            other.clone()
        } else {
            self.clone()
        }
    }

    pub fn min(&self, other: &Self) -> Self {
        if self.lex_cmp(other) == Ordering::Greater {
            other.clone()
        } else {
            self.clone()
        }
    }
}

impl<S: Scalar> Add for &LinLex<S> {
    type Output = LinLex<S>;
    fn add(self, rhs: Self) -> LinLex<S> {
        assert_eq!(self.n(), rhs.n(), "level mismatch");
        LinLex {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<S: Scalar> Sub for &LinLex<S> {
    type Output = LinLex<S>;
    fn sub(self, rhs: Self) -> LinLex<S> {
        assert_eq!(self.n(), rhs.n(), "level mismatch");
        LinLex {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<S: Scalar> Neg for &LinLex<S> {
    type Output = LinLex<S>;
    fn neg(self) -> LinLex<S> {
        LinLex { coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }
}

impl<S: Scalar> Add for LinLex<S> {
    type Output = LinLex<S>;
    fn add(self, rhs: Self) -> LinLex<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for LinLex<S> {
    type Output = LinLex<S>;
    fn sub(self, rhs: Self) -> LinLex<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Neg for LinLex<S> {
    type Output = LinLex<S>;
    fn neg(self) -> LinLex<S> {
        -&self
    }
}

impl<S: Scalar> fmt::Display for LinLex<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// Formal `√radicand` with a non-negative radicand.
#[derive(Clone, Debug, PartialEq)]
pub struct SqrtExpr<S> {
    radicand: LexPoly<S>,
}

impl<S: Scalar> SqrtExpr<S> {
    pub fn new(radicand: LexPoly<S>) -> Result<Self, LexError> {
        if radicand.is_negative() {
            return Err(LexError::NegativeRadicand);
        }
        Ok(SqrtExpr { radicand })
    }

    pub fn radicand(&self) -> &LexPoly<S> {
        &self.radicand
    }

    /// The non-negative `L` with `L² = radicand`, when such an `L` has degree ≤ 1.
    pub fn as_linlex(&self, n: usize) -> Option<LinLex<S>> {
        perfect_square_root(&self.radicand, n)
    }

    pub fn cmp_sqrt(&self, other: &Self) -> Ordering {
        lex_cmp(&self.radicand, &other.radicand)
    }
}

/// Non-negative degree ≤ 1 square root of `p`, if one exists.
pub fn perfect_square_root<S: Scalar>(p: &LexPoly<S>, n: usize) -> Option<LinLex<S>> {
    if p.is_negative() {
        return None;
    }
    if p.is_zero() {
        return Some(LinLex::zero(n));
    }
    let top = p.level();
    if top > n {
        return None;
    }
    let mut root = LinLex::zero(n);
    let (lead_m, lead_c) = p.leading()?;
    // Leading monomial of L² is the square of L's leading monomial.
    let j = lead_m.top_variable();
    if lead_m.degree() != if j == 1 { 0 } else { 2 } || (j > 1 && lead_m.exp(j) != 2) {
        return None;
    }
    let r = lead_c.exact_sqrt()?;
    let two_r = r.clone() + r.clone();
    root.set(j, r);
    for i in 1..j {
        let m = Monomial::omega(j).mul(&Monomial::omega(i));
        root.set(i, p.coeff(&m) / two_r.clone());
    }
    (root.mul_poly(&root) == *p).then_some(root)
}

/// Exact order of `√α + √β` against `√γ`.
pub fn sqrt_sum_cmp<S: Scalar>(
    a: &SqrtExpr<S>,
    b: &SqrtExpr<S>,
    c: &SqrtExpr<S>,
) -> Result<Ordering, LexError> {
    let (alpha, beta, gamma) = (&a.radicand, &b.radicand, &c.radicand);
    if alpha.is_negative() || beta.is_negative() || gamma.is_negative() {
        return Err(LexError::NegativeRadicand);
    }
    // (√α + √β)² = α + β + 2√(αβ); compare 2√(αβ) against δ = γ − α − β.
    let delta = &(gamma - alpha) - beta;
    if delta.is_negative() {
        return Ok(Ordering::Greater);
    }
    let four_ab = (alpha * beta).scale(&S::from_int(4));
    Ok(lex_cmp(&four_ab, &delta.square()))
}

pub type Q = BigRational;

fn bigint_json(x: &BigInt) -> Value {
    use num_traits::ToPrimitive;
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn bigint_from_json(v: &Value) -> Result<BigInt, LexError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| LexError::Malformed(format!("non-integer {n}"))),
        Value::String(s) => s.parse().map_err(|_| LexError::Malformed(format!("bad integer {s}"))),
        other => Err(LexError::Malformed(format!("expected integer, got {other}"))),
    }
}

/// Rational as `{"num":…, "den":…}`.
pub fn rational_to_json(x: &Q) -> Value {
    json!({"num": bigint_json(x.numer()), "den": bigint_json(x.denom())})
}

/// Accepts an integer, a `"p/q"` string, or `{"num":…, "den":…}`.
pub fn rational_from_json(v: &Value) -> Result<Q, LexError> {
    match v {
        Value::Object(o) => {
            let num = bigint_from_json(o.get("num").ok_or_else(|| LexError::Malformed("missing num".into()))?)?;
            let den = match o.get("den") {
                Some(d) => bigint_from_json(d)?,
                None => BigInt::one(),
            };
            if den.is_zero() {
                return Err(LexError::Malformed("zero denominator".into()));
            }
            Ok(Q::new(num, den))
        }
        Value::Number(_) => Ok(Q::from_integer(bigint_from_json(v)?)),
        Value::String(s) => {
            let mut it = s.splitn(2, '/');
            let num: BigInt = it
                .next()
                .unwrap_or_default()
                .trim()
                .parse()
                .map_err(|_| LexError::Malformed(format!("bad rational {s}")))?;
            let den: BigInt = match it.next() {
                Some(d) => d.trim().parse().map_err(|_| LexError::Malformed(format!("bad rational {s}")))?,
                None => BigInt::one(),
            };
            if den.is_zero() {
                return Err(LexError::Malformed("zero denominator".into()));
            }
            Ok(Q::new(num, den))
        }
        other => Err(LexError::Malformed(format!("expected rational, got {other}"))),
    }
}

impl LexPoly<Q> {
    /// Canonical JSON: terms sorted by descending monomial, exponents `ω_n` first.
    pub fn to_json(&self, n: usize) -> Value {
        Value::Array(
            self.terms
                .iter()
                .rev()
                .map(|(m, c)| {
                    json!({
                        "exps": m.exps_desc(n),
                        "num": bigint_json(c.numer()),
                        "den": bigint_json(c.denom()),
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self, LexError> {
        let arr = v.as_array().ok_or_else(|| LexError::Malformed("LexPoly must be an array".into()))?;
        let mut out = LexPoly::zero();
        for t in arr {
            let exps = t
                .get("exps")
                .and_then(Value::as_array)
                .ok_or_else(|| LexError::Malformed("term needs exps".into()))?;
            let mut e: Vec<u32> = exps
                .iter()
                .map(|x| x.as_u64().map(|u| u as u32).ok_or_else(|| LexError::Malformed("bad exponent".into())))
                .collect::<Result<_, _>>()?;
            e.reverse();
            let c = rational_from_json(t)?;
            out.add_term(Monomial::from_exps(e), c);
        }
        Ok(out)
    }
}

impl LinLex<Q> {
    /// JSON array of `n` rationals, `ω_n` first.
    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().rev().map(rational_to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self, LexError> {
        let arr = v.as_array().ok_or_else(|| LexError::Malformed("LinLex must be an array".into()))?;
        if arr.is_empty() {
            return Err(LexError::Malformed("LinLex needs at least one coefficient".into()));
        }
        let mut c: Vec<Q> = arr.iter().map(rational_from_json).collect::<Result<_, _>>()?;
        c.reverse();
        Ok(LinLex::new(c))
    }
}
