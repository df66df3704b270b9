//! The n-level Weyl group `W(Φ) ⋉ ℤⁿ(Φ∨)` in semidirect normal form.
//!
//! An element is a pair `(fin, trans)`: `fin` is an integer matrix on the
//! simple-root basis and `trans[i][l]` is the coefficient of `ω_{l+1}` on the
//! simple coroot `αᵢ∨`. It acts by `p ↦ fin·p + trans`.

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::apartment::{enclosure_contains, Point};
use crate::lexring::LinLex;
use crate::rootsystem::{imat_identity, imat_mul, IMat, Phi, RootDatum, RootError};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("elements belong to different groups")]
    DatumMismatch,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed element: {0}")]
    Malformed(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    pub fin: IMat,
    pub trans: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn levels(&self) -> usize {
        self.trans.first().map_or(0, Vec::len)
    }

    pub fn is_translation(&self) -> bool {
        self.fin == imat_identity(self.fin.len())
    }

    pub fn to_json(&self) -> Value {
        let trans: Vec<Vec<i64>> = self.trans.iter().map(|t| t.iter().rev().copied().collect()).collect();
        json!({"fin": self.fin, "trans": trans})
    }

    pub fn from_json(v: &Value) -> Result<Self, WeylError> {
        let bad = |m: &str| WeylError::Malformed(m.to_string());
        let rows = |v: &Value| -> Result<Vec<Vec<i64>>, WeylError> {
            v.as_array()
                .ok_or_else(|| bad("expected array"))?
                .iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(|| bad("expected row"))?
                        .iter()
                        .map(|x| x.as_i64().ok_or_else(|| bad("expected integer")))
                        .collect()
                })
                .collect()
        };
        let fin = rows(v.get("fin").ok_or_else(|| bad("missing fin"))?)?;
        let mut trans = rows(v.get("trans").ok_or_else(|| bad("missing trans"))?)?;
        trans.iter_mut().for_each(|t| t.reverse());
        Ok(WeylElement { fin, trans })
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

/// `W_n(Φ)` for a fixed root datum and level.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub rd: RootDatum,
    pub n: usize,
}

impl WeylGroup {
    pub fn new(phi: Phi, n: usize) -> Self {
        assert!(n >= 1, "level must be at least 1");
        WeylGroup { rd: crate::rootsystem::root_datum(phi), n }
    }

    pub fn rank(&self) -> usize {
        self.rd.rank
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement { fin: imat_identity(self.rank()), trans: vec![vec![0; self.n]; self.rank()] }
    }

    fn check(&self, w: &WeylElement) -> Result<(), WeylError> {
        if w.fin.len() == self.rank() && w.trans.len() == self.rank() && w.trans.iter().all(|t| t.len() == self.n) {
            Ok(())
        } else {
            Err(WeylError::DatumMismatch)
        }
    }

    pub fn validate(&self, w: &WeylElement) -> Result<(), WeylError> {
        self.check(w)?;
        if !self.rd.finite_weyl.contains(&w.fin) {
            return Err(WeylError::Malformed("finite part is not in W(Φ)".into()));
        }
        Ok(())
    }

    /// Pure translation by coroot coordinates `t[i][l]`.
    pub fn translation(&self, t: Vec<Vec<i64>>) -> WeylElement {
        WeylElement { fin: imat_identity(self.rank()), trans: t }
    }

    /// `s_{a,k}: v ↦ v − 2((a,v) − k)/(a,a)·a` with `k[l]` the `ω_{l+1}` coefficient.
    pub fn reflection(&self, a: &[i64], k: &[i64]) -> Result<WeylElement, WeylError> {
        if k.len() != self.n || a.len() != self.rank() {
            return Err(WeylError::DatumMismatch);
        }
        let fin = self.rd.reflection_matrix(a)?;
        let c = self.rd.coroot_in_coroot_basis(a)?;
        let trans = c.iter().map(|ci| k.iter().map(|kl| ci * kl).collect()).collect();
        Ok(WeylElement { fin, trans })
    }

    pub fn compose(&self, w1: &WeylElement, w2: &WeylElement) -> Result<WeylElement, WeylError> {
        self.check(w1)?;
        self.check(w2)?;
        let fin = imat_mul(&w1.fin, &w2.fin);
        let m = self.rd.to_coroot_basis(&w1.fin);
        let r = self.rank();
        let trans = (0..r)
            .map(|i| {
                (0..self.n)
                    .map(|l| (0..r).map(|j| m[i][j] * w2.trans[j][l]).sum::<i64>() + w1.trans[i][l])
                    .collect()
            })
            .collect();
        Ok(WeylElement { fin, trans })
    }

    pub fn inverse(&self, w: &WeylElement) -> Result<WeylElement, WeylError> {
        self.check(w)?;
        let id = imat_identity(self.rank());
        let fin_inv = self
            .rd
            .finite_weyl
            .iter()
            .find(|m| imat_mul(m, &w.fin) == id)
            .cloned()
            .ok_or_else(|| WeylError::Malformed("finite part is not in W(Φ)".into()))?;
        let m = self.rd.to_coroot_basis(&fin_inv);
        let r = self.rank();
        let trans = (0..r)
            .map(|i| (0..self.n).map(|l| -(0..r).map(|j| m[i][j] * w.trans[j][l]).sum::<i64>()).collect())
            .collect();
        Ok(WeylElement { fin: fin_inv, trans })
    }

    pub fn power(&self, w: &WeylElement, e: i64) -> WeylElement {
        let base = if e < 0 { self.inverse(w).expect("valid element") } else { w.clone() };
        (0..e.unsigned_abs()).fold(self.identity(), |acc, _| self.compose(&acc, &base).expect("same group"))
    }

    /// Translation part as root-basis coordinates.
    pub fn translation_vector<S: Scalar>(&self, w: &WeylElement) -> Vec<LinLex<S>> {
        (0..self.rank())
            .map(|i| {
                let scale: S = self.rd.coroot_scale(i);
                LinLex::new(w.trans[i].iter().map(|&t| S::from_int(t) * scale.clone()).collect())
            })
            .collect()
    }

    pub fn act<S: Scalar>(&self, w: &WeylElement, p: &Point<S>) -> Point<S> {
        let lin = crate::rootsystem::imat_apply(&w.fin, &p.coords);
        let t = self.translation_vector::<S>(w);
        Point::new(lin.iter().zip(&t).map(|(a, b)| a + b).collect())
    }

    /// Generator by name: `s`/`s1`…, `w1`…`wn` (reflection in the highest-root wall at `ωⱼ`), `e`.
    pub fn generator(&self, name: &str) -> Result<WeylElement, WeylError> {
        let unknown = || WeylError::UnknownGenerator(name.to_string());
        let zero = vec![0; self.n];
        match name {
            "e" | "1" | "id" => Ok(self.identity()),
            "s" if self.rank() == 1 => self.reflection(&self.rd.simple_root(0), &zero),
            _ if name.starts_with('s') => {
                let i: usize = name[1..].parse().map_err(|_| unknown())?;
                if i == 0 || i > self.rank() {
                    return Err(unknown());
                }
                self.reflection(&self.rd.simple_root(i - 1), &zero)
            }
            _ if name.starts_with('w') => {
                let j: usize = name[1..].parse().map_err(|_| unknown())?;
                if j == 0 || j > self.n {
                    return Err(unknown());
                }
                let mut k = zero;
                k[j - 1] = 1;
                self.reflection(&self.rd.highest_root, &k)
            }
            _ => Err(unknown()),
        }
    }

    /// Evaluates a whitespace-separated word; `"s w1"` is `s∘w1`.
    pub fn eval_word(&self, word: &str) -> Result<WeylElement, WeylError> {
        word.split_whitespace().try_fold(self.identity(), |acc, g| {
            let (name, exp) = match g.split_once('^') {
                Some((nm, e)) => (nm, e.parse::<i64>().map_err(|_| WeylError::UnknownGenerator(g.to_string()))?),
                None => (g, 1),
            };
            let x = self.power(&self.generator(name)?, exp);
            self.compose(&acc, &x)
        })
    }

    /// Vertices of `w·C̄₀`.
    pub fn chamber_vertices<S: Scalar>(&self, w: &WeylElement) -> Vec<Point<S>> {
        self.rd
            .alcove_vertices::<S>()
            .into_iter()
            .map(|v| self.act(w, &Point::real(self.n, v)))
            .collect()
    }

    /// `v ≤ w` iff `vC₀ ⊂ cl(C₀ ∪ wC₀)`.
    pub fn bruhat_leq<S: Scalar>(&self, v: &WeylElement, w: &WeylElement) -> bool {
        let mut omega = self.chamber_vertices::<S>(&self.identity());
        omega.extend(self.chamber_vertices::<S>(w));
        self.chamber_vertices::<S>(v)
            .iter()
            .all(|z| enclosure_contains(&self.rd, &omega, z).unwrap_or(false))
    }
}

/// Outcome of checking `s² = w₁² = w₂² = (s w₁ w₂)² = 1` in `W₂(A₁)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub relations: Vec<(String, bool)>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.relations.iter().all(|(_, ok)| *ok)
    }
}

pub fn presentation_report_a1_level2() -> RelationReport {
    let g = WeylGroup::new(Phi::A1, 2);
    let id = g.identity();
    let relations = ["s s", "w1 w1", "w2 w2", "s w1 w2 s w1 w2"]
        .iter()
        .map(|w| {
            let label = match *w {
                "s s" => "s^2",
                "w1 w1" => "w1^2",
                "w2 w2" => "w2^2",
                _ => "(s w1 w2)^2",
            };
            (label.to_string(), g.eval_word(w).map(|x| x == id).unwrap_or(false))
        })
        .collect();
    RelationReport { relations }
}

pub fn verify_presentation_a1_level2() -> bool {
    presentation_report_a1_level2().all_hold()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use crate::Q;

    fn a1() -> WeylGroup {
        WeylGroup::new(Phi::A1, 2)
    }

    fn x(c1: i64, c2: i64) -> Point<Q> {
        Point::new(vec![LinLex::new(vec![ratio(c1, 1), ratio(c2, 1)])])
    }

    #[test]
    fn a1_generators_act_as_expected() {
        let g = a1();
        let p = x(3, 5);
        assert_eq!(g.act(&g.generator("s").unwrap(), &p), x(-3, -5));
        assert_eq!(g.act(&g.generator("w1").unwrap(), &p), x(2 - 3, -5));
        assert_eq!(g.act(&g.generator("w2").unwrap(), &p), x(-3, 2 - 5));
    }

    #[test]
    fn presentation_holds() {
        let r = presentation_report_a1_level2();
        assert!(r.all_hold(), "{r:?}");
        assert_eq!(r.relations.len(), 4);
    }

    #[test]
    fn products_with_s_are_translations() {
        let g = a1();
        let w1s = g.eval_word("w1 s").unwrap();
        assert_eq!(w1s, g.translation(vec![vec![1, 0]]));
        assert_eq!(g.translation_vector::<Q>(&w1s)[0], LinLex::from_ints(&[2, 0]));
        let w2s = g.eval_word("w2 s").unwrap();
        assert_eq!(g.translation_vector::<Q>(&w2s)[0], LinLex::from_ints(&[0, 2]));
        let sw1 = g.eval_word("s w1").unwrap();
        assert_ne!(sw1, w1s);
        assert_eq!(g.translation_vector::<Q>(&sw1)[0], LinLex::from_ints(&[-2, 0]));
    }

    #[test]
    fn reflections_are_involutions() {
        for phi in [Phi::A1, Phi::A2, Phi::B2] {
            let g = WeylGroup::new(phi, 2);
            for a in g.rd.roots() {
                for k in [[0, 0], [1, 0], [-2, 3]] {
                    let s = g.reflection(&a, &k).unwrap();
                    assert_eq!(g.compose(&s, &s).unwrap(), g.identity());
                }
            }
        }
    }

    #[test]
    fn reflection_fixes_its_wall() {
        let g = WeylGroup::new(Phi::B2, 2);
        let a = vec![2, 1];
        let s = g.reflection(&a, &[3, 1]).unwrap();
        let v: Point<Q> = Point::new(vec![
            LinLex::new(vec![ratio(3, 4), ratio(1, 4)]),
            LinLex::new(vec![ratio(5, 1), ratio(7, 1)]),
        ]);
        assert_eq!(g.rd.pair(&a, &v.coords), LinLex::new(vec![ratio(3, 1), ratio(1, 1)]));
        assert_eq!(g.act(&s, &v), v);
    }

    #[test]
    fn word_parse_errors() {
        assert!(matches!(a1().eval_word("s x"), Err(WeylError::UnknownGenerator(_))));
        assert!(matches!(a1().eval_word("w3"), Err(WeylError::UnknownGenerator(_))));
        assert_eq!(a1().eval_word("w2^2").unwrap(), a1().identity());
    }

    #[test]
    fn json_roundtrip() {
        let g = WeylGroup::new(Phi::A2, 2);
        let w = g.eval_word("s1 w2 s2 w1").unwrap();
        assert_eq!(WeylElement::from_json(&w.to_json()).unwrap(), w);
    }

    #[test]
    fn bruhat_basics() {
        let g = a1();
        let w2 = g.generator("w2").unwrap();
        assert!(g.bruhat_leq::<Q>(&g.identity(), &w2));
        assert!(g.bruhat_leq::<Q>(&w2, &w2));
    }
}
