//! Entry-wise reduction `SL₂(𝒪_F) → SL₂(F₁)` and its compatibility with Bruhat.

use rand::Rng;
use serde::Serialize;

use super::{bruhat_decompose, predicates::in_iwahori, Mat2, MatrixSampler, Sl2Error, SL2};
use crate::hlf::{random_ls1, Val2, LS1, LS2};

pub fn residue_sl2(g: &SL2) -> Result<Mat2<LS1>, Sl2Error> {
    Ok(g.try_map(LS2::residue_to_f1)?)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidueCompat {
    /// The rank-2 label has no `ω₂` part.
    pub level_one: bool,
    pub labels_match: bool,
    /// Residues of the rank-2 factors are Iwahori and recombine to the residue.
    pub factors_reduce: bool,
}

impl ResidueCompat {
    pub fn pass(&self) -> bool {
        self.level_one && self.labels_match && self.factors_reduce
    }
}

/// Runs the engine on `g` and on its residue and compares.
pub fn residue_bruhat_compatible(g: &SL2) -> Result<ResidueCompat, Sl2Error> {
    let big = bruhat_decompose(g)?;
    let level_one = big.label.trans[0].get(1).copied() == Some(0);
    let rg = residue_sl2(g)?;
    let small = bruhat_decompose(&rg)?;
    let labels_match = small.label.fin == big.label.fin && small.label.trans[0][..] == big.label.trans[0][..1];
    let (rb, rn, rb2) = (residue_sl2(&big.b)?, residue_sl2(&big.n)?, residue_sl2(&big.b2)?);
    let factors_reduce = in_iwahori(&rb)? && in_iwahori(&rb2)? && rb.mul(&rn).mul(&rb2).eq_to_precision(&rg);
    Ok(ResidueCompat { level_one, labels_match, factors_reduce })
}

/// `embed(ḡ)·[[1, t₂x], [0, 1]]`, whose residue is `ḡ`.
pub fn lift_from_f1(target: &Mat2<LS1>, x: &LS2) -> SL2 {
    let e = target.map(LS2::embed);
    e.mul(&Mat2::upper(x.shift(Val2::new(1, 0))))
}

/// `a, b, c` with `v ∈ [−2, 2]`, `d` from the determinant.
pub fn random_f1_target<R: Rng + ?Sized>(s: &MatrixSampler, rng: &mut R) -> Result<Mat2<LS1>, Sl2Error> {
    let mut draw = || random_ls1(s.q, -2..=2, s.p1, rng);
    let (a, b, c) = (draw(), draw(), draw());
    Ok(Mat2::from_abc(a, b, c)?)
}
