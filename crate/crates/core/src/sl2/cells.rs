//! Products of two copies of the Bruhat cell `C(w₂)`.
//!
//! The expected family is
//! `B ⊔ ⊔_{a≥0} C(w₂sw₂(w₁s)^a) ⊔ ⊔_{b∈ℤ} C(w₂(w₁s)^b) ⊔ ⊔_{c≤−1} C(s(w₁s)^c)`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{cell_of, Mat2, MatrixSampler, Sl2Error, SL2};
use crate::hlf::{rng_from_seed, Val2, ValuedField, LS2};
use crate::rootsystem::Phi;
use crate::weyl::{WeylElement, WeylGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CellFamily {
    /// The trivial cell.
    B,
    /// `w₂sw₂(w₁s)^a`
    A(i64),
    /// `w₂(w₁s)^b`
    Bw(i64),
    /// `s(w₁s)^c`
    C(i64),
}

impl CellFamily {
    /// Is this one of the cells the product decomposition lists.
    pub fn listed(self) -> bool {
        match self {
            CellFamily::B | CellFamily::Bw(_) => true,
            CellFamily::A(a) => a >= 0,
            CellFamily::C(c) => c <= -1,
        }
    }

    pub fn element(self) -> WeylElement {
        let w = WeylGroup::new(Phi::A1, 2);
        let g = |n: &str| w.generator(n).expect("A1 generator");
        let c = |x: &WeylElement, y: &WeylElement| w.compose(x, y).expect("same group");
        let w1s = c(&g("w1"), &g("s"));
        match self {
            CellFamily::B => w.identity(),
            CellFamily::A(a) => c(&c(&c(&g("w2"), &g("s")), &g("w2")), &w.power(&w1s, a)),
            CellFamily::Bw(b) => c(&g("w2"), &w.power(&w1s, b)),
            CellFamily::C(k) => c(&g("s"), &w.power(&w1s, k)),
        }
    }
}

impl fmt::Display for CellFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellFamily::B => write!(f, "B"),
            CellFamily::A(a) => write!(f, "w2 s w2 (w1 s)^{a}"),
            CellFamily::Bw(b) => write!(f, "w2 (w1 s)^{b}"),
            CellFamily::C(c) => write!(f, "s (w1 s)^{c}"),
        }
    }
}

/// Reads a level-2 label as a member of one of the four shapes, if it has one.
pub fn cell_family(label: &WeylElement) -> Option<CellFamily> {
    let t = label.trans.first()?;
    let cand = match (label.fin.first()?.first()?, t.as_slice()) {
        (1, [0, 0]) => CellFamily::B,
        (-1, [t1, 2]) => CellFamily::A(-t1),
        (-1, [t1, 1]) => CellFamily::Bw(-t1),
        (-1, [t1, 0]) => CellFamily::C(-t1),
        _ => return None,
    };
    (cand.element() == *label).then_some(cand)
}

pub fn w2_matrix(q: u32) -> SL2 {
    Mat2::antidiag(LS2::t(q, -1, 0).neg()).expect("monomial")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub target: CellFamily,
    pub found: bool,
    /// `v(y)` of `β = [[1,0],[y,1]]` with `w₂·(β·w₂) ∈ C(target)`.
    pub y_valuation: Option<(i64, i64)>,
    pub searched: usize,
}

/// Searches `g₁ = w₂`, `g₂ = [[1,0],[y,1]]·w₂` over monomial `y ∈ t₁O_F`.
pub fn w2_witness(q: u32, target: CellFamily) -> Result<Witness, Sl2Error> {
    let w2 = w2_matrix(q);
    let want_w2 = cell_of(&w2)?;
    let goal = target.element();
    let mut searched = 0;
    for j in 0..=3 {
        for i in -4..=4 {
            let v = Val2::new(j, i);
            if v < Val2::new(0, 1) {
                continue;
            }
            searched += 1;
            let g2 = Mat2::lower(LS2::t(q, j, i)).mul(&w2);
            if cell_of(&g2)? != want_w2 {
                continue;
            }
            if cell_of(&w2.mul(&g2))? == goal {
                return Ok(Witness { target, found: true, y_valuation: Some((j, i)), searched });
            }
        }
    }
    Ok(Witness { target, found: false, y_valuation: None, searched })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CellProductReport {
    pub samples: usize,
    pub in_family: usize,
    pub counterexamples: Vec<String>,
    pub precision_failures: usize,
    pub witnesses: Vec<Witness>,
}

impl CellProductReport {
    pub fn samples_pass(&self) -> bool {
        self.counterexamples.is_empty() && self.in_family == self.samples
    }

    pub fn witnesses_pass(&self) -> bool {
        self.witnesses.iter().all(|w| w.found)
    }
}

pub fn witness_targets() -> Vec<CellFamily> {
    let mut t: Vec<CellFamily> = (0..=2).map(CellFamily::A).collect();
    t.extend((-2..=2).map(CellFamily::Bw));
    t.extend([-1, -2].map(CellFamily::C));
    t
}

pub fn verify_cell_product_w2w2(s: &MatrixSampler, samples: usize, seed: u64) -> Result<CellProductReport, Sl2Error> {
    let w2 = w2_matrix(s.q);
    let mut rng = rng_from_seed(seed);
    let mut rep = CellProductReport {
        samples: 0,
        in_family: 0,
        counterexamples: Vec::new(),
        precision_failures: 0,
        witnesses: Vec::new(),
    };
    for _ in 0..samples {
        let seed_k: u64 = rng.gen();
        let mut r = rng_from_seed(seed_k);
        let res = s.in_cell(&w2, &mut r).and_then(|g1| Ok((g1, s.in_cell(&w2, &mut r)?))).and_then(|(g1, g2)| cell_of(&g1.mul(&g2)));
        match res {
            Ok(label) => {
                rep.samples += 1;
                match cell_family(&label) {
                    Some(f) if f.listed() => rep.in_family += 1,
                    _ => rep.counterexamples.push(format!("seed {seed_k}: {label}")),
                }
            }
            Err(e) if e.is_precision() => rep.precision_failures += 1,
            Err(e) => return Err(e),
        }
    }
    for t in witness_targets() {
        rep.witnesses.push(w2_witness(s.q, t)?);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_elements_match_formulas() {
        for k in -3..=3 {
            for f in [CellFamily::A(k), CellFamily::Bw(k), CellFamily::C(k)] {
                assert_eq!(cell_family(&f.element()), Some(f));
            }
        }
        assert_eq!(cell_family(&CellFamily::B.element()), Some(CellFamily::B));
        let t = WeylElement { fin: vec![vec![1]], trans: vec![vec![1, 0]] };
        assert_eq!(cell_family(&t), None);
    }

    #[test]
    fn w2_squared_is_trivial() {
        let w2 = w2_matrix(5);
        assert_eq!(cell_family(&cell_of(&w2.mul(&w2)).unwrap()), Some(CellFamily::B));
    }

    #[test]
    fn witnesses() {
        assert!(w2_witness(5, CellFamily::Bw(0)).unwrap().found);
        assert!(w2_witness(5, CellFamily::A(1)).unwrap().found);
        assert!(w2_witness(5, CellFamily::C(-2)).unwrap().found);
        assert!(!w2_witness(5, CellFamily::A(0)).unwrap().found);
    }
}
