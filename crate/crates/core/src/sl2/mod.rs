//! `SL₂` over a valued field: decompositions and the action data they give.
//!
//! Matrices are stored entry-wise as `[[a, b], [c, d]]`. Every factorization
//! is produced by one elimination engine ([`elim`]) that runs unchanged over
//! `F` (rank 2) and `F₁` (rank 1).

mod cells;
mod decomp;
mod elim;
mod fixer;
mod geometry;
mod predicates;
mod random;
mod residue;

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::hlf::{ls2_from_json, ls2_to_json, FieldError, ValuedField, LS2};
use crate::weyl::WeylError;

pub use cells::{
    cell_family, verify_cell_product_w2w2, w2_matrix, w2_witness, witness_targets, CellFamily, CellProductReport, Witness,
};
pub use decomp::{
    bruhat_decompose, cartan_decompose, cell_of, kapranov_decompose, nu_monomial, Bruhat, Cartan, KapranovPair,
    Kapranov,
};
pub use fixer::{
    fixer_contains, fixer_product_check, orbit_oracle, paper_instance, translation_matrix, FixerReport, ORBIT_ASSUMPTION,
};
pub use geometry::{building_dist, label_point, retract_rho};
pub use predicates::{in_iwahori, in_k, in_n, Subgroup};
pub use random::MatrixSampler;
pub use residue::{lift_from_f1, random_f1_target, residue_bruhat_compatible, residue_sl2, ResidueCompat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Sl2Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("matrix is not monomial")]
    NotMonomial,
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("malformed matrix: {0}")]
    Malformed(String),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

impl Sl2Error {
    pub fn is_precision(&self) -> bool {
        matches!(self, Sl2Error::Field(FieldError::PrecisionExhausted))
    }
}

/// `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2<F> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
}

impl<F: ValuedField> Mat2<F> {
    pub fn new(a: F, b: F, c: F, d: F) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity(like: &F) -> Self {
        let (o, z) = (like.one_like(), like.zero_like());
        Mat2::new(o.clone(), z.clone(), z, o)
    }

    /// Completes `[[a, b], [c, ·]]` to determinant one.
    pub fn from_abc(a: F, b: F, c: F) -> Result<Self, FieldError> {
        let d = a.one_like().add(&b.mul(&c)).div(&a)?;
        Ok(Mat2::new(a, b, c, d))
    }

    /// `[[1, x], [0, 1]]`.
    pub fn upper(x: F) -> Self {
        let (o, z) = (x.one_like(), x.zero_like());
        Mat2::new(o.clone(), x, z, o)
    }

    /// `[[1, 0], [y, 1]]`.
    pub fn lower(y: F) -> Self {
        let (o, z) = (y.one_like(), y.zero_like());
        Mat2::new(o.clone(), z, y, o)
    }

    /// `diag(x, x⁻¹)`.
    pub fn diag(x: F) -> Result<Self, FieldError> {
        let z = x.zero_like();
        let xi = x.inv()?;
        Ok(Mat2::new(x, z.clone(), z, xi))
    }

    /// `[[0, x], [−x⁻¹, 0]]`.
    pub fn antidiag(x: F) -> Result<Self, FieldError> {
        let z = x.zero_like();
        let xi = x.inv()?.neg();
        Ok(Mat2::new(z.clone(), x, xi, z))
    }

    /// `[[0, 1], [−1, 0]]`.
    pub fn s(like: &F) -> Self {
        let (o, z) = (like.one_like(), like.zero_like());
        Mat2::new(z.clone(), o.clone(), o.neg(), z)
    }

    /// `diag(t^v, t^{−v})`.
    pub fn diag_t(like: &F, v: F::V) -> Self {
        let z = like.zero_like();
        Mat2::new(like.monomial_like(1, v), z.clone(), z, like.monomial_like(1, -v))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat2::new(
            self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        )
    }

    /// Inverse of a determinant-one matrix (the adjugate).
    pub fn inv(&self) -> Self {
        Mat2::new(self.d.clone(), self.b.neg(), self.c.neg(), self.a.clone())
    }

    pub fn det(&self) -> F {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn det_is_one(&self) -> bool {
        self.det().eq_to_precision(&self.a.one_like())
    }

    pub fn entries(&self) -> [&F; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> Mat2<G> {
        Mat2 { a: f(&self.a), b: f(&self.b), c: f(&self.c), d: f(&self.d) }
    }

    pub fn try_map<G, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<Mat2<G>, E> {
        Ok(Mat2 { a: f(&self.a)?, b: f(&self.b)?, c: f(&self.c)?, d: f(&self.d)? })
    }

    /// Entry-wise agreement to the tracked precision.
    pub fn eq_to_precision(&self, o: &Self) -> bool {
        self.entries().iter().zip(o.entries()).all(|(x, y)| x.eq_to_precision(y))
    }

    /// Exactly one of the two diagonals is exactly zero.
    pub fn is_monomial(&self) -> bool {
        let diag = self.b.is_exact_zero() && self.c.is_exact_zero();
        let anti = self.a.is_exact_zero() && self.d.is_exact_zero();
        diag != anti
    }
}

pub type SL2 = Mat2<LS2>;

impl Mat2<LS2> {
    pub fn to_json(&self) -> Value {
        json!([ls2_to_json(&self.a), ls2_to_json(&self.b), ls2_to_json(&self.c), ls2_to_json(&self.d)])
    }

    /// Accepts `[a, b, c, d]` or `[[a, b], [c, d]]`.
    pub fn from_json(v: &Value, q: u32, prec: (i64, i64)) -> Result<Self, Sl2Error> {
        let flat: Vec<&Value> = match v.as_array() {
            Some(rows) if rows.len() == 2 && rows.iter().all(Value::is_array) => {
                rows.iter().flat_map(|r| r.as_array().into_iter().flatten()).collect()
            }
            Some(xs) => xs.iter().collect(),
            None => return Err(Sl2Error::Malformed("expected an array of four series".into())),
        };
        if flat.len() != 4 {
            return Err(Sl2Error::Malformed(format!("expected 4 entries, got {}", flat.len())));
        }
        let e: Vec<LS2> = flat.into_iter().map(|x| ls2_from_json(x, q, prec)).collect::<Result<_, _>>()?;
        let q0 = e[0].q();
        if let Some(bad) = e.iter().find(|x| x.q() != q0) {
            return Err(FieldError::FieldMismatch(q0, bad.q()).into());
        }
        let mut it = e.into_iter();
        let mut next = || it.next().expect("four entries");
        Ok(Mat2::new(next(), next(), next(), next()))
    }
}

impl<F: ValuedField> fmt::Display for Mat2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}
