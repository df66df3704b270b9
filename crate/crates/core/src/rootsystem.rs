//! Root data for `A₁`, `A₂` and `B₂` on an abstract simple-root basis.
//!
//! Roots are integer vectors over the simple roots and every inner product
//! comes from an integer Gram matrix, so no irrational coordinates appear.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::lexring::{LexPoly, LinLex};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("unsupported root system `{0}` (expected A1, A2 or B2)")]
    UnsupportedType(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("not a root: {0:?}")]
    NotARoot(Vec<i64>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phi {
    A1,
    A2,
    B2,
}

impl FromStr for Phi {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self, RootError> {
        match s.to_ascii_uppercase().as_str() {
            "A1" => Ok(Phi::A1),
            "A2" => Ok(Phi::A2),
            "B2" => Ok(Phi::B2),
            _ => Err(RootError::UnsupportedType(s.to_string())),
        }
    }
}

impl fmt::Display for Phi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phi::A1 => "A1",
            Phi::A2 => "A2",
            Phi::B2 => "B2",
        })
    }
}

/// Square integer matrix acting on column vectors of simple-root coordinates.
pub type IMat = Vec<Vec<i64>>;

pub fn imat_identity(r: usize) -> IMat {
    (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn imat_mul(a: &IMat, b: &IMat) -> IMat {
    let r = a.len();
    (0..r)
        .map(|i| (0..r).map(|j| (0..r).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

pub fn imat_vec(a: &IMat, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// Applies an integer matrix to a vector of [`LinLex`] coordinates.
pub fn imat_apply<S: Scalar>(a: &IMat, v: &[LinLex<S>]) -> Vec<LinLex<S>> {
    let n = v[0].n();
    a.iter()
        .map(|row| {
            row.iter().zip(v).fold(LinLex::zero(n), |acc, (&m, x)| {
                if m == 0 {
                    acc
                } else {
                    &acc + &x.scale(&S::from_int(m))
                }
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootDatum {
    pub phi: Phi,
    pub rank: usize,
    pub gram: IMat,
    pub positive_roots: Vec<Vec<i64>>,
    pub highest_root: Vec<i64>,
    pub finite_weyl: Vec<IMat>,
}

pub fn root_datum(phi: Phi) -> RootDatum {
    let (gram, positive_roots, highest_root): (IMat, Vec<Vec<i64>>, Vec<i64>) = match phi {
        Phi::A1 => (vec![vec![1]], vec![vec![1]], vec![1]),
        Phi::A2 => (
            vec![vec![4, -2], vec![-2, 4]],
            vec![vec![1, 0], vec![0, 1], vec![1, 1]],
            vec![1, 1],
        ),
        Phi::B2 => (
            vec![vec![4, -4], vec![-4, 8]],
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1]],
            vec![2, 1],
        ),
    };
    let rank = gram.len();
    let mut rd = RootDatum { phi, rank, gram, positive_roots, highest_root, finite_weyl: Vec::new() };
    rd.finite_weyl = rd.enumerate_weyl();
    rd
}

impl RootDatum {
    pub fn from_tag(tag: &str) -> Result<Self, RootError> {
        Ok(root_datum(tag.parse()?))
    }

    /// `(u, v)` for integer vectors on the root basis.
    pub fn inner_int(&self, u: &[i64], v: &[i64]) -> i64 {
        (0..self.rank).map(|i| (0..self.rank).map(|j| u[i] * self.gram[i][j] * v[j]).sum::<i64>()).sum()
    }

    pub fn roots(&self) -> Vec<Vec<i64>> {
        let mut all = self.positive_roots.clone();
        all.extend(self.positive_roots.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        all
    }

    pub fn is_root(&self, a: &[i64]) -> bool {
        self.roots().iter().any(|r| r == a)
    }

    fn check_root(&self, a: &[i64]) -> Result<(), RootError> {
        if self.is_root(a) {
            Ok(())
        } else {
            Err(RootError::NotARoot(a.to_vec()))
        }
    }

    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        (0..self.rank).map(|j| i64::from(i == j)).collect()
    }

    /// Coroot `a∨` in simple-coroot coordinates (always integral).
    pub fn coroot_in_coroot_basis(&self, a: &[i64]) -> Result<Vec<i64>, RootError> {
        self.check_root(a)?;
        let aa = self.inner_int(a, a);
        Ok((0..self.rank).map(|i| a[i] * self.gram[i][i] / aa).collect())
    }

    /// Coroot `a∨ = 2a/(a,a)` in simple-root coordinates.
    pub fn coroot<S: Scalar>(&self, a: &[i64]) -> Result<Vec<S>, RootError> {
        self.check_root(a)?;
        let aa = self.inner_int(a, a);
        Ok(a.iter().map(|&x| S::from_ratio(2 * x, aa)).collect())
    }

    /// Root-basis coordinate scale of the simple coroot `αᵢ∨`.
    pub fn coroot_scale<S: Scalar>(&self, i: usize) -> S {
        S::from_ratio(2, self.gram[i][i])
    }

    /// Integer `(b, a∨)`.
    pub fn cartan_pair(&self, b: &[i64], a: &[i64]) -> i64 {
        2 * self.inner_int(b, a) / self.inner_int(a, a)
    }

    /// Matrix of the linear reflection `s_a` on the root basis.
    pub fn reflection_matrix(&self, a: &[i64]) -> Result<IMat, RootError> {
        self.check_root(a)?;
        let mut m = imat_identity(self.rank);
        for j in 0..self.rank {
            let c = self.cartan_pair(&self.simple_root(j), a);
            for i in 0..self.rank {
                m[i][j] -= c * a[i];
            }
        }
        Ok(m)
    }

    /// Breadth-first closure from the identity, so elements come in length order.
    fn enumerate_weyl(&self) -> Vec<IMat> {
        let gens: Vec<IMat> =
            (0..self.rank).map(|i| self.reflection_matrix(&self.simple_root(i)).expect("simple root")).collect();
        let id = imat_identity(self.rank);
        let mut seen = BTreeSet::from([id.clone()]);
        let mut order = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(m) = queue.pop_front() {
            for g in &gens {
                let next = imat_mul(g, &m);
                if seen.insert(next.clone()) {
                    order.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        order
    }

    /// Position of a finite Weyl matrix in length order.
    pub fn weyl_index(&self, m: &IMat) -> Option<usize> {
        self.finite_weyl.iter().position(|x| x == m)
    }

    /// Conjugates a root-basis matrix into the simple-coroot basis.
    pub fn to_coroot_basis(&self, m: &IMat) -> IMat {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| m[i][j] * self.gram[i][i] / self.gram[j][j]).collect())
            .collect()
    }

    fn check_dim<T>(&self, v: &[T]) -> Result<(), RootError> {
        if v.len() == self.rank {
            Ok(())
        } else {
            Err(RootError::DimensionMismatch { expected: self.rank, got: v.len() })
        }
    }

    /// `(u, v)` for vectors with [`LinLex`] coordinates.
    pub fn inner<S: Scalar>(&self, u: &[LinLex<S>], v: &[LinLex<S>]) -> Result<LexPoly<S>, RootError> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        let mut acc = LexPoly::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                if self.gram[i][j] != 0 {
                    acc = &acc + &u[i].mul_poly(&v[j]).scale(&S::from_int(self.gram[i][j]));
                }
            }
        }
        Ok(acc)
    }

    /// `(a, v)` for an integer vector `a`; stays degree one.
    pub fn pair<S: Scalar>(&self, a: &[i64], v: &[LinLex<S>]) -> LinLex<S> {
        let n = v[0].n();
        let mut acc = LinLex::zero(n);
        for i in 0..self.rank {
            for j in 0..self.rank {
                let c = a[i] * self.gram[i][j];
                if c != 0 {
                    acc = &acc + &v[j].scale(&S::from_int(c));
                }
            }
        }
        acc
    }

    /// `(a, v)` for real coordinates.
    pub fn pair_scalar<S: Scalar>(&self, a: &[i64], v: &[S]) -> S {
        let mut acc = S::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc = acc + S::from_int(a[i] * self.gram[i][j]) * v[j].clone();
            }
        }
        acc
    }

    /// Solves `(αᵢ, v) = yᵢ` for `v` in root coordinates.
    pub fn from_pairings<S: Scalar>(&self, y: &[S]) -> Vec<S> {
        match self.rank {
            1 => vec![y[0].clone() / S::from_int(self.gram[0][0])],
            2 => {
                let g = &self.gram;
                let det = S::from_int(g[0][0] * g[1][1] - g[0][1] * g[1][0]);
                vec![
                    (S::from_int(g[1][1]) * y[0].clone() - S::from_int(g[0][1]) * y[1].clone()) / det.clone(),
                    (S::from_int(g[0][0]) * y[1].clone() - S::from_int(g[1][0]) * y[0].clone()) / det,
                ]
            }
            r => unreachable!("rank {r} not supported"),
        }
    }

    /// Vertices of the closed fundamental alcove: `0` and `ω̌ᵢ/mᵢ`.
    pub fn alcove_vertices<S: Scalar>(&self) -> Vec<Vec<S>> {
        let mut out = vec![vec![S::zero(); self.rank]];
        for i in 0..self.rank {
            let mut y = vec![S::zero(); self.rank];
            y[i] = S::from_ratio(1, self.highest_root[i]);
            out.push(self.from_pairings(&y));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use crate::Q;

    #[test]
    fn weyl_orders() {
        assert_eq!(root_datum(Phi::A1).finite_weyl.len(), 2);
        assert_eq!(root_datum(Phi::A2).finite_weyl.len(), 6);
        assert_eq!(root_datum(Phi::B2).finite_weyl.len(), 8);
    }

    #[test]
    fn b2_matches_coordinates() {
        // a = (2,0), b = (-2,2) as plane vectors.
        let dot = |u: (i64, i64), v: (i64, i64)| u.0 * v.0 + u.1 * v.1;
        let (a, b) = ((2, 0), (-2, 2));
        let rd = root_datum(Phi::B2);
        assert_eq!(rd.gram, vec![vec![dot(a, a), dot(a, b)], vec![dot(b, a), dot(b, b)]]);
        assert_eq!(rd.positive_roots, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1]]);
    }

    #[test]
    fn a1_coroot_is_2a() {
        let rd = root_datum(Phi::A1);
        assert_eq!(rd.coroot::<Q>(&[1]).unwrap(), vec![ratio(2, 1)]);
        assert_eq!(rd.coroot::<Q>(&[-1]).unwrap(), vec![ratio(-2, 1)]);
    }

    #[test]
    fn roots_closed_and_paired() {
        for phi in [Phi::A1, Phi::A2, Phi::B2] {
            let rd = root_datum(phi);
            for a in rd.roots() {
                assert_eq!(rd.cartan_pair(&a, &a), 2);
                let cv: Vec<Q> = rd.coroot(&a).unwrap();
                let pair: Q = (0..rd.rank)
                    .map(|i| (0..rd.rank).map(|j| Q::from_integer((a[i] * rd.gram[i][j]).into()) * &cv[j]).sum::<Q>())
                    .sum();
                assert_eq!(pair, ratio(2, 1));
                for w in &rd.finite_weyl {
                    assert!(rd.is_root(&imat_vec(w, &a)), "{phi}: W does not permute roots");
                }
            }
        }
    }

    #[test]
    fn weyl_preserves_gram() {
        for phi in [Phi::A1, Phi::A2, Phi::B2] {
            let rd = root_datum(phi);
            for w in &rd.finite_weyl {
                for i in 0..rd.rank {
                    for j in 0..rd.rank {
                        let (u, v) = (imat_vec(w, &rd.simple_root(i)), imat_vec(w, &rd.simple_root(j)));
                        assert_eq!(rd.inner_int(&u, &v), rd.gram[i][j]);
                    }
                }
            }
        }
    }

    #[test]
    fn lexpoly_inner() {
        let rd = root_datum(Phi::A1);
        let v = vec![LinLex::<Q>::omega(2, 2)];
        assert_eq!(rd.inner(&v, &v).unwrap(), LexPoly::omega(2).square());
        assert_eq!(
            rd.inner(&v, &[]).unwrap_err(),
            RootError::DimensionMismatch { expected: 1, got: 0 }
        );
        let a2 = root_datum(Phi::A2);
        let a = vec![LinLex::<Q>::from_ints(&[1]), LinLex::from_ints(&[0])];
        assert_eq!(a2.inner(&a, &a).unwrap(), LexPoly::from_int(4));
    }

    #[test]
    fn alcove_vertices_on_walls() {
        let rd = root_datum(Phi::B2);
        for v in rd.alcove_vertices::<Q>().iter().skip(1) {
            assert_eq!(rd.pair_scalar(&rd.highest_root, v), ratio(1, 1));
        }
    }

    #[test]
    fn unsupported() {
        assert!(matches!("G2".parse::<Phi>(), Err(RootError::UnsupportedType(_))));
    }
}
