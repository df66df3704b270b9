//! Babel apartments `Σ(n,Φ) = ⋃_w w·C̄₀` inside `ⁿ*V`.

mod circumcenter;
mod enclosure;
mod sector;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde_json::Value;
use thiserror::Error;

use crate::lexring::{LexError, LexPoly, LinLex, SqrtExpr};
use crate::rootsystem::{RootDatum, RootError};
use crate::scalar::Scalar;
use crate::weyl::{WeylElement, WeylGroup};

pub use circumcenter::{cat0_witness, circumcenter, circumradius2, Cat0Witness, Circumcenter};
pub use enclosure::{cl_fix_check, enclosure_contains, lattice_point_in, ClFixOutcome, HalfSpace};
pub use sector::{sector_contains, sector_intersect, Sector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ApartmentError {
    #[error("point is not in the apartment")]
    NotInApartment,
    #[error("basis is not affinely independent")]
    DegenerateBasis,
    #[error("enclosure of an empty set")]
    EmptyOmega,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("sectors are disjoint")]
    Disjoint,
    #[error("points span several real components")]
    MixedLevels,
    #[error("sector apex lies outside the apartment")]
    ApexOutside,
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Lex(#[from] LexError),
}

/// Point of `ⁿ*V` on the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point<S> {
    pub coords: Vec<LinLex<S>>,
}

impl<S: Scalar> Point<S> {
    pub fn new(coords: Vec<LinLex<S>>) -> Self {
        assert!(!coords.is_empty(), "points need at least one coordinate");
        let n = coords[0].n();
        assert!(coords.iter().all(|c| c.n() == n), "mixed levels in point");
        Point { coords }
    }

    pub fn zero(rank: usize, n: usize) -> Self {
        Point { coords: vec![LinLex::zero(n); rank] }
    }

    /// Real point embedded at level `n`.
    pub fn real(n: usize, v: Vec<S>) -> Self {
        Point { coords: v.into_iter().map(|x| LinLex::real(n, x)).collect() }
    }

    /// Builds a point from per-level coordinate vectors, `levels[l]` holding `ω_{l+1}` parts.
    pub fn from_levels(levels: &[Vec<S>]) -> Self {
        let rank = levels[0].len();
        Point {
            coords: (0..rank).map(|i| LinLex::new(levels.iter().map(|lv| lv[i].clone()).collect())).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn n(&self) -> usize {
        self.coords[0].n()
    }

    /// Coefficients of `ωⱼ` across coordinates.
    pub fn level_part(&self, j: usize) -> Vec<S> {
        self.coords.iter().map(|c| c.at(j).clone()).collect()
    }

    pub fn real_part(&self) -> Vec<S> {
        self.level_part(1)
    }

    pub fn add(&self, o: &Self) -> Self {
        Point { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Point { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, k: &S) -> Self {
        Point { coords: self.coords.iter().map(|c| c.scale(k)).collect() }
    }

    /// `(1 − t)·self + t·o`.
    pub fn lerp(&self, o: &Self, t: &S) -> Self {
        self.scale(&(S::one() - t.clone())).add(&o.scale(t))
    }
}

impl Point<crate::Q> {
    /// JSON array of coordinates, each a `LinLex` array (`ω_n` first).
    pub fn to_json(&self) -> Value {
        Value::Array(self.coords.iter().map(LinLex::to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self, LexError> {
        let arr = v.as_array().ok_or_else(|| LexError::Malformed("point must be an array".into()))?;
        if arr.is_empty() {
            return Err(LexError::Malformed("point needs coordinates".into()));
        }
        let coords: Vec<LinLex<crate::Q>> = arr.iter().map(LinLex::from_json).collect::<Result<_, _>>()?;
        if coords.iter().any(|c| c.n() != coords[0].n()) {
            return Err(LexError::Malformed("coordinates have different levels".into()));
        }
        Ok(Point { coords })
    }
}

pub fn dist2<S: Scalar>(rd: &RootDatum, p: &Point<S>, q: &Point<S>) -> LexPoly<S> {
    let d = p.sub(q);
    rd.inner(&d.coords, &d.coords).expect("points match the root datum")
}

pub fn dist<S: Scalar>(rd: &RootDatum, p: &Point<S>, q: &Point<S>) -> SqrtExpr<S> {
    SqrtExpr::new(dist2(rd, p, q)).expect("squared norms are non-negative")
}

/// Exact check of `d²(p_t,z) = (1−t)d²(x,z) + t·d²(y,z) − t(1−t)d²(x,y)`.
pub fn parallelogram_check<S: Scalar>(rd: &RootDatum, x: &Point<S>, y: &Point<S>, z: &Point<S>, t: &S) -> bool {
    let one_t = S::one() - t.clone();
    let pt = x.lerp(y, t);
    let lhs = dist2(rd, &pt, z);
    let rhs = &(&dist2(rd, x, z).scale(&one_t) + &dist2(rd, y, z).scale(t))
        - &dist2(rd, x, y).scale(&(t.clone() * one_t));
    lhs == rhs
}

fn det_lex<S: Scalar>(m: &[Vec<LinLex<S>>]) -> LexPoly<S> {
    match m.len() {
        1 => m[0][0].to_poly(),
        2 => &m[0][0].mul_poly(&m[1][1]) - &m[0][1].mul_poly(&m[1][0]),
        r => unreachable!("rank {r} not supported"),
    }
}

/// Checks that equal distances to an affinely independent basis force `p = q`.
pub fn unique_from_distances<S: Scalar>(
    rd: &RootDatum,
    basis: &[Point<S>],
    p: &Point<S>,
    q: &Point<S>,
) -> Result<bool, ApartmentError> {
    if basis.len() != rd.rank + 1 {
        return Err(ApartmentError::DegenerateBasis);
    }
    let diffs: Vec<Vec<LinLex<S>>> = basis[1..].iter().map(|b| b.sub(&basis[0]).coords).collect();
    if det_lex(&diffs).is_zero() {
        return Err(ApartmentError::DegenerateBasis);
    }
    let same = basis.iter().all(|b| dist2(rd, b, p) == dist2(rd, b, q));
    Ok(!same || p == q)
}

/// Residue relation: `d(p,q)` lies one level down.
pub fn residue_point_filter<S: Scalar>(rd: &RootDatum, p: &Point<S>, q: &Point<S>) -> bool {
    dist2(rd, p, q).level() <= (p.n() - 1).max(1)
}

/// Location of a point: some `w` with `p ∈ w·C̄₀` and the representative `w⁻¹(p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Located<S> {
    pub w: WeylElement,
    pub rep: Vec<S>,
}

/// Real reflections fixing a point of `C̄₀`: simple walls and the `θ = 1` wall through it.
fn stabilizer<S: Scalar>(g: &WeylGroup, c: &[S]) -> Vec<WeylElement> {
    let rd = &g.rd;
    let mut gens = Vec::new();
    let zero = vec![0; g.n];
    for i in 0..rd.rank {
        if rd.pair_scalar(&rd.simple_root(i), c).is_zero() {
            gens.push(g.reflection(&rd.simple_root(i), &zero).expect("simple root"));
        }
    }
    if rd.pair_scalar(&rd.highest_root, c) == S::one() {
        let mut k = zero;
        k[0] = 1;
        gens.push(g.reflection(&rd.highest_root, &k).expect("highest root"));
    }
    let mut seen = BTreeSet::from([g.identity()]);
    let mut frontier = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        for s in &gens {
            let y = g.compose(&x, s).expect("same group");
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// Locates `p` in `Σ(n,Φ)`.
///
/// On chamber faces several `w` qualify; the least `(fin, trans)` wins, with
/// finite parts ordered by length.
pub fn locate<S: Scalar>(g: &WeylGroup, p: &Point<S>) -> Result<Located<S>, ApartmentError> {
    let rd = &g.rd;
    let (r, n) = (rd.rank, g.n);
    if p.rank() != r || p.n() != n {
        return Err(RootError::DimensionMismatch { expected: r, got: p.rank() }.into());
    }
    // Coroot coordinates: x_i = t_i·2/(αᵢ,αᵢ).
    let coroot = |x: &S, i: usize| x.clone() / rd.coroot_scale::<S>(i);
    let mut trans = vec![vec![0i64; n]; r];
    for j in 2..=n {
        for (i, t) in trans.iter_mut().enumerate() {
            let c = coroot(p.coords[i].at(j), i);
            t[j - 1] = c.to_i64().ok_or(ApartmentError::NotInApartment)?;
        }
    }
    let mut c = p.real_part();
    for (i, t) in trans.iter_mut().enumerate() {
        let f = coroot(&c[i], i).floor();
        t[0] = f.to_i64().ok_or(ApartmentError::NotInApartment)?;
        c[i] = c[i].clone() - f * rd.coroot_scale::<S>(i);
    }
    let shift = g.translation(trans);
    // u collects the walk so that c_final = u(c_start).
    let zero = vec![0; n];
    let mut u = g.identity();
    let mut unit = zero.clone();
    unit[0] = 1;
    let walls: Vec<(Vec<i64>, Vec<i64>)> = (0..r)
        .map(|i| (rd.simple_root(i), zero.clone()))
        .chain(std::iter::once((rd.highest_root.clone(), unit)))
        .collect();
    let mut steps = 0usize;
    loop {
        let bad = (0..r)
            .position(|i| rd.pair_scalar(&rd.simple_root(i), &c) < S::zero())
            .or_else(|| (rd.pair_scalar(&rd.highest_root, &c) > S::one()).then_some(r));
        let Some(k) = bad else { break };
        let s = g.reflection(&walls[k].0, &walls[k].1).expect("wall reflection");
        c = g.act(&s, &Point::real(n, c)).real_part();
        u = g.compose(&s, &u).expect("same group");
        steps += 1;
        assert!(steps < 10_000, "alcove walk failed to terminate");
    }
    let w0 = g.compose(&shift, &g.inverse(&u).expect("valid")).expect("same group");
    let w = stabilizer(g, &c)
        .iter()
        .map(|s| g.compose(&w0, s).expect("same group"))
        .min_by_key(|w| (g.rd.weyl_index(&w.fin), w.trans.clone()))
        .expect("stabilizer contains the identity");
    Ok(Located { w, rep: c })
}

pub fn contains<S: Scalar>(g: &WeylGroup, p: &Point<S>) -> bool {
    locate(g, p).is_ok()
}

/// `τ_{vC₀}(p) = v(c)` where `c ∈ C̄₀` represents `p`.
pub fn retract_tau<S: Scalar>(g: &WeylGroup, chamber: &WeylElement, p: &Point<S>) -> Result<Point<S>, ApartmentError> {
    let loc = locate(g, p)?;
    Ok(g.act(chamber, &Point::real(g.n, loc.rep)))
}

/// True when `p` lies in the closed fundamental alcove.
pub fn in_fundamental_alcove<S: Scalar>(rd: &RootDatum, p: &Point<S>) -> bool {
    if p.coords.iter().any(|c| c.level() > 1) {
        return false;
    }
    let c = p.real_part();
    (0..rd.rank).all(|i| rd.pair_scalar(&rd.simple_root(i), &c) >= S::zero())
        && rd.pair_scalar(&rd.highest_root, &c) <= S::one()
}

/// Membership without locating: levels `≥ 2` must sit on the coroot lattice.
pub fn in_apartment<S: Scalar>(rd: &RootDatum, p: &Point<S>) -> bool {
    (2..=p.n()).all(|j| {
        p.coords
            .iter()
            .enumerate()
            .all(|(i, c)| (c.at(j).clone() / rd.coroot_scale::<S>(i)).is_integer())
    })
}

pub(crate) fn lex_le<S: Scalar>(a: &LinLex<S>, b: &LinLex<S>) -> bool {
    a.lex_cmp(b) != Ordering::Greater
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::{root_datum, Phi};
    use crate::scalar::ratio;
    use crate::Q;

    fn pt(c: &[(i64, i64)]) -> Point<Q> {
        // (real, ω₂) per coordinate, integers over 2.
        Point::new(c.iter().map(|&(r, w)| LinLex::new(vec![ratio(r, 2), ratio(w, 1)])).collect())
    }

    #[test]
    fn a1_membership() {
        let g = WeylGroup::new(Phi::A1, 2);
        let loc = locate(&g, &pt(&[(1, 2)])).unwrap();
        assert_eq!(loc.rep, vec![ratio(1, 2)]);
        assert_eq!(loc.w, g.translation(vec![vec![0, 1]]));
        assert_eq!(locate(&g, &pt(&[(0, 1)])), Err(ApartmentError::NotInApartment));
        assert_eq!(locate(&g, &pt(&[(0, 0)])).unwrap().w, g.identity());
    }

    #[test]
    fn locate_reproduces_point() {
        for phi in [Phi::A1, Phi::A2, Phi::B2] {
            let g = WeylGroup::new(phi, 2);
            let p = Point::new(
                (0..g.rank())
                    .map(|i| LinLex::new(vec![ratio(7 * i as i64 - 5, 3), Q::from_integer(0.into())]))
                    .collect(),
            );
            let loc = locate(&g, &p).unwrap();
            assert_eq!(g.act(&loc.w, &Point::real(2, loc.rep.clone())), p, "{phi}");
            assert!(in_fundamental_alcove(&g.rd, &Point::real(2, loc.rep)));
        }
    }

    #[test]
    fn face_ties_pick_least() {
        let g = WeylGroup::new(Phi::A1, 1);
        let p = Point::real(1, vec![ratio(1, 1)]);
        let loc = locate(&g, &p).unwrap();
        assert_eq!(loc.rep, vec![ratio(1, 1)]);
        // Both the identity and s_{a,1} carry C̄₀ onto a chamber containing 1.
        assert_eq!(loc.w, g.identity());
    }

    #[test]
    fn distances() {
        let rd = root_datum(Phi::A1);
        let o = pt(&[(0, 0)]);
        let d = dist(&rd, &o, &pt(&[(0, 2)]));
        assert_eq!(d.as_linlex(2), Some(LinLex::from_ints(&[0, 2])));
        assert!(dist2(&rd, &o, &o).is_zero());
    }

    #[test]
    fn parallelogram_exact() {
        let rd = root_datum(Phi::B2);
        let (x, y, z) = (pt(&[(1, 3), (-2, 0)]), pt(&[(5, -1), (3, 2)]), pt(&[(0, 0), (7, 1)]));
        for t in [ratio(1, 2), ratio(1, 3), ratio(0, 1), ratio(1, 1)] {
            assert!(parallelogram_check(&rd, &x, &y, &z, &t));
        }
    }

    #[test]
    fn uniqueness_from_distances() {
        let rd = root_datum(Phi::A2);
        let basis = vec![pt(&[(0, 0), (0, 0)]), pt(&[(2, 0), (0, 0)]), pt(&[(0, 0), (2, 0)])];
        let p = pt(&[(1, 1), (3, 0)]);
        let q = pt(&[(1, 1), (5, 0)]);
        assert!(unique_from_distances(&rd, &basis, &p, &q).unwrap());
        assert!(unique_from_distances(&rd, &basis, &p, &p).unwrap());
        let flat = vec![pt(&[(0, 0), (0, 0)]), pt(&[(2, 0), (0, 0)]), pt(&[(4, 0), (0, 0)])];
        assert_eq!(unique_from_distances(&rd, &flat, &p, &q), Err(ApartmentError::DegenerateBasis));
    }

    #[test]
    fn retraction() {
        let g = WeylGroup::new(Phi::A1, 2);
        let x = pt(&[(1, 0)]);
        let w2 = g.generator("w2").unwrap();
        assert_eq!(retract_tau(&g, &g.identity(), &x).unwrap(), x);
        assert_eq!(retract_tau(&g, &g.identity(), &g.act(&w2, &x)).unwrap(), x);
    }

    #[test]
    fn residue_filter() {
        let rd = root_datum(Phi::A1);
        assert!(residue_point_filter(&rd, &pt(&[(0, 0)]), &pt(&[(1, 0)])));
        assert!(!residue_point_filter(&rd, &pt(&[(0, 0)]), &pt(&[(0, 2)])));
    }
}
