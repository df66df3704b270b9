//! Circumcenters of finite sets inside one real component.

use super::{dist2, ApartmentError, Point};
use crate::lexring::{LexPoly, LinLex};
use crate::rootsystem::RootDatum;
use crate::scalar::{half, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Circumcenter<S> {
    pub center: Point<S>,
    pub radius2: LexPoly<S>,
}

/// `r(c, B)²`.
pub fn circumradius2<S: Scalar>(rd: &RootDatum, c: &Point<S>, b: &[Point<S>]) -> LexPoly<S> {
    b.iter()
        .map(|p| dist2(rd, c, p))
        .reduce(|m, d| if d > m { d } else { m })
        .unwrap_or_else(LexPoly::zero)
}

fn norm2<S: Scalar>(rd: &RootDatum, v: &[S]) -> S {
    let mut acc = S::zero();
    for i in 0..rd.rank {
        for j in 0..rd.rank {
            acc = acc + S::from_int(rd.gram[i][j]) * v[i].clone() * v[j].clone();
        }
    }
    acc
}

fn sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

fn midpoint<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| (x.clone() + y.clone()) * half::<S>()).collect()
}

/// Point equidistant from three points of a rank-2 component.
fn circum3<S: Scalar>(rd: &RootDatum, p: &[S], q: &[S], r: &[S]) -> Option<Vec<S>> {
    // (q − p)ᵀG c = (|q|² − |p|²)/2, same for r.
    let row = |x: &[S]| -> (Vec<S>, S) {
        let d = sub(x, p);
        let g: Vec<S> = (0..2)
            .map(|j| (0..2).fold(S::zero(), |a, i| a + d[i].clone() * S::from_int(rd.gram[i][j])))
            .collect();
        (g, (norm2(rd, x) - norm2(rd, p)) * half::<S>())
    };
    let ((a, e), (b, f)) = (row(q), row(r));
    let det = a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone();
    if det.is_zero() {
        return None;
    }
    Some(vec![
        (e.clone() * b[1].clone() - a[1].clone() * f.clone()) / det.clone(),
        (a[0].clone() * f - e * b[0].clone()) / det,
    ])
}

/// Exact minimum enclosing ball by the incremental Welzl scheme.
pub fn circumcenter<S: Scalar>(rd: &RootDatum, b: &[Point<S>]) -> Result<Circumcenter<S>, ApartmentError> {
    let first = b.first().ok_or(ApartmentError::EmptyOmega)?;
    let n = first.n();
    if b.iter().any(|p| (2..=n).any(|j| p.level_part(j) != first.level_part(j))) {
        return Err(ApartmentError::MixedLevels);
    }
    let pts: Vec<Vec<S>> = b.iter().map(Point::real_part).collect();
    let outside = |c: &[S], r2: &S, x: &[S]| norm2(rd, &sub(x, c)) > *r2;
    let mut c = pts[0].clone();
    let mut r2 = S::zero();
    for i in 1..pts.len() {
        if !outside(&c, &r2, &pts[i]) {
            continue;
        }
        c = pts[i].clone();
        r2 = S::zero();
        for j in 0..i {
            if !outside(&c, &r2, &pts[j]) {
                continue;
            }
            c = midpoint(&pts[i], &pts[j]);
            r2 = norm2(rd, &sub(&pts[i], &c));
            for k in 0..j {
                if !outside(&c, &r2, &pts[k]) {
                    continue;
                }
                c = circum3(rd, &pts[i], &pts[j], &pts[k]).ok_or(ApartmentError::DegenerateBasis)?;
                r2 = norm2(rd, &sub(&pts[i], &c));
            }
        }
    }
    let center = Point::new(
        (0..rd.rank)
            .map(|i| {
                let mut l = first.coords[i].clone();
                l.set(1, c[i].clone());
                l
            })
            .collect(),
    );
    let radius2 = circumradius2(rd, &center, b);
    Ok(Circumcenter { center, radius2 })
}

/// Midpoint certificate showing two distinct candidates cannot both be optimal.
#[derive(Clone, Debug, PartialEq)]
pub struct Cat0Witness<S> {
    pub midpoint: Point<S>,
    pub radius2_mid: LexPoly<S>,
    pub radius2_claimed: LexPoly<S>,
    /// `R² − d²(c₁,c₂)/4`.
    pub bound: LexPoly<S>,
}

impl<S: Scalar> Cat0Witness<S> {
    /// `r(m)² ≤ R² − t(1−t)d²(c₁,c₂) < R²` at `t = ½`.
    pub fn contradicts(&self) -> bool {
        self.radius2_mid <= self.bound && self.bound < self.radius2_claimed
    }
}

/// For `c₁ ≠ c₂` with equal radius `R`, the midpoint does strictly better.
pub fn cat0_witness<S: Scalar>(
    rd: &RootDatum,
    b: &[Point<S>],
    c1: &Point<S>,
    c2: &Point<S>,
) -> Option<Cat0Witness<S>> {
    if c1 == c2 {
        return None;
    }
    let (r1, r2) = (circumradius2(rd, c1, b), circumradius2(rd, c2, b));
    if r1 != r2 {
        return None;
    }
    let h = half::<S>();
    let midpoint = c1.lerp(c2, &h);
    let quarter = h.clone() * h;
    let bound = &r1 - &dist2(rd, c1, c2).scale(&quarter);
    Some(Cat0Witness { radius2_mid: circumradius2(rd, &midpoint, b), midpoint, radius2_claimed: r1, bound })
}

impl<S: Scalar> Point<S> {
    /// Same point shifted by a real vector.
    pub fn shift_real(&self, v: &[S]) -> Self {
        Point {
            coords: self
                .coords
                .iter()
                .zip(v)
                .map(|(c, d)| c + &LinLex::real(c.n(), d.clone()))
                .collect(),
        }
    }
}
