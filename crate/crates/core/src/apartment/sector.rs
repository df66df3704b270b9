//! i-level sectors `x + 𝐃ᵢ` with the dominant direction.
//!
//! `𝐃ᵢ` is taken as the points `d ∈ Σ` with no component above level `i + 1`,
//! `(αₖ, d) ≥ 0` for every simple root and `(θ, d) ≤ ω_{i+1}`. For `i = n`
//! only dominance remains.

use std::cmp::Ordering;

use super::{dist2, in_apartment, lex_le, ApartmentError, Point};
use crate::lexring::LinLex;
use crate::rootsystem::RootDatum;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Sector<S> {
    pub apex: Point<S>,
    pub level: usize,
}

impl<S: Scalar> Sector<S> {
    pub fn new(apex: Point<S>, level: usize) -> Self {
        assert!(level <= apex.n(), "sector level exceeds apartment level");
        Sector { apex, level }
    }
}

fn in_direction<S: Scalar>(rd: &RootDatum, level: usize, d: &Point<S>) -> bool {
    let n = d.n();
    if level < n && d.coords.iter().any(|c| (level + 2..=n).any(|j| !c.at(j).is_zero())) {
        return false;
    }
    let zero = LinLex::zero(n);
    if (0..rd.rank).any(|k| rd.pair(&rd.simple_root(k), &d.coords).lex_cmp(&zero) == Ordering::Less) {
        return false;
    }
    level == n || lex_le(&rd.pair(&rd.highest_root, &d.coords), &LinLex::omega(n, level + 1))
}

pub fn sector_contains<S: Scalar>(rd: &RootDatum, s: &Sector<S>, z: &Point<S>) -> bool {
    in_apartment(rd, z) && in_direction(rd, s.level, &z.sub(&s.apex))
}

/// Intersection of two sectors of the same level and direction.
pub fn sector_intersect<S: Scalar>(rd: &RootDatum, a: &Sector<S>, b: &Sector<S>) -> Result<Sector<S>, ApartmentError> {
    if a.level != b.level {
        return Err(ApartmentError::PreconditionViolated("sector levels differ".into()));
    }
    let (i, n) = (a.level, a.apex.n());
    if i < n && (i + 1..=n).any(|j| a.apex.level_part(j) != b.apex.level_part(j)) {
        return Err(ApartmentError::Disjoint);
    }
    // Join in the coordinates yₖ = (αₖ, ·), level by level through the Gram inverse.
    let ya: Vec<LinLex<S>> = (0..rd.rank).map(|k| rd.pair(&rd.simple_root(k), &a.apex.coords)).collect();
    let yb: Vec<LinLex<S>> = (0..rd.rank).map(|k| rd.pair(&rd.simple_root(k), &b.apex.coords)).collect();
    let y: Vec<LinLex<S>> = ya.iter().zip(&yb).map(|(p, q)| p.max(q)).collect();
    let levels: Vec<Vec<S>> = (1..=n)
        .map(|j| rd.from_pairings(&y.iter().map(|c| c.at(j).clone()).collect::<Vec<_>>()))
        .collect();
    let apex = Point::from_levels(&levels);
    if !in_apartment(rd, &apex) {
        return Err(ApartmentError::ApexOutside);
    }
    let out = Sector { apex, level: i };
    debug_assert!(apex_distance_ok(rd, a, b));
    Ok(out)
}

/// Apices of intersecting i-level sectors are at distance in `ⁱ*ℝ`.
pub fn apex_distance_ok<S: Scalar>(rd: &RootDatum, a: &Sector<S>, b: &Sector<S>) -> bool {
    dist2(rd, &a.apex, &b.apex).level() <= a.level.max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::{root_datum, Phi};
    use crate::scalar::ratio;
    use crate::Q;

    fn a1(r: (i64, i64), w: i64) -> Point<Q> {
        Point::new(vec![LinLex::new(vec![ratio(r.0, r.1), ratio(w, 1)])])
    }

    #[test]
    fn a1_sectors() {
        let rd = root_datum(Phi::A1);
        let aff = Sector::new(a1((0, 1), 0), 1);
        assert!(sector_contains(&rd, &aff, &a1((5, 1), 0)));
        assert!(!sector_contains(&rd, &aff, &a1((-1, 2), 0)));
        assert!(!sector_contains(&rd, &aff, &a1((0, 1), 2)));
        let full = Sector::new(a1((0, 1), 0), 2);
        assert!(sector_contains(&rd, &full, &a1((-7, 1), 2)));
        assert!(!sector_contains(&rd, &full, &a1((7, 1), -2)));
        assert!(!sector_contains(&rd, &full, &a1((7, 1), 1)));
    }

    #[test]
    fn intersections() {
        let rd = root_datum(Phi::A1);
        let s = Sector::new(a1((1, 3), 0), 1);
        assert_eq!(sector_intersect(&rd, &s, &s).unwrap(), s);
        let t = Sector::new(a1((5, 2), 0), 1);
        assert_eq!(sector_intersect(&rd, &s, &t).unwrap().apex, a1((5, 2), 0));
        let far = Sector::new(a1((0, 1), 2), 1);
        assert_eq!(sector_intersect(&rd, &s, &far), Err(ApartmentError::Disjoint));
        let (u, v) = (Sector::new(a1((0, 1), 0), 2), Sector::new(a1((0, 1), 2), 2));
        let j = sector_intersect(&rd, &u, &v).unwrap();
        assert_eq!(j.apex, a1((0, 1), 2));
        assert!(apex_distance_ok(&rd, &u, &v));
        // Witness scan: points of the intersection are exactly the points of the join.
        for w in -2..=4 {
            for r in -3..=3 {
                let z = a1((r, 1), 2 * w);
                let both = sector_contains(&rd, &u, &z) && sector_contains(&rd, &v, &z);
                assert_eq!(both, sector_contains(&rd, &j, &z), "{z:?}");
            }
        }
    }

    #[test]
    fn chambers_are_level_zero() {
        let rd = root_datum(Phi::B2);
        let c0 = Sector::new(Point::zero(2, 2), 0);
        let v = rd.alcove_vertices::<Q>();
        for x in v {
            assert!(sector_contains(&rd, &c0, &Point::real(2, x)));
        }
        assert!(!sector_contains(&rd, &c0, &Point::real(2, vec![ratio(1, 1), ratio(1, 1)])));
    }
}
