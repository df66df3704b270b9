//! Half-spaces `α_{a,k} = {v : (a,v) + k ≥ 0}` and the enclosure `cl(Ω)`.

use std::cmp::Ordering;

use super::{in_apartment, ApartmentError, Point};
use crate::lexring::LinLex;
use crate::rootsystem::RootDatum;
use crate::scalar::Scalar;
use crate::weyl::{WeylElement, WeylGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSpace {
    pub root: Vec<i64>,
    /// `k[l]` is the `ω_{l+1}` coefficient.
    pub k: Vec<i64>,
}

impl HalfSpace {
    pub fn contains<S: Scalar>(&self, rd: &RootDatum, p: &Point<S>) -> bool {
        let k = LinLex::<S>::from_ints(&self.k);
        (&rd.pair(&self.root, &p.coords) + &k).signum() != Ordering::Less
    }
}

/// Is there `k ∈ ℤⁿ` with `u ≤ k < v` in the lexicographic order?
///
/// Above the first differing coordinate `k` must copy `u`, so those
/// coordinates must be integers. At the differing coordinate any integer
/// strictly inside works; an endpoint works only when a lower coordinate is
/// left to push `k` back inside the interval.
pub fn lattice_point_in<S: Scalar>(u: &LinLex<S>, v: &LinLex<S>) -> bool {
    let n = u.n();
    for j in (1..=n).rev() {
        let (a, b) = (u.at(j), v.at(j));
        match a.partial_cmp(b).expect("comparable") {
            Ordering::Equal => {
                if !a.is_integer() {
                    return false;
                }
            }
            Ordering::Greater => return false,
            Ordering::Less => {
                let c = a.ceil();
                return if j == 1 { c < *b } else { c <= *b };
            }
        }
    }
    false
}

/// `z ∈ cl(Ω)`: no wall `H_{a,k}` separates `z` from `Ω`.
pub fn enclosure_contains<S: Scalar>(rd: &RootDatum, omega: &[Point<S>], z: &Point<S>) -> Result<bool, ApartmentError> {
    if omega.is_empty() {
        return Err(ApartmentError::EmptyOmega);
    }
    if omega.iter().any(|x| !in_apartment(rd, x)) {
        return Err(ApartmentError::NotInApartment);
    }
    if !in_apartment(rd, z) {
        return Ok(false);
    }
    for a in rd.roots() {
        let lo = omega
            .iter()
            .map(|x| rd.pair(&a, &x.coords))
            .reduce(|m, y| m.min(&y))
            .expect("non-empty");
        let az = rd.pair(&a, &z.coords);
        // α_{a,k} ⊇ Ω iff k ≥ −lo; it misses z iff k < −(a,z).
        if lattice_point_in(&-lo, &-az) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClFixOutcome<S> {
    pub checked: usize,
    pub witness: Option<Point<S>>,
}

impl<S> ClFixOutcome<S> {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Asserts that `w` fixes every candidate lying in `cl(Ω)`, given that it fixes `Ω`.
pub fn cl_fix_check<S: Scalar>(
    g: &WeylGroup,
    w: &WeylElement,
    omega: &[Point<S>],
    candidates: &[Point<S>],
) -> Result<ClFixOutcome<S>, ApartmentError> {
    if let Some(p) = omega.iter().find(|p| g.act(w, p) != **p) {
        return Err(ApartmentError::PreconditionViolated(format!("element moves {:?}", p.coords)));
    }
    let mut checked = 0;
    for z in candidates {
        if enclosure_contains(&g.rd, omega, z)? {
            checked += 1;
            if g.act(w, z) != *z {
                return Ok(ClFixOutcome { checked, witness: Some(z.clone()) });
            }
        }
    }
    Ok(ClFixOutcome { checked, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::{root_datum, Phi};
    use crate::scalar::ratio;
    use crate::Q;

    fn l(c: &[(i64, i64)]) -> LinLex<Q> {
        LinLex::new(c.iter().map(|&(p, q)| ratio(p, q)).collect())
    }

    /// Brute force over a box of integer vectors.
    fn brute(u: &LinLex<Q>, v: &LinLex<Q>) -> bool {
        (-6..=6).any(|k1| {
            (-6..=6).any(|k2| {
                let k = LinLex::from_ints(&[k1, k2]);
                k.lex_cmp(u) != Ordering::Less && k.lex_cmp(v) == Ordering::Less
            })
        })
    }

    #[test]
    fn lattice_points_match_brute_force() {
        let vals = [(-3, 2), (-1, 1), (0, 1), (1, 2), (1, 1), (2, 1)];
        for &a in &vals {
            for &b in &vals {
                for &c in &vals {
                    for &d in &vals {
                        let (u, v) = (l(&[a, b]), l(&[c, d]));
                        assert_eq!(lattice_point_in(&u, &v), brute(&u, &v), "{u:?} {v:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn omega_is_enclosed() {
        let rd = root_datum(Phi::A2);
        let x = Point::new(vec![l(&[(1, 3), (1, 1)]), l(&[(0, 1), (-1, 2)])]);
        let y = Point::new(vec![l(&[(0, 1), (0, 1)]), l(&[(2, 1), (0, 1)])]);
        let om = vec![x.clone(), y.clone()];
        assert!(enclosure_contains(&rd, &om, &x).unwrap());
        assert!(enclosure_contains(&rd, &om, &y).unwrap());
        assert_eq!(enclosure_contains::<Q>(&rd, &[], &x), Err(ApartmentError::EmptyOmega));
    }

    #[test]
    fn higher_level_points_are_separated() {
        let rd = root_datum(Phi::A1);
        let om = vec![Point::new(vec![l(&[(0, 1), (0, 1)])]), Point::new(vec![l(&[(1, 3), (0, 1)])])];
        let far = Point::new(vec![l(&[(1, 6), (2, 1)])]);
        assert!(!enclosure_contains(&rd, &om, &far).unwrap());
        let mid = Point::new(vec![l(&[(1, 6), (0, 1)])]);
        assert!(enclosure_contains(&rd, &om, &mid).unwrap());
    }

    #[test]
    fn half_space_membership() {
        let rd = root_datum(Phi::A1);
        let h = HalfSpace { root: vec![1], k: vec![0, 1] };
        assert!(h.contains(&rd, &Point::new(vec![l(&[(-100, 1), (0, 1)])])));
        assert!(!h.contains(&rd, &Point::new(vec![l(&[(0, 1), (-2, 1)])])));
    }

    #[test]
    fn wall_reflection_fixes_enclosure() {
        let g = WeylGroup::new(Phi::A2, 2);
        // Two points on the wall (a, v) = 0: v = t·(a + 2b)/… with (a, a+2b) = 4 − 4 = 0.
        let p1 = Point::new(vec![l(&[(1, 1), (0, 1)]), l(&[(2, 1), (0, 1)])]);
        let p2 = Point::new(vec![l(&[(-1, 2), (0, 1)]), l(&[(-1, 1), (0, 1)])]);
        let s = g.reflection(&[1, 0], &[0, 0]).unwrap();
        let cands: Vec<Point<Q>> = (-4..=4)
            .flat_map(|i| (-4..=4).map(move |j| Point::new(vec![l(&[(i, 4), (0, 1)]), l(&[(j, 4), (0, 1)])])))
            .collect();
        let out = cl_fix_check(&g, &s, &[p1, p2], &cands).unwrap();
        assert!(out.passed());
        assert!(out.checked >= 3);
    }

    #[test]
    fn cl_fix_precondition() {
        let g = WeylGroup::new(Phi::A1, 2);
        let om = vec![Point::new(vec![l(&[(1, 4), (0, 1)])]), Point::new(vec![l(&[(3, 4), (0, 1)])])];
        let s = g.generator("s").unwrap();
        assert!(matches!(cl_fix_check(&g, &s, &om, &[]), Err(ApartmentError::PreconditionViolated(_))));
        assert!(cl_fix_check(&g, &g.identity(), &om, &om).unwrap().passed());
    }
}
