use super::{bruhat_decompose, cartan_decompose, Mat2, Sl2Error};
use crate::apartment::Point;
use crate::hlf::{Valuation, ValuedField};
use crate::lexring::LinLex;
use crate::rootsystem::Phi;
use crate::weyl::{WeylElement, WeylGroup};
use crate::Q;

/// `d(g·o, h·o) = 2m` for the Cartan invariant `m` of `g⁻¹h`.
pub fn building_dist<F: ValuedField>(g: &Mat2<F>, h: &Mat2<F>) -> Result<LinLex<Q>, Sl2Error> {
    let m = cartan_decompose(&g.inv().mul(h))?.m;
    Ok(LinLex::from_ints(&m.omega_coords().iter().map(|e| 2 * e).collect::<Vec<_>>()))
}

/// The vertex `n·o` of the standard apartment of `SL₂`.
pub fn label_point(label: &WeylElement) -> Point<Q> {
    let w = WeylGroup::new(Phi::A1, label.levels());
    Point::new(w.translation_vector(label))
}

/// `ρ(g·o)`: the Bruhat label applied to `o`.
pub fn retract_rho<F: ValuedField>(g: &Mat2<F>) -> Result<Point<Q>, Sl2Error> {
    Ok(label_point(&bruhat_decompose(g)?.label))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apartment::dist2;
    use crate::hlf::{Val2, LS1, LS2};
    use crate::rootsystem::root_datum;
    use crate::sl2::nu_monomial;

    #[test]
    fn distance_examples() {
        let one = LS2::one(5);
        let id = Mat2::identity(&one);
        assert!(building_dist(&id, &id).unwrap().is_zero());
        let d1 = Mat2::diag_t(&one, Val2::new(0, 1));
        assert_eq!(building_dist(&id, &d1).unwrap(), LinLex::from_ints(&[2, 0]));
        let d2 = Mat2::diag_t(&one, Val2::new(1, 0));
        assert_eq!(building_dist(&id, &d2).unwrap(), LinLex::from_ints(&[0, 2]));
        // classical tree distance for pure-t₁ matrices
        let c = Mat2::diag_t(&LS1::one(5), 3);
        assert_eq!(building_dist(&Mat2::identity(&LS1::one(5)), &c).unwrap(), LinLex::from_ints(&[6]));
    }

    #[test]
    fn monomials_agree_with_the_apartment() {
        let one = LS2::one(5);
        let rd = root_datum(Phi::A1);
        let o = Point::zero(1, 2);
        for (j, i) in [(1, 0), (-1, 3), (0, -2), (2, 5)] {
            for n in [Mat2::diag_t(&one, Val2::new(j, i)), Mat2::antidiag(LS2::t(5, j, i)).unwrap()] {
                let p = label_point(&nu_monomial(&n).unwrap());
                assert_eq!(retract_rho(&n).unwrap(), p);
                let d = building_dist(&Mat2::identity(&one), &n).unwrap();
                assert_eq!(dist2(&rd, &o, &p), d.to_poly().square());
            }
        }
    }
}
