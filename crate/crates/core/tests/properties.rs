//! Algebraic laws checked on generated inputs.

use std::cmp::Ordering;

use proptest::prelude::*;

use babel::apartment::{dist2, Point};
use babel::hlf::{rng_from_seed, FieldError, ValBound, ValuedField, EXACT, LS2};
use babel::lexring::{lex_cmp, sqrt_sum_cmp, LexPoly, LinLex, SqrtExpr};
use babel::rootsystem::Phi;
use babel::scalar::ratio;
use babel::sl2::{bruhat_decompose, cartan_decompose, MatrixSampler};
use babel::weyl::WeylGroup;
use babel::Q;

fn rational() -> impl Strategy<Value = Q> {
    (-24i64..=24, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

fn linlex(n: usize) -> impl Strategy<Value = LinLex<Q>> {
    prop::collection::vec(rational(), n).prop_map(LinLex::new)
}

fn poly() -> impl Strategy<Value = LexPoly<Q>> {
    (linlex(2), linlex(2), linlex(2)).prop_map(|(a, b, c)| &a.mul_poly(&b) + &c.to_poly())
}

fn exact_series() -> impl Strategy<Value = LS2> {
    prop::collection::vec((-2i64..=3, -3i64..=4, 1i64..=4), 1..6)
        .prop_map(|t| LS2::from_terms(5, &t, EXACT, EXACT))
        .prop_filter("nonzero", |x| !x.is_exact_zero())
}

fn point(rank: usize) -> impl Strategy<Value = Point<Q>> {
    prop::collection::vec(
        (rational(), -3i64..=3).prop_map(|(r, w)| LinLex::new(vec![r, ratio(2 * w, 1)])),
        rank,
    )
    .prop_map(Point::new)
}

fn word(gens: &'static [&'static str]) -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(gens), 0..7).prop_map(|w| w.join(" "))
}

fn ge_min(v: ValBound<babel::hlf::Val2>, a: babel::hlf::Val2, b: babel::hlf::Val2) -> bool {
    match v {
        ValBound::Infinite => true,
        ValBound::Exact(v) | ValBound::AtLeast(v) => v >= a.min(b),
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(128) })]

    #[test]
    fn lex_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn lex_order_is_compatible(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(lex_cmp(&a, &b), lex_cmp(&(&a + &c), &(&b + &c)));
        if a.is_positive() && b.is_positive() {
            prop_assert!((&a * &b).is_positive());
        }
        prop_assert_eq!(lex_cmp(&a, &b), lex_cmp(&b, &a).reverse());
    }

    #[test]
    fn sqrt_sum_matches_floats_on_reals(a in 0i64..400, b in 0i64..400, c in 0i64..1600) {
        let s = |x: i64| SqrtExpr::new(LexPoly::<Q>::from_int(x)).unwrap();
        let lhs = (a as f64).sqrt() + (b as f64).sqrt();
        let rhs = (c as f64).sqrt();
        prop_assume!((lhs - rhs).abs() > 1e-9);
        let want = if lhs > rhs { Ordering::Greater } else { Ordering::Less };
        prop_assert_eq!(sqrt_sum_cmp(&s(a), &s(b), &s(c)).unwrap(), want);
    }

    #[test]
    fn sqrt_sum_matches_floats_with_infinite_part(x in linlex(2), y in linlex(2), z in linlex(2)) {
        // ω₂ evaluated at a large real reproduces the order for small coefficients.
        const M: f64 = 1e6;
        let (a, b, c) = (x.mul_poly(&x), y.mul_poly(&y), z.mul_poly(&z));
        let ev = |l: &LinLex<Q>| {
            use num_traits::ToPrimitive;
            (l.at(1).to_f64().unwrap() + M * l.at(2).to_f64().unwrap()).abs()
        };
        let (lhs, rhs) = (ev(&x) + ev(&y), ev(&z));
        prop_assume!((lhs - rhs).abs() > 1e-6 * (1.0 + rhs));
        let want = if lhs > rhs { Ordering::Greater } else { Ordering::Less };
        let got = sqrt_sum_cmp(&SqrtExpr::new(a).unwrap(), &SqrtExpr::new(b).unwrap(), &SqrtExpr::new(c).unwrap());
        prop_assert_eq!(got.unwrap(), want);
    }

    #[test]
    fn weyl_group_laws(u in word(&["s", "w1", "w2"]), v in word(&["s", "w1", "w2"]), w in word(&["s", "w1", "w2"]), p in point(1), q in point(1)) {
        let g = WeylGroup::new(Phi::A1, 2);
        let (a, b, c) = (g.eval_word(&u).unwrap(), g.eval_word(&v).unwrap(), g.eval_word(&w).unwrap());
        let ab = g.compose(&a, &b).unwrap();
        prop_assert_eq!(g.compose(&ab, &c).unwrap(), g.compose(&a, &g.compose(&b, &c).unwrap()).unwrap());
        prop_assert_eq!(g.compose(&a, &g.inverse(&a).unwrap()).unwrap(), g.identity());
        prop_assert_eq!(g.act(&ab, &p), g.act(&a, &g.act(&b, &p)));
        prop_assert_eq!(dist2(&g.rd, &g.act(&a, &p), &g.act(&a, &q)), dist2(&g.rd, &p, &q));
    }

    #[test]
    fn rank2_weyl_isometries(u in word(&["s1", "s2", "w1", "w2"]), p in point(2), q in point(2)) {
        for phi in [Phi::A2, Phi::B2] {
            let g = WeylGroup::new(phi, 2);
            let a = g.eval_word(&u).unwrap();
            prop_assert_eq!(dist2(&g.rd, &g.act(&a, &p), &g.act(&a, &q)), dist2(&g.rd, &p, &q));
        }
    }

    #[test]
    fn valuation_is_additive(x in exact_series(), y in exact_series()) {
        let (vx, vy) = (x.val().unwrap(), y.val().unwrap());
        prop_assert_eq!(x.mul(&y).val().unwrap(), vx + vy);
        prop_assert_eq!(x.inv().unwrap().val().unwrap(), -vx);
    }

    #[test]
    fn valuation_is_ultrametric(x in exact_series(), y in exact_series()) {
        let (vx, vy) = (x.val().unwrap(), y.val().unwrap());
        prop_assert!(ge_min(x.add(&y).val_bound(), vx, vy));
        prop_assert!(ge_min(x.sub(&y).val_bound(), vx, vy));
        if vx != vy {
            prop_assert_eq!(x.add(&y).val().unwrap(), vx.min(vy));
        }
    }

    #[test]
    fn truncation_is_sound(x in exact_series(), y in exact_series(), p2 in 0i64..4, p1 in 0i64..5) {
        let cut = |z: &LS2| z.with_prec(p2).with_prec1(p1);
        let (xc, yc) = (cut(&x), cut(&y));
        prop_assert!(xc.mul(&yc).eq_to_precision(&x.mul(&y)));
        prop_assert!(xc.add(&yc).eq_to_precision(&x.add(&y)));
        match xc.inv() {
            Ok(i) => prop_assert!(i.eq_to_precision(&x.inv_capped(12, 24).unwrap())),
            Err(e) => prop_assert!(matches!(e, FieldError::PrecisionExhausted | FieldError::ZeroToPrecision), "{e:?}"),
        }
    }

    #[test]
    fn decompositions_round_trip(seed in any::<u64>()) {
        let s = MatrixSampler::default();
        let mut rng = rng_from_seed(seed);
        let g = s.g(&mut rng).unwrap();
        match bruhat_decompose(&g) {
            Ok(d) => prop_assert!(d.product().eq_to_precision(&g)),
            Err(e) => prop_assert!(e.is_precision()),
        }
        match cartan_decompose(&g) {
            Ok(c) => prop_assert!(c.product().eq_to_precision(&g)),
            Err(e) => prop_assert!(e.is_precision()),
        }
    }
}
