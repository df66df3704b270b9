//! Seeded sampling of series.
//!
//! Distribution: the valuation `(j, i)` is drawn with `j` and `i` uniform in
//! their ranges. The leading coefficient is uniform in `𝔽_q^×`. Every other
//! coefficient in the precision window is uniform in `𝔽_q`: on the leading
//! level for exponents `i+1 .. P₁`, on each later level `j+1 .. P₂` for
//! exponents `i_lo .. P₁`.

use std::ops::RangeInclusive;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Val2, LS1, LS2};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSpec {
    pub q: u32,
    pub j: RangeInclusive<i64>,
    pub i: RangeInclusive<i64>,
    pub p2: i64,
    pub p1: i64,
}

impl SeriesSpec {
    pub fn new(q: u32, j: RangeInclusive<i64>, i: RangeInclusive<i64>, p2: i64, p1: i64) -> Self {
        SeriesSpec { q, j, i, p2, p1 }
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_level<R: Rng + ?Sized>(rng: &mut R, q: u32, lead: Option<(i64, u32)>, lo: i64, p1: i64) -> LS1 {
    let from = lead.map_or(lo, |(i, _)| i);
    let mut terms = Vec::new();
    if let Some((i, c)) = lead {
        terms.push((i, c as i64));
    }
    for e in from..p1.max(from) {
        if lead.is_some_and(|(i, _)| i == e) {
            continue;
        }
        terms.push((e, rng.gen_range(0..q) as i64));
    }
    LS1::from_terms(q, &terms, p1.max(from + 1))
}

/// Element with valuation in the requested box.
pub fn random_series<R: Rng + ?Sized>(spec: &SeriesSpec, rng: &mut R) -> LS2 {
    let q = spec.q;
    let v = Val2::new(rng.gen_range(spec.j.clone()), rng.gen_range(spec.i.clone()));
    let c0 = rng.gen_range(1..q);
    let lo = *spec.i.start();
    let top = spec.p2.max(v.j + 1);
    let lv = (v.j..top)
        .map(|j| {
            let lead = (j == v.j).then_some((v.i, c0));
            random_level(rng, q, lead, lo, spec.p1)
        })
        .collect();
    LS2::new(q, v.j, lv, top)
}

/// Element of valuation exactly `(0, 0)`.
pub fn random_unit<R: Rng + ?Sized>(q: u32, p2: i64, p1: i64, rng: &mut R) -> LS2 {
    random_series(&SeriesSpec::new(q, 0..=0, 0..=0, p2, p1), rng)
}

/// Element of `F₁` with valuation in `i`.
pub fn random_ls1<R: Rng + ?Sized>(q: u32, i: RangeInclusive<i64>, p1: i64, rng: &mut R) -> LS1 {
    let v = rng.gen_range(i);
    let c0 = rng.gen_range(1..q);
    random_level(rng, q, Some((v, c0)), v, p1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hlf::ValuedField;

    #[test]
    fn deterministic() {
        let s = SeriesSpec::new(5, -1..=1, -2..=2, 6, 12);
        let a = random_series(&s, &mut rng_from_seed(7));
        let b = random_series(&s, &mut rng_from_seed(7));
        assert_eq!(a, b);
    }

    #[test]
    fn valuation_in_range() {
        let s = SeriesSpec::new(5, -1..=1, -2..=2, 6, 12);
        let mut rng = rng_from_seed(1);
        for _ in 0..1000 {
            let v = random_series(&s, &mut rng).val().unwrap();
            assert!(s.j.contains(&v.j) && s.i.contains(&v.i));
        }
    }

    #[test]
    fn units_have_nonzero_lead() {
        let mut rng = rng_from_seed(3);
        for _ in 0..100 {
            let u = random_unit(7, 6, 12, &mut rng);
            assert_eq!(u.val(), Ok(Val2::new(0, 0)));
            assert_ne!(u.leading_coeff().unwrap(), 0);
        }
    }
}
