//! Seeded samplers for group elements.
//!
//! Random `g`: `a, b, c` drawn with `j ∈ [−1, 1]`, `i ∈ [−2, 2]` and `d` solved
//! from the determinant; one draw in ten uses `a = 0`. Iwahori elements are
//! `[[1, x], [0, 1]]·[[1, 0], [y, 1]]·diag(u, u⁻¹)` with `x ∈ O_F`, `y ∈ t₁O_F`
//! and `u` a unit; `K` elements are `β₁·s^e·β₂`.

use rand::Rng;

use super::{Mat2, Sl2Error, SL2};
use crate::hlf::{random_series, random_unit, SeriesSpec, Val2, ValuedField, DEFAULT_P1, DEFAULT_P2, DEFAULT_Q, LS2};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixSampler {
    pub q: u32,
    pub p2: i64,
    pub p1: i64,
}

impl Default for MatrixSampler {
    fn default() -> Self {
        MatrixSampler { q: DEFAULT_Q, p2: DEFAULT_P2, p1: DEFAULT_P1 }
    }
}

impl MatrixSampler {
    pub fn new(q: u32, p2: i64, p1: i64) -> Self {
        MatrixSampler { q, p2, p1 }
    }

    pub fn series<R: Rng + ?Sized>(&self, j: (i64, i64), i: (i64, i64), rng: &mut R) -> LS2 {
        random_series(&SeriesSpec::new(self.q, j.0..=j.1, i.0..=i.1, self.p2, self.p1), rng)
    }

    pub fn unit<R: Rng + ?Sized>(&self, rng: &mut R) -> LS2 {
        random_unit(self.q, self.p2, self.p1, rng)
    }

    /// Element with `v ≥ min`, exactly zero one time in eight.
    pub fn at_least<R: Rng + ?Sized>(&self, min: Val2, rng: &mut R) -> LS2 {
        if rng.gen_ratio(1, 8) {
            return LS2::exact_zero(self.q);
        }
        self.series((0, 1), (0, 2), rng).shift(min)
    }

    pub fn g<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<SL2, Sl2Error> {
        let mut draw = || self.series((-1, 1), (-2, 2), rng);
        let (a, b, c) = (draw(), draw(), draw());
        if rng.gen_ratio(1, 10) {
            let z = LS2::exact_zero(self.q);
            let ci = b.inv()?.neg();
            return Ok(Mat2::new(z, b, ci, c));
        }
        Ok(Mat2::from_abc(a, b, c)?)
    }

    pub fn b<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<SL2, Sl2Error> {
        let x = self.at_least(Val2::new(0, 0), rng);
        let y = self.at_least(Val2::new(0, 1), rng);
        let u = Mat2::diag(self.unit(rng))?;
        Ok(Mat2::upper(x).mul(&Mat2::lower(y)).mul(&u))
    }

    pub fn k<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<SL2, Sl2Error> {
        let mut m = self.b(rng)?;
        if rng.gen_bool(0.5) {
            m = m.mul(&Mat2::s(&LS2::one(self.q)));
        }
        Ok(m.mul(&self.b(rng)?))
    }

    /// `β·n·β′` for Iwahori `β, β′`.
    pub fn in_cell<R: Rng + ?Sized>(&self, n: &SL2, rng: &mut R) -> Result<SL2, Sl2Error> {
        Ok(self.b(rng)?.mul(n).mul(&self.b(rng)?))
    }

    /// Element of `SL₂(𝒪_F)`, `𝒪_F = F₁[[t₂]]`.
    pub fn scr_of<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<SL2, Sl2Error> {
        let mut draw = || self.series((0, 1), (-2, 2), rng);
        let (x1, y, x2) = (draw(), draw(), draw());
        let u = Mat2::diag(self.series((0, 0), (-2, 2), rng))?;
        Ok(Mat2::upper(x1).mul(&Mat2::lower(y)).mul(&Mat2::upper(x2)).mul(&u))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hlf::rng_from_seed;
    use crate::sl2::Subgroup;

    #[test]
    fn samples_land_where_claimed() {
        let s = MatrixSampler::default();
        let mut rng = rng_from_seed(11);
        for _ in 0..50 {
            assert!(s.g(&mut rng).unwrap().det_is_one());
            assert_eq!(Subgroup::B.contains(&s.b(&mut rng).unwrap()), Ok(true));
            assert_eq!(Subgroup::K.contains(&s.k(&mut rng).unwrap()), Ok(true));
            let h = s.scr_of(&mut rng).unwrap();
            assert!(h.entries().iter().all(|x| x.in_scr_of() == Ok(true)));
        }
    }
}
