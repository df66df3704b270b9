//! Vertex fixers `P̂_x` and the product check on four collinear vertices.
//!
//! The vertex `x = 2λ` of the standard apartment is `D(λ)·o` with
//! `D(λ) = diag(t^{−λ}, t^{λ})`, and `P̂_x = D(λ)·K·D(λ)⁻¹` is cut out by
//! `v(a), v(d) ≥ 0`, `v(b) ≥ −x`, `v(c) ≥ x`.

use rand::Rng;
use serde::Serialize;

use super::{building_dist, Mat2, MatrixSampler, Sl2Error, SL2};
use crate::hlf::{rng_from_seed, Val2, ValuedField, LS2};

pub const ORBIT_ASSUMPTION: &str =
    "orbit oracle: g ∈ P_v·P_w is decided by d(v, g·w) = d(v, w); this relies on strong transitivity and is an assumption";

fn half(x: Val2) -> Result<Val2, Sl2Error> {
    if x.j % 2 != 0 || x.i % 2 != 0 {
        return Err(Sl2Error::InvalidConfiguration(format!("{x} is not a special vertex")));
    }
    Ok(Val2::new(x.j / 2, x.i / 2))
}

/// `D(λ)` for the vertex `x = 2λ`.
pub fn translation_matrix(q: u32, x: Val2) -> Result<SL2, Sl2Error> {
    Ok(Mat2::diag_t(&LS2::one(q), -half(x)?))
}

pub fn fixer_contains(x: Val2, g: &SL2) -> Result<bool, Sl2Error> {
    half(x)?;
    let zero = Val2::new(0, 0);
    Ok(g.a.val_bound().ge(zero)?
        && g.d.val_bound().ge(zero)?
        && g.b.val_bound().ge(-x)?
        && g.c.val_bound().ge(x)?
        && g.det_is_one())
}

/// `g ∈ P̂_v·P̂_w` decided by `d(v, g·w) = d(v, w)`.
pub fn orbit_oracle(v: Val2, w: Val2, g: &SL2) -> Result<bool, Sl2Error> {
    let q = g.a.q();
    let (dv, dw) = (translation_matrix(q, v)?, translation_matrix(q, w)?);
    Ok(building_dist(&dv, &g.mul(&dw))? == building_dist(&dv, &dw)?)
}

/// `p ∈ P̂_x ∩ P̂_y` as `[[1, β], [0, 1]]·[[1, 0], [γ, 1]]·diag(u, u⁻¹)`.
fn sample_fixer<R: Rng + ?Sized>(s: &MatrixSampler, x: Val2, y: Val2, rng: &mut R) -> Result<SL2, Sl2Error> {
    let beta = s.at_least((-x).max(-y), rng);
    let gamma = s.at_least(x.max(y), rng);
    let u = Mat2::diag(s.unit(rng))?;
    Ok(Mat2::upper(beta).mul(&Mat2::lower(gamma)).mul(&u))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixerReport {
    pub samples: usize,
    pub passed: usize,
    pub failures: Vec<String>,
    pub precision_failures: usize,
    pub assumption_based: bool,
    pub assumption: &'static str,
}

impl FixerReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty() && self.passed == self.samples
    }
}

fn between(lo: Val2, mid: Val2, hi: Val2) -> bool {
    lo.min(hi) <= mid && mid <= lo.max(hi)
}

fn abs(v: Val2) -> Val2 {
    v.max(-v)
}

/// Samples `p ∈ P̂_x ∩ P̂_y`, `p′ ∈ P̂_z ∩ P̂_u` and checks `pp′ ∈ P̂_xP̂_u ∩ P̂_yP̂_z`.
pub fn fixer_product_check(
    s: &MatrixSampler,
    [x, y, z, u]: [Val2; 4],
    samples: usize,
    seed: u64,
) -> Result<FixerReport, Sl2Error> {
    for v in [x, y, z, u] {
        half(v)?;
    }
    if !between(x, y, u) || !between(x, z, u) || abs(y - x) > abs(z - x) {
        return Err(Sl2Error::InvalidConfiguration("need y, z ∈ [x, u] with d(x, y) ≤ d(x, z)".into()));
    }
    let mut rng = rng_from_seed(seed);
    let mut rep = FixerReport {
        samples: 0,
        passed: 0,
        failures: Vec::new(),
        precision_failures: 0,
        assumption_based: true,
        assumption: ORBIT_ASSUMPTION,
    };
    for _ in 0..samples {
        let k: u64 = rng.gen();
        let mut r = rng_from_seed(k);
        let mut run = || -> Result<Option<String>, Sl2Error> {
            let p = sample_fixer(s, x, y, &mut r)?;
            let p2 = sample_fixer(s, z, u, &mut r)?;
            if !(fixer_contains(x, &p)? && fixer_contains(y, &p)? && fixer_contains(z, &p2)? && fixer_contains(u, &p2)?) {
                return Ok(Some(format!("seed {k}: sampled fixer outside its group")));
            }
            let g = p.mul(&p2);
            if !orbit_oracle(x, u, &g)? {
                return Ok(Some(format!("seed {k}: pp' not in P_x P_u")));
            }
            if !orbit_oracle(y, z, &g)? {
                return Ok(Some(format!("seed {k}: pp' not in P_y P_z")));
            }
            Ok(None)
        };
        match run() {
            Ok(None) => {
                rep.samples += 1;
                rep.passed += 1;
            }
            Ok(Some(msg)) => {
                rep.samples += 1;
                rep.failures.push(msg);
            }
            Err(e) if e.is_precision() => rep.precision_failures += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(rep)
}

/// `x = 0`, `y = 2`, `z = 2ω₂ − 2`, `u = 2ω₂`: the fixers `K`, `w₁Kw₁`, `w₂w₁Kw₁w₂`, `w₂Kw₂`.
pub fn paper_instance() -> [Val2; 4] {
    [Val2::new(0, 0), Val2::new(0, 2), Val2::new(2, -2), Val2::new(2, 0)]
}
