//! Building geometry of SL2 checked across modules on seeded samples.

use babel::apartment::dist2;
use babel::hlf::rng_from_seed;
use babel::lexring::lex_cmp;
use babel::render::{render_apartment, render_enclosure};
use babel::rootsystem::{root_datum, Phi};
use babel::sl2::{building_dist, retract_rho, MatrixSampler, SL2};
use babel::suite::figure4_omega;

const SAMPLES: usize = 40;

fn samples(seed: u64) -> Vec<[SL2; 3]> {
    let s = MatrixSampler::default();
    let mut rng = rng_from_seed(seed);
    (0..SAMPLES)
        .filter_map(|_| Some([s.g(&mut rng).ok()?, s.g(&mut rng).ok()?, s.g(&mut rng).ok()?]))
        .collect()
}

#[test]
fn building_distance_is_a_metric() {
    let mut checked = 0;
    for [g, h, k] in samples(11) {
        let (Ok(gh), Ok(hg), Ok(hk), Ok(gk)) =
            (building_dist(&g, &h), building_dist(&h, &g), building_dist(&h, &k), building_dist(&g, &k))
        else {
            continue;
        };
        assert_eq!(gh, hg);
        let sum = &gh.to_poly() + &hk.to_poly();
        assert!(lex_cmp(&gk.to_poly(), &sum).is_le(), "triangle fails: {gk:?} > {gh:?} + {hk:?}");
        match building_dist(&g, &g) {
            Ok(d) => assert!(d.is_zero()),
            Err(e) => assert!(e.is_precision(), "{e:?}"),
        }
        checked += 1;
    }
    assert!(checked >= SAMPLES / 2, "only {checked} samples were decidable");
}

#[test]
fn distance_is_invariant_under_the_stabilizer() {
    let s = MatrixSampler::default();
    let mut rng = rng_from_seed(12);
    let mut checked = 0;
    for _ in 0..SAMPLES {
        let (Ok(g), Ok(h), Ok(k)) = (s.g(&mut rng), s.g(&mut rng), s.k(&mut rng)) else { continue };
        let (Ok(d), Ok(dk)) = (building_dist(&g, &h), building_dist(&g, &h.mul(&k))) else { continue };
        assert_eq!(d, dk);
        checked += 1;
    }
    assert!(checked >= SAMPLES / 2);
}

#[test]
fn retraction_shortens_distances() {
    let rd = root_datum(Phi::A1);
    for [g, h, _] in samples(13) {
        let (Ok(pg), Ok(ph), Ok(d)) = (retract_rho(&g), retract_rho(&h), building_dist(&g, &h)) else { continue };
        assert!(dist2(&rd, &pg, &ph) <= d.to_poly().square());
    }
}

#[test]
fn matrices_survive_json() {
    for [g, _, _] in samples(14) {
        let back = SL2::from_json(&g.to_json(), 5, (6, 12)).unwrap();
        assert!(back.eq_to_precision(&g));
    }
}

#[test]
fn pictures_are_stable() {
    for phi in [Phi::A1, Phi::A2, Phi::B2] {
        assert_eq!(render_apartment(phi), render_apartment(phi));
    }
    let rd = root_datum(Phi::A2);
    let a = render_enclosure(&rd, &figure4_omega()).unwrap();
    assert_eq!(a, render_enclosure(&rd, &figure4_omega()).unwrap());
    assert!(render_enclosure(&root_datum(Phi::A1), &figure4_omega()).is_err());
}
