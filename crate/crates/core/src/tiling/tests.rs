use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::assets;
use crate::hyperbolic::{twist_flow, MarkedSurface};
use crate::sampling::random_point;
use crate::topology::CutComponent;

fn surface(key: &str) -> Arc<MarkedSurface> {
    MarkedSurface::new(assets::decomposition(key).unwrap()).unwrap()
}

fn point(s: &Arc<MarkedSurface>, lengths: &[f64], twists: &[f64]) -> FNPoint {
    FNPoint::from_lengths_twists(s.clone(), lengths, twists).unwrap()
}

/// Every letter sequence up to `bound`, evaluated without reduction, kept when the trace
/// is below the ε cutoff; returns canonical primitive non-peripheral classes.
fn brute_force_short(x: &FNPoint, epsilon: f64, bound: u32) -> Vec<Word> {
    let hol = build_holonomy(x).unwrap();
    let k = hol.generators().len() as u32 * 2;
    let mut out = Vec::new();
    for len in 1..=bound {
        for code in 0..k.pow(len) {
            let mut c = code;
            let mut v = Vec::new();
            for _ in 0..len {
                v.push(Letter::new((c % k / 2) as u16, c % 2 == 1));
                c /= k;
            }
            let w = Word(v);
            let m = hol.evaluate(&w);
            let t: f64 = m.trace().abs().into();
            if t > 2.0 + 1e-12 && 2.0 * (0.5 * t).acosh() < epsilon {
                let c = w.canonical();
                if !c.is_proper_power() && !x.surface().is_peripheral(&c) && !out.contains(&c) {
                    out.push(c);
                }
            }
        }
    }
    out
}

#[test]
fn one_holed_torus_short_curve() {
    let s = surface("s1_1");
    let x = point(&s, &[0.05], &[0.013]);
    let r = enumerate_short_geodesics(&x, 0.1, 8).unwrap();
    assert!(r.complete);
    assert_eq!(r.curves.len(), 1);
    assert_eq!(s.format_word(r.curves[0].class.word()), "a");
    assert!((r.curves[0].length - 0.05).abs() < 1e-10);
    let oracle = brute_force_short(&x, 0.1, 8);
    assert_eq!(oracle, vec![r.curves[0].class.word().clone()]);
}

#[test]
fn thick_point_has_no_short_curves() {
    let s = surface("s0_5");
    let x = point(&s, &[0.8, 1.3], &[0.2, -0.4]);
    let r = enumerate_short_geodesics(&x, 0.1, 5).unwrap();
    assert!(r.curves.is_empty());
    assert!(r.complete);
    assert_eq!(classify_tile(&x, 0.1).unwrap(), Tile::Thick);
}

#[test]
fn epsilon_above_collar_constant_is_rejected() {
    let s = surface("s1_1");
    let x = point(&s, &[0.5], &[0.0]);
    assert!(matches!(enumerate_short_geodesics(&x, 1.8, 4), Err(Error::EpsilonOutOfRange { .. })));
    assert!(matches!(enumerate_short_geodesics(&x, 0.1, 0), Err(Error::InvalidWordBound)));
    assert!(matches!(classify_tile(&x, 0.2), Err(Error::EpsilonOutOfRange { .. })));
}

#[test]
fn closed_surface_duplicates_are_merged() {
    let s = surface("s2_0");
    let x = point(&s, &[0.05, 0.05, 0.05], &[0.01, -0.02, 0.03]);
    let r = enumerate_short_geodesics(&x, 0.1, 6).unwrap();
    assert!(r.complete);
    assert_eq!(r.curves.len(), 3);
    let sigma = short_simplex(&x, &r).unwrap().unwrap();
    assert_eq!(sigma, x.pd().all_curves());
    // equal lengths: ties are ordered by word
    assert!(r.curves.windows(2).all(|p| p[0].length < p[1].length || p[0].class < p[1].class));
}

#[test]
fn short_simplex_examples() {
    let s = surface("s1_1");
    let x = point(&s, &[0.05], &[0.0]);
    let sigma = short_simplex(&x, &certified_short_curves(&x, 0.1).unwrap()).unwrap().unwrap();
    assert_eq!(sigma.ids(x.pd()), vec!["a"]);
    let thick = point(&s, &[0.5], &[0.0]);
    assert_eq!(short_simplex(&thick, &certified_short_curves(&thick, 0.1).unwrap()).unwrap(), None);
}

#[test]
fn incomplete_report_is_an_error() {
    let s = surface("s1_1");
    let x = point(&s, &[0.05], &[0.0]);
    let mut r = certified_short_curves(&x, 0.1).unwrap();
    r.complete = false;
    assert!(matches!(short_simplex(&x, &r), Err(Error::IncompleteEnumeration { .. })));
    // a very long pants curve leaves room for short curves crossing it
    let s = surface("s0_4");
    let y = point(&s, &[9.0], &[0.0]);
    assert!(!collar_certificate(&y, 0.1));
    assert!(matches!(classify_tile(&y, 0.1), Err(Error::IncompleteEnumeration { .. })));
}

#[test]
fn classify_examples() {
    let s = surface("s1_1");
    let eps = 0.1;
    let x = point(&s, &[eps * (-2.0f64).exp()], &[0.002]);
    let t = classify_tile(&x, eps).unwrap();
    let thin = t.thin().unwrap();
    assert!((thin.cone_coords[0] - 1.0).abs() < 1e-15);
    assert_eq!(thin.base_point.length(0), eps);
    assert_eq!(thin.type_label.0, "nonseparating: [(0,1,2)]");
    // the base point itself sits on the thick side
    assert_eq!(classify_tile(&thin.base_point, eps).unwrap(), Tile::Thick);
}

#[test]
fn stabilizer_examples() {
    let d = assets::decomposition("s2_0").unwrap();
    let p = stabilizer_profile(&d, &d.all_curves());
    assert_eq!(p.twist_rank, 3);
    assert_eq!(p.cut.components, vec![CutComponent { genus: 0, punctures: 0, boundary: 3 }; 2]);
    assert!(p.is_torus_face);
    let d = assets::decomposition("s1_1").unwrap();
    let p = stabilizer_profile(&d, &d.all_curves());
    assert_eq!((p.twist_rank, p.is_torus_face), (1, true));
    assert_eq!(p.cut.components, vec![CutComponent { genus: 0, punctures: 1, boundary: 2 }]);
    let d = assets::decomposition("s0_5").unwrap();
    let p = stabilizer_profile(&d, &d.simplex(&["c1"]).unwrap());
    assert!(!p.is_torus_face);
}

#[test]
fn enumeration_agrees_with_certified_report() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (key, bound) in [("s1_1", 7), ("s0_4", 5), ("s1_2", 4), ("s0_5", 4)] {
        let s = surface(key);
        for _ in 0..20 {
            let x = random_point(&s, &mut rng, 0.02, 3.0);
            let a = enumerate_short_geodesics(&x, 0.1, bound).unwrap();
            let b = certified_short_curves(&x, 0.1).unwrap();
            assert!(a.complete && b.complete, "{key}");
            let ka: Vec<_> = a.curves.iter().map(|c| c.pants_curve).collect();
            let kb: Vec<_> = b.curves.iter().map(|c| c.pants_curve).collect();
            assert_eq!(ka, kb, "{key}");
        }
    }
}

fn key(idx: usize) -> &'static str {
    assets::SURFACES[idx].0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partition_and_twist_invariance(idx in 0usize..5, seed in any::<u64>()) {
        let s = surface(key(idx));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_point(&s, &mut rng, 0.01, 3.0);
        let t = classify_tile(&x, 0.1).unwrap();
        let short = x.coordinates().iter().any(|c| c.length < 0.1);
        prop_assert_eq!(t.kind() == TileKind::Thin, short);
        for c in 0..x.pd().curve_count() {
            let y = twist_flow(&x, c, x.length(c)).unwrap();
            let u = classify_tile(&y, 0.1).unwrap();
            prop_assert_eq!(t.kind(), u.kind());
            if let (Some(a), Some(b)) = (t.thin(), u.thin()) {
                prop_assert_eq!(&a.type_label, &b.type_label);
                prop_assert_eq!(&a.cone_coords, &b.cone_coords);
            }
        }
    }

    #[test]
    fn thick_parts_exhaust(idx in 0usize..5, seed in any::<u64>(), ratio in 0.05f64..1.0) {
        let s = surface(key(idx));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_point(&s, &mut rng, 0.01, 3.0);
        if classify_tile(&x, 0.1).unwrap() == Tile::Thick {
            prop_assert_eq!(classify_tile(&x, 0.1 * ratio).unwrap(), Tile::Thick);
        }
    }

    #[test]
    fn thin_tiles_determine_the_point(idx in 0usize..5, seed in any::<u64>()) {
        let s = surface(key(idx));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_point(&s, &mut rng, 0.01, 0.2);
        if let Tile::Thin(t) = classify_tile(&x, 0.1).unwrap() {
            prop_assert!(t.cone_coords.iter().all(|&u| u > 0.0));
            let y = reconstruct(&t, 0.1).unwrap();
            for (a, b) in x.coordinates().iter().zip(y.coordinates()) {
                prop_assert!((a.length - b.length).abs() <= 1e-14 * a.length);
                prop_assert!((a.twist - b.twist).abs() <= 1e-13 * a.length.max(a.twist.abs()));
            }
        }
    }
}
