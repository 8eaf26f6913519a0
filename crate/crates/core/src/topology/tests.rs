use proptest::prelude::*;

use super::*;
use crate::assets;

fn pd(key: &str) -> PantsDecomposition {
    assets::decomposition(key).unwrap()
}

#[test]
fn complexity_examples() {
    assert_eq!(complexity(Surface::new(1, 1).unwrap()), 1);
    assert_eq!(complexity(Surface::new(0, 4).unwrap()), 1);
    assert_eq!(complexity(Surface::new(2, 0).unwrap()), 3);
    assert!(Surface::new(0, 3).is_err());
}

#[test]
fn shipped_decompositions_validate() {
    for (key, g, p, _) in assets::SURFACES {
        let d = pd(key);
        assert_eq!(d.surface(), Surface { genus: *g, punctures: *p });
        assert_eq!(d.curve_count() as u32, d.surface().complexity());
    }
}

#[test]
fn extra_curve_is_reported() {
    let mut f = pd("s1_1").file().clone();
    f.pants[0][2] = "b+".into();
    f.pants.push(vec!["b-".into(), "p1".into(), "q".into()]);
    f.curves.push(CurveSpec { id: "b".into(), slots: ["b+".into(), "b-".into()] });
    let v = validate_pants_decomposition(&f).unwrap_err();
    assert!(v.iter().any(|x| x.to_string().starts_with("curve count ≠ d(S)")));
}

#[test]
fn slot_misuse_is_reported() {
    let mut f = pd("s0_4").file().clone();
    f.puncture_slots[3] = "p3".into();
    let v = validate_pants_decomposition(&f).unwrap_err();
    assert!(v.contains(&Violation::SlotReused("p3".into())));
    assert!(v.contains(&Violation::SlotUnused("p4".into())));
}

#[test]
fn cut_examples() {
    let s11 = pd("s1_1");
    let c = cut_surface(&s11, &s11.simplex(&["a"]).unwrap());
    assert_eq!(c.components, vec![CutComponent { genus: 0, punctures: 1, boundary: 2 }]);

    let s20 = pd("s2_0");
    let c = cut_surface(&s20, &s20.all_curves());
    assert_eq!(c.components, vec![CutComponent { genus: 0, punctures: 0, boundary: 3 }; 2]);

    let s04 = pd("s0_4");
    let c = cut_surface(&s04, &s04.simplex(&["c"]).unwrap());
    assert_eq!(c.components, vec![CutComponent { genus: 0, punctures: 2, boundary: 1 }; 2]);
}

#[test]
fn label_examples() {
    let s11 = pd("s1_1");
    assert_eq!(multicurve_type(&s11, &s11.all_curves()).0, "nonseparating: [(0,1,2)]");
    let s05 = pd("s0_5");
    assert_eq!(multicurve_type(&s05, &s05.simplex(&["c1"]).unwrap()).0, "[(0,2,1),(0,3,1)]");
    assert_eq!(multicurve_type(&s05, &s05.simplex(&["c2"]).unwrap()).0, "[(0,2,1),(0,3,1)]");
    let s12 = pd("s1_2");
    assert_eq!(multicurve_type(&s12, &s12.simplex(&["c"]).unwrap()).0, "[(1,0,1),(0,2,1)]");
}

#[test]
fn labeled_punctures_distinguish_splits() {
    let s05 = pd("s0_5");
    let a = multicurve_type_with(&s05, &s05.simplex(&["c1"]).unwrap(), PunctureLabels::Labeled);
    let b = multicurve_type_with(&s05, &s05.simplex(&["c2"]).unwrap(), PunctureLabels::Labeled);
    assert_ne!(a, b);
    assert_eq!(a.0, "[(0,{1,2},1),(0,{3,4,5},1)]");
}

fn all_subsets(d: &PantsDecomposition) -> Vec<DecompositionSimplex> {
    let n = d.curve_count();
    (1..(1usize << n))
        .map(|m| DecompositionSimplex::new((0..n).filter(|i| m >> i & 1 == 1).collect(), n).unwrap())
        .collect()
}

/// Rebuild `f` with shuffled pants, slot positions, curve order and fresh identifiers.
/// Returns the new file and the old-to-new curve index map.
fn relabel(f: &PantsFile, seed: &[u64]) -> (PantsFile, Vec<usize>) {
    let mut k = 0;
    let mut next = |n: usize| {
        let r = seed[k % seed.len()] as usize % n.max(1);
        k += 1;
        r
    };
    let mut pants = f.pants.clone();
    for i in (1..pants.len()).rev() {
        let j = next(i + 1);
        pants.swap(i, j);
    }
    for p in &mut pants {
        for i in (1..p.len()).rev() {
            let j = next(i + 1);
            p.swap(i, j);
        }
    }
    let rename = |s: &str| format!("s_{}", s.bytes().map(|b| format!("{b:02x}")).collect::<String>());
    let pants = pants.iter().map(|p| p.iter().map(|s| rename(s)).collect()).collect();
    let mut order: Vec<usize> = (0..f.curves.len()).collect();
    for i in (1..order.len()).rev() {
        let j = next(i + 1);
        order.swap(i, j);
    }
    let curves: Vec<CurveSpec> = order
        .iter()
        .enumerate()
        .map(|(new, &old)| {
            let c = &f.curves[old];
            let mut slots = [rename(&c.slots[0]), rename(&c.slots[1])];
            if next(2) == 1 {
                slots.swap(0, 1);
            }
            CurveSpec { id: format!("k{new}"), slots }
        })
        .collect();
    let mut map = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        map[old] = new;
    }
    let file = PantsFile {
        name: None,
        genus: f.genus,
        punctures: f.punctures,
        pants,
        curves,
        puncture_slots: f.puncture_slots.iter().map(|s| rename(s)).collect(),
        alphabet: None,
    };
    (file, map)
}

proptest! {
    #[test]
    fn euler_characteristic_is_additive(idx in 0usize..5) {
        let d = pd(assets::SURFACES[idx].0);
        for s in all_subsets(&d) {
            prop_assert_eq!(cut_surface(&d, &s).euler_characteristic(), d.surface().euler_characteristic());
        }
    }

    #[test]
    fn labels_survive_relabelling(idx in 0usize..6, seed in prop::collection::vec(any::<u64>(), 8)) {
        let key = if idx == 5 { "s2_0_theta" } else { assets::SURFACES[idx].0 };
        let d = pd(key);
        let (f, map) = relabel(d.file(), &seed);
        let e = PantsDecomposition::from_file(f).unwrap();
        for s in all_subsets(&d) {
            let t = DecompositionSimplex::new(s.curves().iter().map(|&c| map[c]).collect(), e.curve_count()).unwrap();
            prop_assert_eq!(multicurve_type(&d, &s), multicurve_type(&e, &t));
        }
    }
}

#[test]
fn full_cut_gives_pants() {
    for (key, _, _, _) in assets::SURFACES {
        let d = pd(key);
        let c = cut_surface(&d, &d.all_curves());
        assert_eq!(c.components.len() as u32, d.surface().pants_count());
        for comp in c.components {
            assert_eq!(comp.genus, 0);
            assert_eq!(comp.punctures + comp.boundary, 3);
        }
    }
}

#[test]
fn contraction_matches_cutting_fewer_curves() {
    for key in ["s1_2", "s0_5", "s2_0", "s2_0_theta"] {
        let d = pd(key);
        let full = d.all_curves();
        let g = d.cut_graph(&full, false);
        for e in 0..d.curve_count() {
            let rest: Vec<usize> = (0..d.curve_count()).filter(|&c| c != e).collect();
            let s = DecompositionSimplex::new(rest, d.curve_count()).unwrap();
            assert_eq!(g.contract(e).type_label(), multicurve_type(&d, &s).0);
        }
    }
}
