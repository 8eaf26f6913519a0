//! Acceptance suite: one line per criterion, non-zero exit if any criterion fails.
//!
//! Run with `cargo test -p moduli-tiler-core --test acceptance`.

use std::f64::consts::SQRT_2;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use moduli_tiler::assets;
use moduli_tiler::asymptotic::{build_net, estimate_distortion_many, flat_sector_probe, Net};
use moduli_tiler::complex::{
    generate_catalog, octant_gluing, shipped_complex, Catalog, CatalogSimplex, CatalogSurface, ConePoint, OctantGluing,
    SphericalComplex,
};
use moduli_tiler::hyperbolic::{dehn_twist_action, geodesic_length, twist_flow, FNPoint, FnCoordinate, MarkedSurface, TwistDirection};
use moduli_tiler::metric::model_distance;
use moduli_tiler::sampling::{random_cone_point, random_point, random_word};
use moduli_tiler::tiling::{certified_short_curves, classify_tile, Tile};
use moduli_tiler::words::CurveClass;

const KEYS: [&str; 5] = ["s1_1", "s0_4", "s1_2", "s0_5", "s2_0"];
const EPSILON: f64 = 0.1;
const SEED: u64 = 42;
/// Relative tolerance for sides of an inequality that coincide exactly in real arithmetic.
const ROUNDING: f64 = 1e-12;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn surface(key: &str) -> Arc<MarkedSurface> {
    MarkedSurface::new(assets::decomposition(key).unwrap()).unwrap()
}

fn gluing(key: &str) -> OctantGluing {
    octant_gluing(&shipped_complex(key).unwrap()).unwrap()
}

fn net(key: &str) -> Net {
    build_net(EPSILON, &shipped_complex(key).unwrap()).unwrap()
}

fn within(elapsed: Duration, limit: Duration) -> String {
    format!("{:.1}s (limit {}s)", elapsed.as_secs_f64(), limit.as_secs())
}

fn holonomy_round_trip() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for (i, key) in KEYS.iter().enumerate() {
        let s = surface(key);
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + i as u64);
        let points: Vec<FNPoint> = (0..1000).map(|_| random_point(&s, &mut rng, 0.05, 3.0)).collect();
        let err = points
            .par_iter()
            .map(|x| {
                (0..s.pd().curve_count())
                    .map(|c| geodesic_length(x, &s.curve_class(c)).map_or(f64::INFINITY, |l| (l - x.length(c)).abs()))
                    .fold(0.0, f64::max)
            })
            .reduce(|| 0.0, f64::max);
        worst = worst.max(err);
    }
    let t = start.elapsed();
    let limit = Duration::from_secs(60);
    outcome(worst <= 1e-9 && t <= limit, format!("max |Δl| = {worst:.3e} (tol 1e-9), {}", within(t, limit)))
}

fn twist_flow_matches_words() -> Outcome {
    let mut worst = 0.0f64;
    let mut mismatches = 0;
    let mut compared = 0;
    for (i, key) in ["s1_1", "s0_4"].iter().enumerate() {
        let s = surface(key);
        let p = s.presentation();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10 + i as u64);
        let mut drawn = 0;
        while drawn < 500 {
            let x = random_point(&s, &mut rng, 0.05, 3.0);
            let len = rng.gen_range(1..8);
            let w = random_word(&mut rng, p.generator_count(), len);
            let Ok(c) = CurveClass::new(&w) else { continue };
            drawn += 1;
            let alpha = rng.gen_range(0..s.pd().curve_count());
            let y = twist_flow(&x, alpha, x.length(alpha)).unwrap();
            let lhs = geodesic_length(&y, &c);
            let rhs = geodesic_length(&x, &dehn_twist_action(p, alpha, TwistDirection::Negative, &c).unwrap());
            match (lhs, rhs) {
                (Ok(a), Ok(b)) => {
                    compared += 1;
                    worst = worst.max((a - b).abs() / a.max(1.0));
                }
                (Err(_), Err(_)) => {}
                _ => mismatches += 1,
            }
        }
    }
    outcome(
        worst <= 1e-8 && mismatches == 0,
        format!("{compared} length pairs, max relative Δ = {worst:.3e} (tol 1e-8), {mismatches} one-sided failures"),
    )
}

fn collar_surrogate() -> Outcome {
    let s = surface("s1_1");
    let b = s.parse_class("b").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 20);
    let mut min_product = f64::INFINITY;
    let mut crossing_short_sets = 0;
    for _ in 0..1000 {
        let x = random_point(&s, &mut rng, 0.05, 3.0);
        let lb = geodesic_length(&x, &b).unwrap();
        min_product = min_product.min((0.5 * x.length(0)).sinh() * (0.5 * lb).sinh());
        // any two distinct curves on the one-holed torus intersect
        if certified_short_curves(&x, EPSILON).unwrap().curves.len() > 1 {
            crossing_short_sets += 1;
        }
    }
    outcome(
        min_product > 1.0 && crossing_short_sets == 0,
        format!("min sinh(l_a/2)sinh(l_b/2) = {min_product:.6}, short sets with intersecting pairs: {crossing_short_sets}"),
    )
}

fn thick_thin_partition() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut thin = 0usize;
    for (i, key) in KEYS.iter().enumerate() {
        let s = surface(key);
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 30 + i as u64);
        let points: Vec<FNPoint> = (0..10_000).map(|_| random_point(&s, &mut rng, 0.005, 3.0)).collect();
        let bad: Vec<String> = points
            .par_iter()
            .enumerate()
            .filter_map(|(k, x)| check_partition(key, k, x).unwrap_or_else(|e| Some(format!("{key}#{k}: {e}"))))
            .collect();
        thin += points.iter().filter(|x| x.coordinates().iter().any(|c| c.length < EPSILON)).count();
        failures.extend(bad);
    }
    let t = start.elapsed();
    let limit = Duration::from_secs(300);
    let first = failures.first().map(|f| format!(" (first: {f})")).unwrap_or_default();
    outcome(
        failures.is_empty() && t <= limit,
        format!("50000 points ({thin} thin), {} failures{first}, {}", failures.len(), within(t, limit)),
    )
}

/// A failure description for point `k`, if any.
fn check_partition(key: &str, k: usize, x: &FNPoint) -> moduli_tiler::error::Result<Option<String>> {
    let t = classify_tile(x, EPSILON)?;
    let short: Vec<usize> = (0..x.pd().curve_count()).filter(|&c| x.length(c) < EPSILON).collect();
    let sigma: Vec<usize> = t.thin().map_or(Vec::new(), |t| t.sigma.curves().to_vec());
    if sigma != short {
        return Ok(Some(format!("{key}#{k}: tile σ {sigma:?}, short curves {short:?}")));
    }
    for c in 0..x.pd().curve_count() {
        let u = classify_tile(&twist_flow(x, c, x.length(c))?, EPSILON)?;
        let same = match (t.thin(), u.thin()) {
            (None, None) => true,
            (Some(a), Some(b)) => a.type_label == b.type_label && a.cone_coords == b.cone_coords,
            _ => false,
        };
        if !same {
            return Ok(Some(format!("{key}#{k}: full twist along {c} changes the tile")));
        }
    }
    // the same point pushed onto the boundary of its tile
    let mut coords = x.coordinates().to_vec();
    for c in coords.iter_mut() {
        if c.length < EPSILON {
            *c = FnCoordinate { length: EPSILON, twist: c.twist };
        }
    }
    let y = FNPoint::new(x.surface().clone(), coords)?;
    if classify_tile(&y, EPSILON)? != Tile::Thick {
        return Ok(Some(format!("{key}#{k}: boundary point is not thick")));
    }
    Ok(None)
}

fn path_complex() -> SphericalComplex {
    let simplex = |id: String, dim: usize, faces: Vec<String>| CatalogSimplex {
        id: id.clone(),
        dim,
        type_label: id,
        faces,
        face_vertices: None,
        symmetries: None,
    };
    let mut s: Vec<CatalogSimplex> = (0..4).map(|i| simplex(format!("v{i}"), 0, vec![])).collect();
    for i in 0..3 {
        s.push(simplex(format!("e{i}"), 1, vec![format!("v{}", i + 1), format!("v{i}")]));
    }
    let catalog = Catalog { surface: CatalogSurface { genus: 1, punctures: 2 }, multiplicity: None, simplices: s };
    SphericalComplex::from_catalog(&catalog).unwrap()
}

fn cone_metric_axioms() -> Outcome {
    let mut asym = 0.0f64;
    let mut triangle = 0.0f64;
    let mut apex = 0.0f64;
    for (i, key) in KEYS.iter().enumerate() {
        let g = gluing(key);
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 40 + i as u64);
        let triples: Vec<[ConePoint; 3]> =
            (0..10_000).map(|_| std::array::from_fn(|_| random_cone_point(g.complex(), &mut rng, 10.0))).collect();
        let (a, t, o) = triples
            .par_iter()
            .map(|p| {
                let d = |i: usize, j: usize| g.cone_distance(&p[i], &p[j]).unwrap();
                let a = (d(0, 1) - d(1, 0)).abs();
                let t = d(0, 1) + d(1, 2) - d(0, 2);
                let o = (g.cone_distance(&p[0], &ConePoint::APEX).unwrap() - p[0].radius).abs();
                (a, t, o)
            })
            .reduce(|| (0.0, f64::INFINITY, 0.0), |x, y| (x.0.max(y.0), x.1.min(y.1), x.2.max(y.2)));
        asym = asym.max(a);
        triangle = triangle.min(t);
        apex = apex.max(o);
    }
    let g = gluing("s1_2");
    let v = &g.complex().simplex(g.complex_vertices()[0]).id;
    let same = g.cone_distance(&ConePoint::new(3.0, v, &[1.0]).unwrap(), &ConePoint::new(4.0, v, &[1.0]).unwrap()).unwrap();
    let path = octant_gluing(&path_complex()).unwrap();
    let far = path.cone_distance(&ConePoint::new(2.0, "v0", &[1.0]).unwrap(), &ConePoint::new(3.5, "v3", &[1.0]).unwrap()).unwrap();
    let right = path.cone_distance(&ConePoint::new(1.0, "v0", &[1.0]).unwrap(), &ConePoint::new(1.0, "v1", &[1.0]).unwrap()).unwrap();
    let examples = [(same - 1.0).abs(), (far - 5.5).abs(), (right - SQRT_2).abs()];
    let ex_ok = examples.iter().all(|&e| e <= 1e-12);
    outcome(
        asym == 0.0 && triangle >= -1e-9 && apex == 0.0 && ex_ok,
        format!(
            "max asymmetry {asym:e}, min triangle slack {triangle:.3e}, max |d(u,O) − r| {apex:e}, examples |a−b|/a+b/√2 errors {:.1e}/{:.1e}/{:.1e}",
            examples[0], examples[1], examples[2]
        ),
    )
}

fn cat0_sampling() -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    for (i, key) in KEYS.iter().enumerate() {
        let g = gluing(key);
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 50 + i as u64);
        let triples: Vec<[ConePoint; 3]> =
            (0..1000).map(|_| std::array::from_fn(|_| random_cone_point(g.complex(), &mut rng, 10.0))).collect();
        let d = triples.par_iter().map(|p| g.comparison_defect(&p[0], &p[1], &p[2]).unwrap()).reduce(|| f64::NEG_INFINITY, f64::max);
        worst = worst.max(d);
    }
    outcome(worst <= 1e-6, format!("max comparison defect {worst:.3e} over 5000 triples (tol 1e-6)"))
}

fn distortion_scaling() -> Outcome {
    let ns = [1, 2, 4, 8, 16];
    let mut worst = 0.0f64;
    let mut sups = Vec::new();
    for key in KEYS {
        let reports = estimate_distortion_many(&net(key), &ns, 20.0, 2000, SEED).unwrap();
        let base = reports[0].sup_defect;
        sups.push(format!("{key} {base:.4}"));
        for r in &reports {
            worst = worst.max((r.sup_defect * r.n as f64 - base).abs());
        }
    }
    outcome(worst <= 1e-12, format!("max |n·sup_n − sup_1| = {worst:e} (tol 1e-12); sup_1: {}", sups.join(", ")))
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}

fn distortion_bounded() -> Outcome {
    let start = Instant::now();
    let radii = [10.0, 20.0, 40.0];
    let mut worst = f64::NEG_INFINITY;
    let mut parts = Vec::new();
    for key in KEYS {
        let n = net(key);
        let sups: Vec<f64> =
            radii.iter().map(|&r| estimate_distortion_many(&n, &[1], r, 20_000, SEED).unwrap()[0].sup_defect).collect();
        let s = slope(&radii, &sups);
        worst = worst.max(s);
        parts.push(format!("{key} [{:.3}, {:.3}, {:.3}] slope {s:.4}", sups[0], sups[1], sups[2]));
    }
    let t = start.elapsed();
    let limit = Duration::from_secs(600);
    outcome(worst <= 0.02 && t <= limit, format!("max slope {worst:.4} (tol 0.02); {}; {}", parts.join("; "), within(t, limit)))
}

fn bilipschitz_sandwich() -> Outcome {
    let mut violations = 0;
    let mut pairs = 0;
    for key in KEYS {
        let n = net(key);
        let d1 = n.metric.thick_diameter;
        violations += (0..2000u64)
            .into_par_iter()
            .filter(|&k| {
                let p = n.sample_pair(SEED, k, 40.0);
                let x = n.point(0, &p.x.1, &p.x.2).unwrap();
                let y = n.point(0, &p.y.1, &p.x.2).unwrap();
                let dm = model_distance(&x, &y, &n.metric, n.gluing()).unwrap().distance;
                let dc = n.gluing().cone_distance(&n.f1(&x).unwrap(), &n.f1(&y).unwrap()).unwrap();
                // points are stored through their lengths, so equal distances agree only up to rounding
                let tol = ROUNDING * dc.max(1.0);
                !(dc <= dm + tol && dm <= dc + 2.0 * d1 + tol)
            })
            .count();
        pairs += 2000;
    }
    outcome(violations == 0, format!("{violations} violations over {pairs} pure-u pairs"))
}

fn flat_sectors() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for key in ["s1_2", "s0_5", "s2_0"] {
        let n = net(key);
        let probes: Vec<_> = [10.0, 20.0, 40.0].iter().map(|&r| flat_sector_probe(&n, r).unwrap()).collect();
        let halves = probes.windows(2).all(|w| w[1].bound * 2.0 == w[0].bound);
        ok &= halves && probes.iter().all(|p| p.within_bound);
        let dev: Vec<String> = probes.iter().map(|p| format!("{:.2e}≤{}", p.deviation, p.bound)).collect();
        parts.push(format!("{key} [{}]", dev.join(", ")));
    }
    outcome(ok, format!("|diagonal/side − √2| vs 4·D₁/r: {}", parts.join("; ")))
}

fn catalog_oracle() -> Outcome {
    let mut mismatched = Vec::new();
    for key in KEYS {
        let shipped = shipped_complex(key).unwrap();
        let regenerated = SphericalComplex::from_catalog(&generate_catalog(shipped.surface).unwrap()).unwrap();
        if regenerated.canonical_form() != shipped.canonical_form() {
            mismatched.push(key);
        }
    }
    outcome(mismatched.is_empty(), format!("{} catalogs regenerated, mismatched: {mismatched:?}", KEYS.len()))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        ("holonomy round trip", holonomy_round_trip),
        ("full twist flow vs word action", twist_flow_matches_words),
        ("collar surrogate", collar_surrogate),
        ("thick/thin partition", thick_thin_partition),
        ("cone metric axioms", cone_metric_axioms),
        ("CAT(0) comparison sampling", cat0_sampling),
        ("distortion scaling", distortion_scaling),
        ("distortion bounded in r", distortion_bounded),
        ("bi-Lipschitz sandwich", bilipschitz_sandwich),
        ("flat sector probe", flat_sectors),
        ("catalog oracle reproducibility", catalog_oracle),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("criterion {:>2} {}: {} ({})", i + 1, if o.pass { "PASS" } else { "FAIL" }, name, o.detail);
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
