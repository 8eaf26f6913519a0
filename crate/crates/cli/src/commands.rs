use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use moduli_tiler::asymptotic::{build_net, estimate_distortion_many, flat_sector_probe, Net};
use moduli_tiler::complex::{generate_catalog, octant_gluing, SphericalComplex};
use moduli_tiler::error::{Error, Result};
use moduli_tiler::hyperbolic::{FNPoint, MarkedSurface};
use moduli_tiler::metric::{model_distance, MetricMode, ModelMetric};
use moduli_tiler::sampling::random_cone_point;
use moduli_tiler::tiling::{certified_short_curves, classify_tile, Tile};
use moduli_tiler::topology::Surface;

use crate::output::render;
use crate::{inputs, Cli, Command, ConeCommand, RunConfig};

fn emit(cfg: &RunConfig, text: &str) -> Result<()> {
    match &cfg.out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn records(cfg: &RunConfig, rows: &[Value]) -> Result<()> {
    emit(cfg, &render(rows, cfg.format))
}

fn surface(cfg: &RunConfig) -> Result<Arc<MarkedSurface>> {
    let spec = cfg.surface.as_deref().ok_or_else(|| Error::InvalidArgument("--surface is required".into()))?;
    inputs::surface(spec)
}

fn surface_type(cfg: &RunConfig) -> Result<Option<Surface>> {
    cfg.surface.as_deref().map(|s| inputs::decomposition(s).map(|pd| pd.surface())).transpose()
}

/// The catalog for `--catalog`, or the one matching the surface type.
fn complex(cfg: &RunConfig) -> Result<SphericalComplex> {
    match (&cfg.catalog, surface_type(cfg)?) {
        (Some(p), _) => inputs::catalog(Some(p), 0, 0),
        (None, Some(s)) => inputs::catalog(None, s.genus, s.punctures),
        (None, None) => Err(Error::InvalidArgument("--surface or --catalog is required".into())),
    }
}

fn seed(cfg: &RunConfig) -> Result<u64> {
    cfg.seed.ok_or_else(|| Error::InvalidArgument("--seed is required for sampling commands".into()))
}

fn net(cfg: &RunConfig, mode: MetricMode) -> Result<Net> {
    build_net(cfg.epsilon, &complex(cfg)?)?.with_metric(mode, cfg.d1)
}

fn load_points(s: &Arc<MarkedSurface>, specs: &[String]) -> Result<Vec<FNPoint>> {
    let mut out = Vec::new();
    for spec in specs {
        out.extend(inputs::points(s, spec)?);
    }
    Ok(out)
}

fn curve_ids(x: &FNPoint, curves: &[usize]) -> Vec<String> {
    curves.iter().map(|&c| x.pd().curve_id(c).to_string()).collect()
}

pub fn run(cli: &Cli) -> Result<()> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Surface => {
            let s = surface(cfg)?;
            let pd = s.pd();
            let k = complex(cfg)?;
            let row = json!({
                "name": pd.name(),
                "genus": pd.surface().genus,
                "punctures": pd.surface().punctures,
                "complexity": pd.surface().complexity(),
                "pants": pd.pants_count(),
                "curves": pd.curve_ids().collect::<Vec<_>>(),
                "catalog": {
                    "simplices": k.simplices().len(),
                    "vertices": k.vertices().count(),
                    "maximal": k.maximal_simplices().len(),
                    "dimension": k.dimension(),
                },
            });
            records(cfg, &[row])
        }
        Command::Classify { points } => {
            let s = surface(cfg)?;
            let rows = load_points(&s, points)?
                .iter()
                .map(|x| {
                    Ok(match classify_tile(x, cfg.epsilon)? {
                        Tile::Thick => json!({"kind": "thick"}),
                        Tile::Thin(t) => json!({
                            "kind": "thin",
                            "sigma": curve_ids(x, t.sigma.curves()),
                            "type_label": t.type_label.0,
                            "cone_coords": t.cone_coords,
                        }),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            records(cfg, &rows)
        }
        Command::ShortCurves { points } => {
            let s = surface(cfg)?;
            let rows = load_points(&s, points)?
                .iter()
                .map(|x| {
                    let r = certified_short_curves(x, cfg.epsilon)?;
                    let curves: Vec<Value> = r
                        .curves
                        .iter()
                        .map(|c| {
                            json!({
                                "word": s.format_word(c.class.word()),
                                "length": c.length,
                                "pants_curve": c.pants_curve.map(|i| x.pd().curve_id(i).to_string()),
                            })
                        })
                        .collect();
                    Ok(json!({"epsilon": r.epsilon, "complete": r.complete, "word_bound": r.word_bound, "curves": curves}))
                })
                .collect::<Result<Vec<_>>>()?;
            records(cfg, &rows)
        }
        Command::Dist { x, y, y_surface, mode } => {
            let sx = surface(cfg)?;
            let sy = match y_surface {
                Some(spec) => inputs::surface(spec)?,
                None => sx.clone(),
            };
            let (px, py) = (inputs::point(&sx, x)?, inputs::point(&sy, y)?);
            let metric = ModelMetric::new(cfg.epsilon, *mode, cfg.d1)?;
            let g = octant_gluing(&complex(cfg)?)?;
            let d = model_distance(&px, &py, &metric, &g)?;
            let mut row = serde_json::to_value(&d).map_err(|e| Error::InvalidArgument(e.to_string()))?;
            row["mode"] = serde_json::to_value(mode).map_err(|e| Error::InvalidArgument(e.to_string()))?;
            records(cfg, &[row])
        }
        Command::Cone { command } => {
            let k = complex(cfg)?;
            let g = octant_gluing(&k)?;
            match command {
                ConeCommand::Dist { u, v } => {
                    let (pu, pv) = (inputs::cone_point(&k, u)?, inputs::cone_point(&k, v)?);
                    records(cfg, &[json!({"distance": g.cone_distance(&pu, &pv)?})])
                }
                ConeCommand::CheckCat0 { radius } => {
                    let seed = seed(cfg)?;
                    let samples = cfg.samples.unwrap_or(1000);
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let mut worst = f64::NEG_INFINITY;
                    for _ in 0..samples {
                        let p: [_; 3] = std::array::from_fn(|_| random_cone_point(&k, &mut rng, *radius));
                        worst = worst.max(g.comparison_defect(&p[0], &p[1], &p[2])?);
                    }
                    let row = json!({"samples": samples, "seed": seed, "radius": radius, "max_defect": worst, "cat0": worst <= 1e-6});
                    records(cfg, &[row])
                }
            }
        }
        Command::Net => {
            let n = net(cfg, MetricMode::ThinModel)?;
            let rows: Vec<Value> = n
                .cones
                .iter()
                .map(|c| {
                    let x = &c.base_point;
                    json!({
                        "simplex": c.simplex,
                        "type_label": c.type_label,
                        "epsilon": n.epsilon,
                        "apex_level": n.apex_level,
                        "curves": x.pd().curve_ids().collect::<Vec<_>>(),
                        "lengths": x.coordinates().iter().map(|c| c.length).collect::<Vec<_>>(),
                        "twists": x.coordinates().iter().map(|c| c.twist).collect::<Vec<_>>(),
                    })
                })
                .collect();
            records(cfg, &rows)
        }
        Command::Distortion { n, radius, mode } => {
            let seed = seed(cfg)?;
            let samples = cfg.samples.unwrap_or(2000);
            let net = net(cfg, *mode)?;
            let mut rows = Vec::new();
            for &r in radius {
                for report in estimate_distortion_many(&net, n, r, samples, seed)? {
                    rows.push(serde_json::to_value(&report).map_err(|e| Error::InvalidArgument(e.to_string()))?);
                }
            }
            records(cfg, &rows)
        }
        Command::ProbeFlat { radius, mode } => {
            let net = net(cfg, *mode)?;
            let rows = radius
                .iter()
                .map(|&r| serde_json::to_value(flat_sector_probe(&net, r)?).map_err(|e| Error::InvalidArgument(e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            records(cfg, &rows)
        }
        Command::ExportCatalog { genus, punctures } => {
            let s = match (genus, punctures, surface_type(cfg)?) {
                (Some(g), Some(p), _) => Surface::new(*g, *p)?,
                (None, None, Some(s)) => s,
                _ => return Err(Error::InvalidArgument("give --surface, or both --genus and --punctures".into())),
            };
            let catalog = generate_catalog(s)?;
            emit(cfg, &catalog.to_json())
        }
    }
}
