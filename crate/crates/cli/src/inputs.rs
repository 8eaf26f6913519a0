//! Resolution of surfaces, catalogs, points and cone points from command-line values.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use moduli_tiler::assets;
use moduli_tiler::complex::{shipped_complex, ConePoint, SphericalComplex};
use moduli_tiler::error::{Error, Result};
use moduli_tiler::hyperbolic::{FNPoint, FnPointFile, MarkedSurface};
use moduli_tiler::topology::PantsDecomposition;

pub const CATALOG_DIR_VAR: &str = "MODULI_TILER_CATALOG_DIR";

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn with_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Schema { path: p, message } => Error::Schema { path: format!("{}: {p}", path.display()), message },
        other => other,
    }
}

/// A shipped key such as `s1_1` or `s2_0_theta`, or a path to a decomposition file.
pub fn decomposition(spec: &str) -> Result<PantsDecomposition> {
    let path = Path::new(spec);
    if path.exists() || spec.ends_with(".json") || spec.contains(std::path::MAIN_SEPARATOR) {
        let text = read(path)?;
        return PantsDecomposition::from_json(&text).map_err(|e| with_file(path, e));
    }
    assets::decomposition(spec)
}

pub fn surface(spec: &str) -> Result<Arc<MarkedSurface>> {
    MarkedSurface::new(decomposition(spec)?)
}

/// `--catalog` if given; otherwise `$MODULI_TILER_CATALOG_DIR/s{g}_{p}.json` if present;
/// otherwise the shipped catalog for the surface type.
pub fn catalog(explicit: Option<&Path>, genus: u32, punctures: u32) -> Result<SphericalComplex> {
    if let Some(p) = explicit {
        return SphericalComplex::load(p);
    }
    let key = assets::surface_key(genus, punctures);
    if let Some(dir) = std::env::var_os(CATALOG_DIR_VAR) {
        let p = PathBuf::from(dir).join(format!("{key}.json"));
        if p.exists() {
            return SphericalComplex::load(&p);
        }
    }
    shipped_complex(&key)
}

fn numbers(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<f64>().map_err(|_| Error::InvalidArgument(format!("not a number: `{s}`"))))
        .collect()
}

/// A point file (one point or an array of points), or inline `lengths/twists` such as
/// `0.05,1.2/0,0.3` in curve order.
pub fn points(surface: &Arc<MarkedSurface>, spec: &str) -> Result<Vec<FNPoint>> {
    let path = Path::new(spec);
    if path.exists() || spec.ends_with(".json") {
        let text = read(path)?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| Error::Schema { path: format!("{}: line {}, column {}", path.display(), e.line(), e.column()), message: e.to_string() })?;
        let items = match value {
            serde_json::Value::Array(v) => v,
            other => vec![other],
        };
        return items
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                let file: FnPointFile = serde_json::from_value(v)
                    .map_err(|e| Error::Schema { path: format!("{}: [{i}]", path.display()), message: e.to_string() })?;
                FNPoint::from_file(surface.clone(), &file)
            })
            .collect();
    }
    let (lengths, twists) = spec.split_once('/').unwrap_or((spec, ""));
    let lengths = numbers(lengths)?;
    let mut twists = numbers(twists)?;
    if twists.is_empty() {
        twists = vec![0.0; lengths.len()];
    }
    if lengths.len() != twists.len() {
        return Err(Error::InvalidArgument(format!("{} lengths but {} twists", lengths.len(), twists.len())));
    }
    Ok(vec![FNPoint::from_lengths_twists(surface.clone(), &lengths, &twists)?])
}

pub fn point(surface: &Arc<MarkedSurface>, spec: &str) -> Result<FNPoint> {
    let mut v = points(surface, spec)?;
    if v.len() != 1 {
        return Err(Error::InvalidArgument(format!("expected one point in `{spec}`, found {}", v.len())));
    }
    Ok(v.remove(0))
}

/// `O` for the apex, or `radius@simplex:w1,w2,...`; weights default to the barycentre.
pub fn cone_point(complex: &SphericalComplex, spec: &str) -> Result<ConePoint> {
    let spec = spec.trim();
    if spec == "O" || spec == "apex" {
        return Ok(ConePoint::APEX);
    }
    let (radius, rest) =
        spec.split_once('@').ok_or_else(|| Error::InvalidConePoint(format!("expected `radius@simplex[:weights]`, got `{spec}`")))?;
    let radius: f64 = radius.trim().parse().map_err(|_| Error::InvalidConePoint(format!("bad radius `{radius}`")))?;
    let (simplex, weights) = rest.split_once(':').unwrap_or((rest, ""));
    let i = complex.index_of(simplex).ok_or_else(|| Error::InvalidConePoint(format!("unknown simplex `{simplex}`")))?;
    let count = complex.simplex(i).vertex_count();
    let mut w = numbers(weights)?;
    if w.is_empty() {
        w = vec![1.0; count];
    }
    if w.len() != count {
        return Err(Error::InvalidConePoint(format!("simplex `{simplex}` has {count} vertices, got {} weights", w.len())));
    }
    ConePoint::new(radius, simplex, &w)
}
