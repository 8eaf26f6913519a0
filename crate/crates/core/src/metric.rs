//! Thin-part metric model: product of horoball factors `e^{-6u}dθ̃² + du²` with a thick factor,
//! its Weil–Petersson and McMullen variants, and a coarse distance between classified points.
//!
//! In the model chart, `θ̃_α = θ_α/l_α` is the twist fraction (a full Dehn twist adds one) and
//! `u_α = −log l_α^{1/2}`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{ConePoint, OctantGluing};
use crate::error::{Error, Result};
use crate::hyperbolic::FNPoint;
use crate::tiling::{classify_tile, Tile, DEFAULT_EPSILON};
use crate::topology::DecompositionSimplex;

pub const DEFAULT_THICK_DIAMETER: f64 = 1.0;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum MetricMode {
    #[default]
    #[serde(rename = "thin")]
    ThinModel,
    #[serde(rename = "wp")]
    WPExpansion,
    #[serde(rename = "mcm")]
    McMullenCorrected,
}

impl std::str::FromStr for MetricMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thin" => Ok(MetricMode::ThinModel),
            "wp" => Ok(MetricMode::WPExpansion),
            "mcm" => Ok(MetricMode::McMullenCorrected),
            _ => Err(Error::InvalidArgument(format!("unknown metric mode `{s}` (thin, wp, mcm)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModelMetric {
    pub epsilon: f64,
    pub mode: MetricMode,
    /// `D₁`: coarse diameter charged for crossing the thick part of a boundary face.
    pub thick_diameter: f64,
}

impl Default for ModelMetric {
    fn default() -> Self {
        ModelMetric { epsilon: DEFAULT_EPSILON, mode: MetricMode::ThinModel, thick_diameter: DEFAULT_THICK_DIAMETER }
    }
}

impl ModelMetric {
    pub fn new(epsilon: f64, mode: MetricMode, thick_diameter: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon <= DEFAULT_EPSILON) {
            return Err(Error::EpsilonOutOfRange { epsilon, max: DEFAULT_EPSILON });
        }
        if !(thick_diameter > 0.0 && thick_diameter.is_finite()) {
            return Err(Error::InvalidArgument(format!("thick diameter must be positive, got {thick_diameter}")));
        }
        Ok(ModelMetric { epsilon, mode, thick_diameter })
    }

    /// Cone apex level `a = −log ε^{1/2}`.
    pub fn apex_level(&self) -> f64 {
        -0.5 * self.epsilon.ln()
    }
}

/// A tangent vector at `base`, in model-chart components along the curves of `sigma`.
#[derive(Clone, Debug)]
pub struct TangentSample {
    pub base: FNPoint,
    pub sigma: DecompositionSimplex,
    /// `(dθ̃_α, du_α)` in the order of `sigma`.
    pub components: Vec<(f64, f64)>,
    /// Norm of the thick-factor component.
    pub thick: f64,
}

/// One horoball factor: base height and tangent components.
#[derive(Clone, Copy, Debug)]
struct Factor {
    u: f64,
    dtheta: f64,
    du: f64,
}

fn quadratic_form(mode: MetricMode, epsilon: f64, thick: f64, factors: &[Factor]) -> f64 {
    let mut q = thick * thick;
    for f in factors {
        match mode {
            MetricMode::ThinModel => q += (-6.0 * f.u).exp() * f.dtheta * f.dtheta + f.du * f.du,
            MetricMode::WPExpansion | MetricMode::McMullenCorrected => {
                // l³ρ² + (d l^{1/2})², with l^{1/2} = e^{−u}
                let l = (-2.0 * f.u).exp();
                q += l * l * l * f.dtheta * f.dtheta + l * f.du * f.du;
                if mode == MetricMode::McMullenCorrected && l < epsilon {
                    // |∂ log l|²: d log l = −2du, and J carries d l^{1/2} to l^{3/2} dθ̃
                    q += 4.0 * f.du * f.du + 4.0 * l * l * f.dtheta * f.dtheta;
                }
            }
        }
    }
    q
}

pub fn model_norm(v: &TangentSample, mode: MetricMode, epsilon: f64) -> Result<f64> {
    if v.components.len() != v.sigma.len() {
        return Err(Error::InvalidArgument(format!("expected {} components, got {}", v.sigma.len(), v.components.len())));
    }
    let factors: Vec<Factor> = v
        .sigma
        .curves()
        .iter()
        .zip(&v.components)
        .map(|(&c, &(dtheta, du))| Factor { u: -0.5 * v.base.length(c).ln(), dtheta, du })
        .collect();
    Ok(quadratic_form(mode, epsilon, v.thick, &factors).sqrt())
}

/// Exact distance of the factor metric `e^{−6u}dθ² + du²`, which is a third of the hyperbolic
/// metric in the coordinates `(3θ, e^{3u})`.
pub fn horoball_distance(p1: (f64, f64), p2: (f64, f64)) -> f64 {
    let ((t1, u1), (t2, u2)) = (p1, p2);
    if t1 == t2 {
        return (u1 - u2).abs();
    }
    // (1/3)·acosh(1 + z) with z = 2 sinh²(3Δu/2) + (9/2)Δθ² e^{−3(u₁+u₂)}, as an asinh
    let s = (1.5 * (u1 - u2)).sinh();
    let dt = t1 - t2;
    let w = (s * s + 2.25 * dt * dt * (-3.0 * (u1 + u2)).exp()).sqrt();
    2.0 / 3.0 * w.asinh()
}

/// `u_α = −log l_α^{1/2}` along `sigma`.
pub fn project_u(x: &FNPoint, sigma: &DecompositionSimplex) -> Vec<f64> {
    sigma.curves().iter().map(|&c| -0.5 * x.length(c).ln()).collect()
}

fn same_decomposition(x: &FNPoint, y: &FNPoint) -> bool {
    Arc::ptr_eq(x.surface(), y.surface()) || x.pd() == y.pd()
}

/// Difference of twist fractions reduced modulo full twists, in `[−1/2, 1/2]`.
fn wrap(d: f64) -> f64 {
    d - d.round()
}

/// Chart coordinates of the curves outside `sigma`: `(log l, θ̃)`.
fn thick_chart(x: &FNPoint, sigma: &[usize]) -> Vec<(f64, f64)> {
    (0..x.pd().curve_count()).filter(|c| !sigma.contains(c)).map(|c| (x.length(c).ln(), x.twist_fraction(c))).collect()
}

const PATH_TOLERANCE: f64 = 1e-6;

/// Model length of the polyline through `path`, straight in the model chart between vertices.
pub fn path_length(path: &[FNPoint], metric: &ModelMetric) -> Result<f64> {
    let Some(first) = path.first() else { return Ok(0.0) };
    let sigma = match classify_tile(first, metric.epsilon)? {
        Tile::Thin(t) => t.sigma,
        Tile::Thick => return Err(Error::PathLeavesTile { index: 0 }),
    };
    for (i, x) in path.iter().enumerate().skip(1) {
        if !same_decomposition(first, x) {
            return Err(Error::DecompositionMismatch);
        }
        match classify_tile(x, metric.epsilon)? {
            Tile::Thin(t) if t.sigma == sigma => {}
            _ => return Err(Error::PathLeavesTile { index: i }),
        }
    }
    let curves = sigma.curves();
    let mut total = 0.0;
    for pair in path.windows(2) {
        let (x, y) = (&pair[0], &pair[1]);
        let ux = project_u(x, &sigma);
        let uy = project_u(y, &sigma);
        let dtheta: Vec<f64> = curves.iter().map(|&c| y.twist_fraction(c) - x.twist_fraction(c)).collect();
        let thick = thick_chart(x, curves)
            .iter()
            .zip(thick_chart(y, curves))
            .map(|(a, b)| (b.0 - a.0).powi(2) + (b.1 - a.1).powi(2))
            .sum::<f64>()
            .sqrt();
        let integrand = |t: f64| {
            let factors: Vec<Factor> = (0..curves.len())
                .map(|k| Factor { u: ux[k] + t * (uy[k] - ux[k]), dtheta: dtheta[k], du: uy[k] - ux[k] })
                .collect();
            quadratic_form(metric.mode, metric.epsilon, thick, &factors).sqrt()
        };
        total += integrate(integrand);
    }
    Ok(total)
}

/// Composite midpoint rule on `[0, 1]`, doubling until successive values agree to the tolerance.
fn integrate(f: impl Fn(f64) -> f64) -> f64 {
    let mut n = 1usize;
    let mut prev = f(0.5);
    loop {
        n *= 2;
        let h = 1.0 / n as f64;
        let next = (0..n).map(|i| f((i as f64 + 0.5) * h)).sum::<f64>() * h;
        if (next - prev).abs() <= PATH_TOLERANCE * next.abs() || n >= 1 << 20 {
            return next;
        }
        prev = next;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    SameTile,
    ThroughThick,
    ThroughFaces,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModelDistance {
    pub distance: f64,
    pub route: Route,
    /// Route (i), when the tiles have the same type.
    pub same_tile: Option<f64>,
    /// Route (ii): `|u_x − a| + D₁ + |u_y − a|`.
    pub through_thick: f64,
    /// Cone distance of the images plus `D₁`; skipped when route (i) is already below `D₁`.
    pub through_faces: Option<f64>,
    /// Horoball distances of route (i) under the best matching of curves.
    pub per_factor: Vec<f64>,
}

/// The cone point of a classified point: the catalog simplex of its short multicurve, with
/// weights `u_α − a` placed through the canonical curve order.
pub fn tile_cone_point(tile: &Tile, x: &FNPoint, gluing: &OctantGluing) -> Result<ConePoint> {
    let Tile::Thin(t) = tile else { return Ok(ConePoint::APEX) };
    let canonical = x.pd().cut_graph(&t.sigma, false).canonical();
    let s = gluing
        .complex()
        .by_type_label(&t.type_label.0)
        .ok_or_else(|| Error::InvalidConePoint(format!("type `{}` is not in the catalog", t.type_label)))?;
    let mut w = vec![0.0; t.sigma.len()];
    for (j, &pos) in canonical.edge_map.iter().enumerate() {
        w[pos] = t.cone_coords[j];
    }
    let radius = w.iter().map(|v| v * v).sum::<f64>().sqrt();
    ConePoint::new(radius, &gluing.complex().simplex(s).id, &w)
}

struct Classified<'a> {
    point: &'a FNPoint,
    tile: Tile,
}

impl Classified<'_> {
    fn sigma(&self) -> &[usize] {
        self.tile.thin().map_or(&[], |t| t.sigma.curves())
    }

    fn cone_norm(&self) -> f64 {
        self.tile.thin().map_or(0.0, |t| t.cone_coords.iter().map(|v| v * v).sum::<f64>().sqrt())
    }
}

/// Route (i): best matching of the short curves by a type isomorphism, horoball factors in ℓ²
/// with the thick term clamped to `D₁`.
fn same_tile_route(x: &Classified, y: &Classified, metric: &ModelMetric) -> Option<(f64, Vec<f64>)> {
    let d1 = metric.thick_diameter;
    let same_pd = same_decomposition(x.point, y.point);
    let thick_gap = |sx: &[usize], sy: &[usize]| -> f64 {
        if !same_pd || sx != sy {
            return d1;
        }
        let d = thick_chart(x.point, sx)
            .iter()
            .zip(thick_chart(y.point, sy))
            .map(|(a, b)| (a.0 - b.0).powi(2) + wrap(a.1 - b.1).powi(2))
            .sum::<f64>()
            .sqrt();
        d.min(d1)
    };
    match (&x.tile, &y.tile) {
        (Tile::Thick, Tile::Thick) => Some((thick_gap(&[], &[]), Vec::new())),
        (Tile::Thin(tx), Tile::Thin(ty)) if tx.type_label == ty.type_label => {
            let gx = x.point.pd().cut_graph(&tx.sigma, false);
            let gy = y.point.pd().cut_graph(&ty.sigma, false);
            let (sx, sy) = (tx.sigma.curves(), ty.sigma.curves());
            let chart = |p: &FNPoint, curves: &[usize]| -> Vec<(f64, f64)> {
                curves.iter().map(|&c| (p.twist_fraction(c), -0.5 * p.length(c).ln())).collect()
            };
            let (cx, cy) = (chart(x.point, sx), chart(y.point, sy));
            let mut best: Option<(f64, Vec<f64>)> = None;
            for iso in gx.isomorphisms(&gy) {
                let factors: Vec<f64> = (0..sx.len())
                    .map(|j| {
                        let (a, b) = (cx[j], cy[iso[j]]);
                        horoball_distance((0.0, a.1), (wrap(b.0 - a.0), b.1))
                    })
                    .collect();
                let identity = (0..sx.len()).all(|j| sx[j] == sy[iso[j]]);
                let t = if identity { thick_gap(sx, sy) } else { d1 };
                let d = (factors.iter().map(|h| h * h).sum::<f64>() + t * t).sqrt();
                if best.as_ref().is_none_or(|(b, _)| d < *b) {
                    best = Some((d, factors));
                }
            }
            best
        }
        _ => None,
    }
}

/// Coarse model distance: the shorter of the same-tile route and the route following the cone
/// geodesic through shared faces (or the thick part) at one transition charge `D₁`.
pub fn model_distance(x: &FNPoint, y: &FNPoint, metric: &ModelMetric, gluing: &OctantGluing) -> Result<ModelDistance> {
    let cx = Classified { point: x, tile: classify_tile(x, metric.epsilon)? };
    let cy = Classified { point: y, tile: classify_tile(y, metric.epsilon)? };
    let d1 = metric.thick_diameter;
    let through_thick = cx.cone_norm() + d1 + cy.cone_norm();
    if x == y {
        return Ok(ModelDistance {
            distance: 0.0,
            route: Route::SameTile,
            same_tile: Some(0.0),
            through_thick,
            through_faces: None,
            per_factor: vec![0.0; cx.sigma().len()],
        });
    }
    let same = same_tile_route(&cx, &cy, metric);
    let through_faces = match &same {
        Some((d, _)) if *d <= d1 => None,
        _ => {
            let (px, py) = (tile_cone_point(&cx.tile, x, gluing)?, tile_cone_point(&cy.tile, y, gluing)?);
            Some(gluing.cone_distance(&px, &py)? + d1)
        }
    };
    let mut distance = through_thick;
    let mut route = Route::ThroughThick;
    if let Some(f) = through_faces {
        if f < distance {
            distance = f;
            route = Route::ThroughFaces;
        }
    }
    if let Some((d, _)) = &same {
        if *d <= distance {
            distance = *d;
            route = Route::SameTile;
        }
    }
    Ok(ModelDistance {
        distance,
        route,
        same_tile: same.as_ref().map(|s| s.0),
        through_thick,
        through_faces,
        per_factor: same.map(|s| s.1).unwrap_or_default(),
    })
}
