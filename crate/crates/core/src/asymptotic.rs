//! The net of maximal cones, the maps `f₁` and `f_n = f₁/n` into the Euclidean cone over the
//! quotient curve complex, and empirical distortion of `f_n`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{pants_graph_types, ConePoint, OctantGluing, SphericalComplex};
use crate::error::{Error, Result};
use crate::hyperbolic::{FNPoint, FnCoordinate, MarkedSurface};
use crate::metric::{model_distance, MetricMode, ModelMetric, Route};
use crate::tiling::DEFAULT_EPSILON;
use crate::topology::PantsDecomposition;

/// One maximal cone of the net: a decomposition of the chamber's type and its base point,
/// all lengths `ε` and all twists zero.
#[derive(Clone, Debug)]
pub struct NetCone {
    pub simplex: String,
    pub type_label: String,
    pub base_point: FNPoint,
}

#[derive(Clone, Debug)]
pub struct Net {
    pub epsilon: f64,
    pub apex_level: f64,
    pub cones: Vec<NetCone>,
    pub metric: ModelMetric,
    gluing: OctantGluing,
}

pub fn build_net(epsilon: f64, complex: &SphericalComplex) -> Result<Net> {
    if !(epsilon > 0.0 && epsilon <= DEFAULT_EPSILON) {
        return Err(Error::EpsilonOutOfRange { epsilon, max: DEFAULT_EPSILON });
    }
    let gluing = OctantGluing::new(complex)?;
    let graphs = pants_graph_types(complex.surface);
    let mut cones = Vec::new();
    for &s in gluing.chambers() {
        let simplex = complex.simplex(s);
        let graph = graphs
            .iter()
            .find(|g| g.type_label() == simplex.type_label)
            .ok_or_else(|| Error::InvalidConePoint(format!("no pants decomposition of type `{}`", simplex.type_label)))?;
        let pd = PantsDecomposition::from_graph(complex.surface.genus, graph)?;
        let n = pd.curve_count();
        let surface = MarkedSurface::new(pd)?;
        let base_point = FNPoint::from_lengths_twists(surface, &vec![epsilon; n], &vec![0.0; n])?;
        let label = base_point.pd().cut_graph(&base_point.pd().all_curves(), false).type_label();
        if label != simplex.type_label {
            return Err(Error::InvalidConePoint(format!("base point has type `{label}`, expected `{}`", simplex.type_label)));
        }
        cones.push(NetCone { simplex: simplex.id.clone(), type_label: label, base_point });
    }
    if cones.is_empty() {
        return Err(Error::MissingMaximalSimplices);
    }
    let metric = ModelMetric::new(epsilon, MetricMode::ThinModel, crate::metric::DEFAULT_THICK_DIAMETER)?;
    Ok(Net { epsilon, apex_level: -0.5 * epsilon.ln(), cones, metric, gluing })
}

impl Net {
    pub fn with_metric(mut self, mode: MetricMode, thick_diameter: f64) -> Result<Self> {
        self.metric = ModelMetric::new(self.epsilon, mode, thick_diameter)?;
        Ok(self)
    }

    pub fn gluing(&self) -> &OctantGluing {
        &self.gluing
    }

    pub fn complex(&self) -> &SphericalComplex {
        self.gluing.complex()
    }

    /// The point of cone `cone` with chart coordinates `u_α − a = offsets[α]` (curve order of
    /// the cone's decomposition) and twist fractions `fractions[α]`.
    pub fn point(&self, cone: usize, offsets: &[f64], fractions: &[f64]) -> Result<FNPoint> {
        let c = self.cones.get(cone).ok_or_else(|| Error::InvalidArgument(format!("no cone {cone}")))?;
        let base = &c.base_point;
        let n = base.pd().curve_count();
        if offsets.len() != n || fractions.len() != n {
            return Err(Error::InvalidArgument(format!("cone {cone} has {n} curves")));
        }
        if offsets.iter().any(|&x| !(x >= 0.0 && x.is_finite())) {
            return Err(Error::NotInNet);
        }
        let coords = offsets
            .iter()
            .zip(fractions)
            .map(|(&x, &f)| {
                let length = self.epsilon * (-2.0 * x).exp();
                FnCoordinate { length, twist: f * length }
            })
            .collect();
        FNPoint::new(base.surface().clone(), coords)
    }

    /// `f₁`: the cone point with weights `u_α − a` over the chamber of the point's pants type.
    pub fn f1(&self, x: &FNPoint) -> Result<ConePoint> {
        let pd = x.pd();
        let all = pd.all_curves();
        let offsets: Vec<f64> = (0..pd.curve_count()).map(|c| 0.5 * (self.epsilon / x.length(c)).ln()).collect();
        if offsets.iter().any(|&v| v < 0.0) {
            return Err(Error::NotInNet);
        }
        let canonical = pd.cut_graph(&all, false).canonical();
        let label = canonical.graph.type_label();
        let s = self.complex().by_type_label(&label).ok_or(Error::NotInNet)?;
        let mut w = vec![0.0; offsets.len()];
        for (c, &pos) in canonical.edge_map.iter().enumerate() {
            w[pos] = offsets[c];
        }
        let radius = w.iter().map(|v| v * v).sum::<f64>().sqrt();
        ConePoint::new(radius, &self.complex().simplex(s).id, &w)
    }

    /// `f_n = f₁/n`.
    pub fn fn_map(&self, n: u32, x: &FNPoint) -> Result<ConePoint> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        Ok(self.f1(x)?.scaled(n as f64))
    }
}

pub fn f1_map(net: &Net, x: &FNPoint) -> Result<ConePoint> {
    net.f1(x)
}

pub fn fn_map(net: &Net, n: u32, x: &FNPoint) -> Result<ConePoint> {
    net.fn_map(n, x)
}

/// Bins of `n·defect / D₁` of width 1/4; the last bin collects everything from 2.5 up.
pub const HISTOGRAM_BINS: usize = 11;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RouteStats {
    pub route: Route,
    pub count: usize,
    pub sup_defect: f64,
    pub histogram: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistortionReport {
    pub n: u32,
    pub radius: f64,
    pub samples: usize,
    pub sup_defect: f64,
    pub seed: u64,
    pub routes: Vec<RouteStats>,
}

/// A sampled pair: cones, chart offsets and twist fractions of both points.
#[derive(Clone, Debug)]
pub struct SamplePair {
    pub x: (usize, Vec<f64>, Vec<f64>),
    pub y: (usize, Vec<f64>, Vec<f64>),
}

fn sample_offsets(rng: &mut ChaCha8Rng, dim: usize, r: f64) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>() * r).collect();
        if v.iter().map(|x| x * x).sum::<f64>() <= r * r {
            return v;
        }
    }
}

impl Net {
    /// Pair `k` of the sample for `seed`: a uniform cone, offsets uniform in the ball of radius
    /// `r` intersected with the orthant, twist fractions uniform in `[0, 1)`. Pair `k` depends
    /// only on `(seed, k, r)`, so any split over workers yields the same sample.
    pub fn sample_pair(&self, seed: u64, k: u64, r: f64) -> SamplePair {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k);
        let dim = self.complex().dimension() + 1;
        let one = |rng: &mut ChaCha8Rng| {
            let cone = rng.gen_range(0..self.cones.len());
            let offsets = sample_offsets(rng, dim, r);
            let fractions = (0..dim).map(|_| rng.gen::<f64>()).collect();
            (cone, offsets, fractions)
        };
        let x = one(&mut rng);
        let y = one(&mut rng);
        SamplePair { x, y }
    }
}

struct PairOutcome {
    route: Route,
    defects: Vec<f64>,
}

/// Distortion of `f_n` for every `n` in `ns`, on the same `samples` pairs in the ball of radius
/// `r`: sup of `|d_model/n − d_C(f_n x, f_n y)|`.
pub fn estimate_distortion_many(net: &Net, ns: &[u32], r: f64, samples: usize, seed: u64) -> Result<Vec<DistortionReport>> {
    if ns.contains(&0) {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {r}")));
    }
    let outcomes: Vec<PairOutcome> = (0..samples as u64)
        .into_par_iter()
        .map(|k| {
            let p = net.sample_pair(seed, k, r);
            let x = net.point(p.x.0, &p.x.1, &p.x.2)?;
            let y = net.point(p.y.0, &p.y.1, &p.y.2)?;
            let d = model_distance(&x, &y, &net.metric, &net.gluing)?;
            let (fx, fy) = (net.f1(&x)?, net.f1(&y)?);
            let defects = ns
                .iter()
                .map(|&n| {
                    let s = n as f64;
                    let dc = net.gluing.cone_distance(&fx.scaled(s), &fy.scaled(s))?;
                    Ok((d.distance / s - dc).abs())
                })
                .collect::<Result<Vec<f64>>>()?;
            Ok(PairOutcome { route: d.route, defects })
        })
        .collect::<Result<_>>()?;
    let d1 = net.metric.thick_diameter;
    Ok(ns
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let mut routes: Vec<RouteStats> = [Route::SameTile, Route::ThroughThick, Route::ThroughFaces]
                .into_iter()
                .map(|route| RouteStats { route, count: 0, sup_defect: 0.0, histogram: vec![0; HISTOGRAM_BINS] })
                .collect();
            for o in &outcomes {
                let st = routes.iter_mut().find(|s| s.route == o.route).expect("all routes listed");
                let e = o.defects[i];
                st.count += 1;
                st.sup_defect = st.sup_defect.max(e);
                let bin = ((e * n as f64 / d1) * 4.0).floor() as usize;
                st.histogram[bin.min(HISTOGRAM_BINS - 1)] += 1;
            }
            let sup_defect = routes.iter().map(|s| s.sup_defect).fold(0.0, f64::max);
            DistortionReport { n, radius: r, samples, sup_defect, seed, routes }
        })
        .collect())
}

pub fn estimate_distortion(net: &Net, n: u32, r: f64, samples: usize, seed: u64) -> Result<DistortionReport> {
    Ok(estimate_distortion_many(net, &[n], r, samples, seed)?.remove(0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlatProbe {
    pub radius: f64,
    pub cone: String,
    pub sides: [f64; 4],
    pub diagonals: [f64; 2],
    /// Mean diagonal over mean side.
    pub ratio: f64,
    pub deviation: f64,
    /// `4·D₁/r`.
    pub bound: f64,
    pub within_bound: bool,
}

/// Model distances around a square of side `r` in the first two chart coordinates of the first
/// cone. Chambers are folded by the symmetries of their type, so the square sits in the sector
/// `X₀ > X₁ > X₂ > …`, where the folded distance is still Euclidean.
pub fn flat_sector_probe(net: &Net, r: f64) -> Result<FlatProbe> {
    let d = net.complex().dimension() as u32 + 1;
    if d < 2 {
        return Err(Error::UnsupportedProbe(d));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {r}")));
    }
    let corner = |i: f64, j: f64| {
        let mut offsets: Vec<f64> = (0..d as usize).map(|k| 1.0 / k.max(1) as f64).collect();
        offsets[0] = r + 2.0 + i * r;
        offsets[1] = 1.0 + j * r;
        net.point(0, &offsets, &vec![0.0; d as usize])
    };
    let p = [corner(0.0, 0.0)?, corner(1.0, 0.0)?, corner(1.0, 1.0)?, corner(0.0, 1.0)?];
    let dist = |a: &FNPoint, b: &FNPoint| model_distance(a, b, &net.metric, &net.gluing).map(|m| m.distance);
    let sides = [dist(&p[0], &p[1])?, dist(&p[1], &p[2])?, dist(&p[2], &p[3])?, dist(&p[3], &p[0])?];
    let diagonals = [dist(&p[0], &p[2])?, dist(&p[1], &p[3])?];
    let ratio = (diagonals.iter().sum::<f64>() / 2.0) / (sides.iter().sum::<f64>() / 4.0);
    let deviation = (ratio - std::f64::consts::SQRT_2).abs();
    let bound = 4.0 * net.metric.thick_diameter / r;
    Ok(FlatProbe { radius: r, cone: net.cones[0].simplex.clone(), sides, diagonals, ratio, deviation, bound, within_bound: deviation <= bound })
}
