//! The Euclidean cone over the complex: points, the cone metric, lattice upper bounds for the
//! complex distance, and midpoint comparison defects.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::geometry::{angle, unit, Located, OctantGluing};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    /// Catalog simplex id.
    pub simplex: String,
    /// Nonnegative weights summing to one; the chart point is their normalization.
    pub barycentric: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConePoint {
    pub radius: f64,
    /// `None` exactly at the apex.
    pub direction: Option<Direction>,
}

impl ConePoint {
    pub const APEX: ConePoint = ConePoint { radius: 0.0, direction: None };

    pub fn new(radius: f64, simplex: &str, weights: &[f64]) -> Result<Self> {
        if !(radius.is_finite() && radius >= 0.0) {
            return Err(Error::InvalidConePoint(format!("radius {radius}")));
        }
        if radius == 0.0 {
            return Ok(Self::APEX);
        }
        let total: f64 = weights.iter().sum();
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) || !(total > 0.0) {
            return Err(Error::InvalidConePoint("weights must be nonnegative and not all zero".into()));
        }
        Ok(ConePoint {
            radius,
            direction: Some(Direction { simplex: simplex.to_string(), barycentric: weights.iter().map(|w| w / total).collect() }),
        })
    }

    pub fn is_apex(&self) -> bool {
        self.direction.is_none()
    }

    /// Same direction, radius divided by `n`.
    pub fn scaled(&self, n: f64) -> ConePoint {
        if self.is_apex() {
            return Self::APEX;
        }
        ConePoint { radius: self.radius / n, direction: self.direction.clone() }
    }
}

/// A cone point resolved against a gluing.
struct Resolved {
    radius: f64,
    located: Option<Located>,
    key: Option<(usize, Vec<f64>)>,
}

fn cmp_keys(a: &(f64, Option<(usize, Vec<f64>)>), b: &(f64, Option<(usize, Vec<f64>)>)) -> Ordering {
    a.0.total_cmp(&b.0).then_with(|| match (&a.1, &b.1) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (Some((s, u)), Some((t, v))) => {
            s.cmp(t).then_with(|| u.iter().zip(v).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal))
        }
    })
}

impl OctantGluing {
    fn direction_simplex(&self, d: &Direction) -> Result<usize> {
        let s = self
            .complex()
            .index_of(&d.simplex)
            .ok_or_else(|| Error::InvalidConePoint(format!("unknown simplex `{}`", d.simplex)))?;
        let dim = self.complex().simplex(s).dim;
        if d.barycentric.len() != dim + 1 {
            return Err(Error::InvalidConePoint(format!("simplex `{}` needs {} weights", d.simplex, dim + 1)));
        }
        let total: f64 = d.barycentric.iter().sum();
        if d.barycentric.iter().any(|w| !(w.is_finite() && *w >= 0.0)) || (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidConePoint("barycentric coordinates must be nonnegative and sum to one".into()));
        }
        Ok(s)
    }

    pub fn locate_direction(&self, d: &Direction) -> Result<Located> {
        let s = self.direction_simplex(d)?;
        Ok(self.locate(s, &d.barycentric))
    }

    fn resolve(&self, p: &ConePoint) -> Result<Resolved> {
        if !(p.radius.is_finite() && p.radius >= 0.0) {
            return Err(Error::InvalidConePoint(format!("radius {}", p.radius)));
        }
        match &p.direction {
            None if p.radius == 0.0 => Ok(Resolved { radius: 0.0, located: None, key: None }),
            None => Err(Error::InvalidConePoint("positive radius without a direction".into())),
            Some(_) if p.radius == 0.0 => Ok(Resolved { radius: 0.0, located: None, key: None }),
            Some(d) => {
                let s = self.direction_simplex(d)?;
                Ok(Resolved { radius: p.radius, located: Some(self.locate(s, &d.barycentric)), key: Some(self.canonical_point(s, &d.barycentric)) })
            }
        }
    }

    /// Distance in the complex between the directions of two non-apex points.
    pub fn direction_distance(&self, a: &Direction, b: &Direction) -> Result<f64> {
        let (p, q) = (self.locate_direction(a)?, self.locate_direction(b)?);
        Ok(self.distance(&p, &q))
    }

    /// Cone metric `d² = a² + b² − 2ab·cos(min(π, d_K))`, in a cancellation-free form.
    pub fn cone_distance(&self, u: &ConePoint, v: &ConePoint) -> Result<f64> {
        let (ru, rv) = (self.resolve(u)?, self.resolve(v)?);
        let (x, y) = match cmp_keys(&(ru.radius, ru.key.clone()), &(rv.radius, rv.key.clone())) {
            Ordering::Greater => (rv, ru),
            _ => (ru, rv),
        };
        let (Some(p), Some(q)) = (&x.located, &y.located) else {
            return Ok(x.radius.max(y.radius));
        };
        let theta = self.distance(p, q);
        Ok(cone_law(x.radius, y.radius, theta))
    }

    /// Midpoint of the cone geodesic from `u` to `v`.
    pub fn midpoint(&self, u: &ConePoint, v: &ConePoint) -> Result<ConePoint> {
        let (ru, rv) = (self.resolve(u)?, self.resolve(v)?);
        let (p, q) = match (&ru.located, &rv.located) {
            (None, None) => return Ok(ConePoint::APEX),
            (None, Some(_)) => return Ok(v.scaled(2.0)),
            (Some(_), None) => return Ok(u.scaled(2.0)),
            (Some(p), Some(q)) => (p, q),
        };
        let (a, b) = (ru.radius, rv.radius);
        let geodesic = self.geodesic(p, q).filter(|g| g.length() < PI);
        let Some(g) = geodesic else {
            // through the apex
            return Ok(if a > b {
                ConePoint { radius: 0.5 * (a - b), direction: u.direction.clone() }
            } else if b > a {
                ConePoint { radius: 0.5 * (b - a), direction: v.direction.clone() }
            } else {
                ConePoint::APEX
            });
        };
        let theta = g.length();
        let (mx, my) = (0.5 * (a + b * theta.cos()), 0.5 * b * theta.sin());
        let radius = mx.hypot(my);
        if radius == 0.0 {
            return Ok(ConePoint::APEX);
        }
        let phi = my.atan2(mx);
        let (s, x) = self.point_at(&g, phi);
        let total: f64 = x.iter().sum();
        let w: Vec<f64> = x.iter().map(|v| v / total).collect();
        Ok(ConePoint { radius, direction: Some(Direction { simplex: self.complex().simplex(s).id.clone(), barycentric: w }) })
    }

    /// CAT(0) midpoint defect of the triangle `(x, y, z)`: `d(m, z)` minus its Euclidean
    /// comparison value, with `m` the midpoint of `xy`.
    pub fn comparison_defect(&self, x: &ConePoint, y: &ConePoint, z: &ConePoint) -> Result<f64> {
        let dxy = self.cone_distance(x, y)?;
        let dxz = self.cone_distance(x, z)?;
        let dyz = self.cone_distance(y, z)?;
        let m = self.midpoint(x, y)?;
        let dmz = self.cone_distance(&m, z)?;
        let comparison = (0.5 * (dxz * dxz + dyz * dyz) - 0.25 * dxy * dxy).max(0.0).sqrt();
        Ok(dmz - comparison)
    }
}

/// `sqrt((a − b)² + 4ab·sin²(θ/2))` with `θ` clamped to `[0, π]`.
pub fn cone_law(a: f64, b: f64, theta: f64) -> f64 {
    let s = (0.5 * theta.clamp(0.0, PI)).sin();
    ((a - b) * (a - b) + 4.0 * a * b * s * s).sqrt()
}

/// Upper bound for a complex distance together with the guaranteed gap to the true value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundedDistance {
    pub upper: f64,
    pub error_bound: f64,
}

/// Barycentric lattice of denominator `k` in every chamber, joined by exact chord angles.
pub struct LatticeGraph<'a> {
    gluing: &'a OctantGluing,
    refinement: usize,
    /// Per chamber: `(node, unit chart vector)`.
    chamber_nodes: Vec<Vec<(usize, Vec<f64>)>>,
    adjacency: Vec<Vec<(usize, f64)>>,
}

fn compositions(k: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![k]];
    }
    let mut out = Vec::new();
    for first in 0..=k {
        for mut rest in compositions(k - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[derive(PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl<'a> LatticeGraph<'a> {
    pub fn new(gluing: &'a OctantGluing, refinement: usize) -> Result<Self> {
        if refinement == 0 {
            return Err(Error::InvalidArgument("refinement must be positive".into()));
        }
        let n = gluing.rank();
        let mut ids: HashMap<(usize, Vec<u64>), usize> = HashMap::new();
        let mut chamber_nodes = Vec::new();
        for &c in gluing.chambers() {
            let mut nodes = Vec::new();
            for m in compositions(refinement, n) {
                let w: Vec<f64> = m.iter().map(|&x| x as f64).collect();
                let (s, cw) = gluing.canonical_point(c, &w);
                let key = (s, cw.iter().map(|&x| x as u64).collect());
                let next = ids.len();
                let id = *ids.entry(key).or_insert(next);
                nodes.push((id, unit(&w)));
            }
            chamber_nodes.push(nodes);
        }
        let mut adjacency = vec![Vec::new(); ids.len()];
        for nodes in &chamber_nodes {
            for (i, (a, x)) in nodes.iter().enumerate() {
                for (b, y) in &nodes[i + 1..] {
                    let w = angle(x, y);
                    adjacency[*a].push((*b, w));
                    adjacency[*b].push((*a, w));
                }
            }
        }
        Ok(LatticeGraph { gluing, refinement, chamber_nodes, adjacency })
    }

    /// Snapping each of at most `n` facet crossings per straight piece, over at most `V + 1`
    /// pieces, to the lattice costs at most `2π(n − 1)/k` each.
    pub fn error_bound(&self) -> f64 {
        let n = self.gluing.rank() as f64;
        let v = self.gluing.complex_vertices().len() as f64;
        2.0 * PI * n * (n - 1.0) * (v + 1.0) / self.refinement as f64
    }

    pub fn distance(&self, a: &Direction, b: &Direction) -> Result<BoundedDistance> {
        let p = self.gluing.locate_direction(a)?;
        let q = self.gluing.locate_direction(b)?;
        let reps = |l: &Located| -> Vec<(usize, Vec<f64>)> { l.reps().to_vec() };
        let (pr, qr) = (reps(&p), reps(&q));
        let mut best = f64::INFINITY;
        for (c, x) in &pr {
            for (d, y) in &qr {
                if c == d {
                    best = best.min(angle(x, y));
                }
            }
        }
        let mut dist = vec![f64::INFINITY; self.adjacency.len()];
        let mut heap = BinaryHeap::new();
        for (c, x) in &pr {
            for (id, u) in &self.chamber_nodes[*c] {
                let w = angle(x, u);
                if w < dist[*id] {
                    dist[*id] = w;
                    heap.push(Entry(w, *id));
                }
            }
        }
        while let Some(Entry(d, v)) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            for &(u, w) in &self.adjacency[v] {
                let nd = d + w;
                if nd < dist[u] {
                    dist[u] = nd;
                    heap.push(Entry(nd, u));
                }
            }
        }
        for (d, y) in &qr {
            for (id, u) in &self.chamber_nodes[*d] {
                best = best.min(dist[*id] + angle(u, y));
            }
        }
        Ok(BoundedDistance { upper: best, error_bound: self.error_bound() })
    }
}
