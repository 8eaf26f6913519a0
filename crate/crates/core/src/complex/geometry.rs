//! Chamber charts of a pure all-right complex: every maximal simplex is the positive orthant of
//! `R^n` (unit vectors are points of the simplex), and facets are glued by signed permutations.
//! Straight geodesics are found by unfolding galleries into the chart of the starting chamber.

use std::collections::{HashMap, HashSet};
use std::f64::consts::PI;

use crate::error::{Error, Result};

use super::catalog::SphericalComplex;

/// A gallery developed into the chart of its first chamber.
#[derive(Clone, Debug)]
struct Frame {
    chamber: usize,
    /// Chart axis `k` of `chamber` lies along axis `axis[k]` of the start chart, with sign `sign[k]`.
    axis: Vec<usize>,
    sign: Vec<f64>,
    /// Start-chart axes crossed, in gallery order.
    crossed: Vec<usize>,
    parent: Option<usize>,
}

/// A point of the complex seen from every chamber containing it.
#[derive(Clone, Debug)]
pub struct Located {
    /// `(chamber, unit vector in its chart)`, one entry per chart image.
    reps: Vec<(usize, Vec<f64>)>,
}

impl Located {
    pub fn reps(&self) -> &[(usize, Vec<f64>)] {
        &self.reps
    }
}

#[derive(Clone, Debug)]
struct Straight {
    angle: f64,
    start: (usize, Vec<f64>),
    /// `(start chamber, frame index)`; `None` when both ends share a chart.
    frame: Option<(usize, usize)>,
    end: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct Geodesic {
    pieces: Vec<Straight>,
}

impl Geodesic {
    pub fn length(&self) -> f64 {
        self.pieces.iter().map(|p| p.angle).sum()
    }
}

/// Hyperoctant realization of a pure complex.
#[derive(Clone, Debug)]
pub struct OctantGluing {
    complex: SphericalComplex,
    n: usize,
    /// Simplex index of each chamber.
    chambers: Vec<usize>,
    chamber_of: HashMap<usize, usize>,
    /// Per simplex: `(chamber, vertex map into the chamber)`, closed under symmetries.
    embeddings: Vec<Vec<(usize, Vec<usize>)>>,
    /// Per start chamber: all galleries crossing each start-chart hyperplane at most once.
    frames: Vec<Vec<Frame>>,
    /// Per start chamber and end chamber: frame indices.
    frames_to: Vec<Vec<Vec<usize>>>,
    vertices: Vec<usize>,
    vertex_points: Vec<Located>,
    vertex_dist: Vec<Vec<f64>>,
    vertex_next: Vec<Vec<Option<usize>>>,
    vertex_pieces: Vec<Vec<Option<Straight>>>,
}

pub fn unit(v: &[f64]) -> Vec<f64> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / norm).collect()
}

/// Angle between unit vectors, accurate at both ends of `[0, π]`.
pub fn angle(x: &[f64], y: &[f64]) -> f64 {
    let (mut d, mut s) = (0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        d += (a - b) * (a - b);
        s += (a + b) * (a + b);
    }
    2.0 * d.sqrt().atan2(s.sqrt())
}

impl OctantGluing {
    pub fn new(complex: &SphericalComplex) -> Result<Self> {
        let n = complex.surface.complexity() as usize;
        if let Some(id) = complex.non_pure_simplex() {
            return Err(Error::NotPure(id.to_string()));
        }
        let chambers = complex.maximal_simplices();
        if chambers.is_empty() {
            return Err(Error::MissingMaximalSimplices);
        }
        let chamber_of: HashMap<usize, usize> = chambers.iter().enumerate().map(|(c, &s)| (s, c)).collect();
        let embeddings = Self::embeddings(complex, &chambers, &chamber_of);
        let mut g = OctantGluing {
            complex: complex.clone(),
            n,
            chambers,
            chamber_of,
            embeddings,
            frames: Vec::new(),
            frames_to: Vec::new(),
            vertices: complex.vertices().collect(),
            vertex_points: Vec::new(),
            vertex_dist: Vec::new(),
            vertex_next: Vec::new(),
            vertex_pieces: Vec::new(),
        };
        for c in 0..g.chambers.len() {
            let frames = g.galleries(c);
            let mut to = vec![Vec::new(); g.chambers.len()];
            for (i, f) in frames.iter().enumerate() {
                to[f.chamber].push(i);
            }
            g.frames.push(frames);
            g.frames_to.push(to);
        }
        g.vertex_points = g.vertices.iter().map(|&v| g.locate(v, &[1.0])).collect();
        g.vertex_graph();
        Ok(g)
    }

    fn embeddings(
        complex: &SphericalComplex,
        chambers: &[usize],
        chamber_of: &HashMap<usize, usize>,
    ) -> Vec<Vec<(usize, Vec<usize>)>> {
        let simplices = complex.simplices();
        let mut emb: Vec<Vec<(usize, Vec<usize>)>> = vec![Vec::new(); simplices.len()];
        for &s in chambers {
            emb[s] = simplices[s].symmetries.iter().map(|g| (chamber_of[&s], g.clone())).collect();
        }
        let top = chambers.iter().map(|&s| simplices[s].dim).max().unwrap_or(0);
        for dim in (0..top).rev() {
            for (p, ps) in simplices.iter().enumerate().filter(|(_, s)| s.dim == dim + 1) {
                for (i, &f) in ps.faces.iter().enumerate() {
                    let parents = emb[p].clone();
                    for (c, m) in parents {
                        for h in &simplices[f].symmetries {
                            let map: Vec<usize> = h.iter().map(|&k| m[ps.face_vertices[i][k]]).collect();
                            if !emb[f].contains(&(c, map.clone())) {
                                emb[f].push((c, map));
                            }
                        }
                    }
                }
            }
        }
        emb
    }

    fn galleries(&self, start: usize) -> Vec<Frame> {
        let n = self.n;
        let mut frames = vec![Frame {
            chamber: start,
            axis: (0..n).collect(),
            sign: vec![1.0; n],
            crossed: Vec::new(),
            parent: None,
        }];
        let mut seen: HashSet<(usize, Vec<usize>, Vec<usize>)> = HashSet::new();
        seen.insert((start, frames[0].axis.clone(), Vec::new()));
        let mut i = 0;
        while i < frames.len() {
            let f = frames[i].clone();
            let simplex = self.complex.simplex(self.chambers[f.chamber]);
            for facet in 0..simplex.faces.len() {
                let a = f.axis[facet];
                if f.crossed.contains(&a) {
                    continue;
                }
                let face = simplex.faces[facet];
                let fv = &simplex.face_vertices[facet];
                for (c2, e) in &self.embeddings[face] {
                    let mut axis = vec![usize::MAX; n];
                    let mut sign = vec![0.0; n];
                    for (k, &t) in e.iter().enumerate() {
                        axis[t] = f.axis[fv[k]];
                        sign[t] = f.sign[fv[k]];
                    }
                    let j = (0..n).find(|&t| axis[t] == usize::MAX).expect("facet misses one vertex");
                    axis[j] = a;
                    sign[j] = -f.sign[facet];
                    let mut crossed = f.crossed.clone();
                    crossed.push(a);
                    if seen.insert((*c2, axis.clone(), crossed.clone())) {
                        frames.push(Frame { chamber: *c2, axis, sign, crossed, parent: Some(i) });
                    }
                }
            }
            i += 1;
        }
        frames
    }

    pub fn complex(&self) -> &SphericalComplex {
        &self.complex
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn chambers(&self) -> &[usize] {
        &self.chambers
    }

    pub fn chamber_index(&self, simplex: usize) -> Option<usize> {
        self.chamber_of.get(&simplex).copied()
    }

    pub fn frame_count(&self) -> usize {
        self.frames.iter().map(Vec::len).sum()
    }

    /// Embeddings of `simplex` into chambers, closed under symmetries.
    pub fn embeddings_of(&self, simplex: usize) -> &[(usize, Vec<usize>)] {
        &self.embeddings[simplex]
    }

    /// All chart images of the point of `simplex` with (nonnegative) weights `w`.
    pub fn locate(&self, simplex: usize, w: &[f64]) -> Located {
        let mut reps: Vec<(usize, Vec<f64>)> = Vec::new();
        for (c, m) in &self.embeddings[simplex] {
            let mut x = vec![0.0; self.n];
            for (k, &t) in m.iter().enumerate() {
                x[t] = w[k];
            }
            let x = unit(&x);
            if !reps.contains(&(*c, x.clone())) {
                reps.push((*c, x));
            }
        }
        Located { reps }
    }

    fn develop(frame: &Frame, y: &[f64]) -> Vec<f64> {
        let mut q = vec![0.0; y.len()];
        for (k, &v) in y.iter().enumerate() {
            q[frame.axis[k]] = frame.sign[k] * v;
        }
        q
    }

    /// Crossing times must follow the gallery order.
    fn valid(frame: &Frame, x: &[f64], q: &[f64]) -> bool {
        let mut last = 0.0;
        for &a in &frame.crossed {
            let den = x[a] - q[a];
            if den <= 0.0 {
                if x[a] == 0.0 && q[a] == 0.0 {
                    continue;
                }
                return false;
            }
            let t = x[a] / den;
            if t < last - 1e-12 {
                return false;
            }
            last = last.max(t);
        }
        true
    }

    fn straight(&self, p: &Located, q: &Located) -> Option<Straight> {
        let mut best: Option<Straight> = None;
        let mut done_start: Vec<usize> = Vec::new();
        for (c0, x) in &p.reps {
            // one chart image per start chamber suffices: galleries are closed under symmetries
            if done_start.contains(c0) {
                continue;
            }
            done_start.push(*c0);
            for (c1, y) in &q.reps {
                if c1 == c0 {
                    let a = angle(x, y);
                    if best.as_ref().is_none_or(|b| a < b.angle) {
                        best = Some(Straight { angle: a, start: (*c0, x.clone()), frame: None, end: y.clone() });
                    }
                }
                for &fi in &self.frames_to[*c0][*c1] {
                    let frame = &self.frames[*c0][fi];
                    if frame.crossed.is_empty() {
                        continue;
                    }
                    let qq = Self::develop(frame, y);
                    let a = angle(x, &qq);
                    if a >= PI || best.as_ref().is_some_and(|b| a >= b.angle) {
                        continue;
                    }
                    if Self::valid(frame, x, &qq) {
                        best = Some(Straight { angle: a, start: (*c0, x.clone()), frame: Some((*c0, fi)), end: qq });
                    }
                }
            }
        }
        best
    }

    fn vertex_graph(&mut self) {
        let v = self.vertices.len();
        let mut dist = vec![vec![f64::INFINITY; v]; v];
        let mut pieces: Vec<Vec<Option<Straight>>> = vec![vec![None; v]; v];
        let mut next = vec![vec![None; v]; v];
        for i in 0..v {
            dist[i][i] = 0.0;
            for j in 0..v {
                if i != j {
                    if let Some(s) = self.straight(&self.vertex_points[i], &self.vertex_points[j]) {
                        dist[i][j] = s.angle;
                        next[i][j] = Some(j);
                        pieces[i][j] = Some(s);
                    }
                }
            }
        }
        for k in 0..v {
            for i in 0..v {
                for j in 0..v {
                    let d = dist[i][k] + dist[k][j];
                    if d < dist[i][j] {
                        dist[i][j] = d;
                        next[i][j] = next[i][k];
                    }
                }
            }
        }
        self.vertex_dist = dist;
        self.vertex_next = next;
        self.vertex_pieces = pieces;
    }

    /// Shortest path made of straight pieces, bending only at vertices of the complex.
    pub fn geodesic(&self, p: &Located, q: &Located) -> Option<Geodesic> {
        let mut best: Option<(f64, Geodesic)> = self.straight(p, q).map(|s| (s.angle, Geodesic { pieces: vec![s] }));
        let v = self.vertices.len();
        let to: Vec<Option<Straight>> = (0..v).map(|i| self.straight(p, &self.vertex_points[i])).collect();
        let from: Vec<Option<Straight>> = (0..v).map(|i| self.straight(&self.vertex_points[i], q)).collect();
        for i in 0..v {
            let Some(a) = &to[i] else { continue };
            for j in 0..v {
                let Some(b) = &from[j] else { continue };
                let total = a.angle + self.vertex_dist[i][j] + b.angle;
                if best.as_ref().is_none_or(|(d, _)| total < *d) {
                    let mut pieces = vec![a.clone()];
                    let mut k = i;
                    while k != j {
                        let Some(nk) = self.vertex_next[k][j] else { break };
                        pieces.push(self.vertex_pieces[k][nk].clone().expect("edge piece"));
                        k = nk;
                    }
                    pieces.push(b.clone());
                    best = Some((total, Geodesic { pieces }));
                }
            }
        }
        best.map(|(_, g)| g)
    }

    /// Path distance in the complex, capped at `π`.
    pub fn distance(&self, p: &Located, q: &Located) -> f64 {
        self.geodesic(p, q).map_or(PI, |g| g.length().min(PI))
    }

    /// Point at arc length `t` along `g`, as `(chamber simplex, unit chart vector)`.
    pub fn point_at(&self, g: &Geodesic, t: f64) -> (usize, Vec<f64>) {
        let mut left = t.max(0.0);
        for (i, piece) in g.pieces.iter().enumerate() {
            if left <= piece.angle || i + 1 == g.pieces.len() {
                return self.point_on(piece, left.min(piece.angle));
            }
            left -= piece.angle;
        }
        unreachable!("geodesics have at least one piece")
    }

    fn point_on(&self, s: &Straight, t: f64) -> (usize, Vec<f64>) {
        let (c0, x) = &s.start;
        let z: Vec<f64> = if s.angle == 0.0 {
            x.clone()
        } else {
            let (a, b) = ((s.angle - t).sin() / s.angle.sin(), t.sin() / s.angle.sin());
            unit(&x.iter().zip(&s.end).map(|(p, q)| a * p + b * q).collect::<Vec<_>>())
        };
        let Some((start, fi)) = s.frame else {
            return (self.chambers[*c0], z.iter().map(|v| v.max(0.0)).collect());
        };
        // walk back to the gallery prefix whose crossings precede z
        let frames = &self.frames[start];
        let mut chain = vec![fi];
        while let Some(p) = frames[*chain.last().expect("nonempty")].parent {
            chain.push(p);
        }
        chain.reverse();
        let full = &frames[fi].crossed;
        let depth = full.iter().take_while(|&&a| z[a] < 0.0).count();
        let frame = &frames[chain[depth]];
        let y: Vec<f64> = (0..self.n).map(|k| (frame.sign[k] * z[frame.axis[k]]).max(0.0)).collect();
        (self.chambers[frame.chamber], unit(&y))
    }

    /// Canonical `(simplex, weights)` of a chart point: smallest supporting face, weights
    /// minimized over its symmetries.
    pub fn canonical_point(&self, simplex: usize, w: &[f64]) -> (usize, Vec<f64>) {
        let (mut s, mut w) = (simplex, w.to_vec());
        while let Some(i) = w.iter().position(|&x| x == 0.0) {
            let sx = self.complex.simplex(s);
            if sx.dim == 0 {
                break;
            }
            w = sx.face_vertices[i].iter().map(|&k| w[k]).collect();
            s = sx.faces[i];
        }
        let best = self
            .complex
            .simplex(s)
            .symmetries
            .iter()
            .map(|h| h.iter().map(|&k| w[k]).collect::<Vec<f64>>())
            .min_by(|a, b| a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal))
            .expect("identity present");
        (s, best)
    }

    /// Vertices of the complex, as simplex indices.
    pub fn complex_vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn vertex_distance_matrix(&self) -> &[Vec<f64>] {
        &self.vertex_dist
    }
}
