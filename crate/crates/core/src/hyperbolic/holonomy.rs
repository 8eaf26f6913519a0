//! Holonomy of a Fenchel–Nielsen point: pants representations glued by axis translations.
//! Gluing and word evaluation run in double-double precision, since lengths of short curves
//! are read off traces within `l²/4` of 2.

use twofloat::TwoFloat;

use super::fn_point::FNPoint;
use super::presentation::{GeneratorKind, Gluing};
use crate::error::{Error, Result};
use crate::matrix::DdMat2;
use crate::topology::{PantsDecomposition, SlotRef, SlotUse};
use crate::words::{CurveClass, Word};

/// Trace tolerance below which a class is treated as parabolic or elliptic; a term
/// proportional to the squared matrix norm is added to absorb rounding in long products.
pub const TRACE_TOLERANCE: f64 = 1e-12;
pub const RELATOR_TOLERANCE: f64 = 1e-7;

type M = DdMat2;

fn dd(x: f64) -> TwoFloat {
    TwoFloat::from(x)
}

#[derive(Clone, Debug)]
pub struct Holonomy {
    generators: Vec<M>,
    relator_residual: f64,
}

impl Holonomy {
    pub fn generators(&self) -> &[DdMat2] {
        &self.generators
    }

    pub fn relator_residual(&self) -> f64 {
        self.relator_residual
    }

    pub fn evaluate(&self, w: &Word) -> DdMat2 {
        let mut m = M::IDENTITY;
        for l in w.letters() {
            let g = self.generators[l.generator as usize];
            m = m * if l.inverse { g.adjugate() } else { g };
        }
        m
    }

    /// Translation length of the class of `w`.
    pub fn length(&self, w: &Word) -> Result<f64> {
        length_from_matrix(&self.evaluate(&w.cyclically_reduced()))
    }
}

/// `2 arccosh(|tr|/2)`, rejecting traces within rounding of the parabolic threshold.
pub fn length_from_matrix(m: &DdMat2) -> Result<f64> {
    let t = m.trace().abs();
    let tf: f64 = t.into();
    let tol = TRACE_TOLERANCE + 1e-28 * m.frobenius().powi(2);
    // arccosh(1 + δ) = 2 arcsinh(sqrt(δ/2)) keeps the digits of δ = |tr|/2 - 1
    let delta = t * 0.5 - 1.0;
    if delta * 2.0 <= tol || !tf.is_finite() {
        return Err(Error::NotHyperbolic { trace: tf });
    }
    let r: f64 = (delta * 0.5).sqrt().into();
    Ok(4.0 * r.asinh())
}

fn trace_of(len: Option<f64>) -> f64 {
    match len {
        Some(l) => -2.0 * (0.5 * l).cosh(),
        None => -2.0,
    }
}

/// Boundary elements of one pair of pants with product `M0 M1 M2 = I`.
fn pants_matrices(l: [Option<f64>; 3]) -> [M; 3] {
    let t0 = trace_of(l[0]);
    let t1 = trace_of(l[1]);
    // s + 1/s = tr M2 with s in [-1, 0)
    let s = match l[2] {
        Some(l2) => -(-0.5 * l2).exp(),
        None => -1.0,
    };
    let a = M::new(dd(t0), dd(-1.0), dd(1.0), dd(0.0));
    let b = M::new(dd(0.0), dd(s), -dd(s).recip(), dd(t1));
    let c = (a * b).adjugate();
    [a, b, c]
}

struct Conjugator {
    m: M,
    residual: f64,
}

/// Unit-determinant traceless matrix of a point of the hyperbolic plane, lower-left entry positive.
fn normalize_point(p: M) -> Option<M> {
    let d = p.det();
    if !(d > 0.0) {
        return None;
    }
    let q = p.scale(d.sqrt().recip());
    Some(if q.c < 0.0 { -q } else { q })
}

/// Foot on the axis of `m` of the common perpendicular to the axis (or cusp) of `next`.
fn foot(m: &M, next: &M) -> Option<M> {
    let v1 = m.traceless_part();
    let n = v1.bracket(&next.traceless_part());
    normalize_point(v1.bracket(&n))
}

/// `±y` with positive trace.
fn positive(y: &M) -> M {
    if y.trace() > 0.0 {
        *y
    } else {
        -*y
    }
}

/// Translation by `s` along the axis of `y`, in the direction `y` translates; `l` is the
/// translation length of `y`.
fn axis_translation(y: &M, l: f64, s: f64) -> M {
    let z = positive(y);
    let sl = (0.5 * l).sinh();
    (M::IDENTITY.scale(dd((0.5 * (l - s)).sinh() / sl)) + z.scale(dd((0.5 * s).sinh() / sl))).normalized()
}

/// Unit traceless direction of the axis of `y`, oriented along its translation.
fn axis_direction(y: &M) -> Option<M> {
    let v = positive(y).traceless_part();
    let n2 = -v.det();
    if !(n2 > 0.0) {
        return None;
    }
    Some(v.scale(n2.sqrt().recip()))
}

/// The element of SL(2,R) carrying the standard frame (point `i`, upward axis) to the frame
/// (`p`, `v`), where `p` is a normalized point and `v` a unit direction through it.
fn frame(p: &M, v: &M) -> Option<M> {
    let p0 = M::new(dd(0.0), dd(-1.0), dd(1.0), dd(0.0));
    let v0 = M::new(dd(1.0), dd(0.0), dd(0.0), dd(-1.0));
    let p0_inv = p0.adjugate();
    // F = M + v M v0 + p M p0^{-1} + v p M p0^{-1} v0 intertwines both pairs
    let project = |m: M| m + *v * m * v0 + *p * m * p0_inv + *v * *p * m * p0_inv * v0;
    let candidates = [M::IDENTITY, v0, p0, v0 * p0];
    let f = candidates
        .iter()
        .map(|&m| project(m))
        .max_by(|a, b| a.frobenius().total_cmp(&b.frobenius()))?;
    let d = f.det();
    if !(d > 0.0) {
        return None;
    }
    Some(f.normalized())
}

/// `C` with `C x C^{-1} = y` and `C(foot_x) = foot_y`, followed by translation `theta` along `y`.
fn glue(x: &M, foot_x: &M, y: &M, foot_y: &M, l: f64, theta: f64) -> Option<Conjugator> {
    let fx = frame(foot_x, &axis_direction(x)?)?;
    let fy = frame(foot_y, &axis_direction(y)?)?;
    let aligned = (fy * fx.adjugate()).normalized();
    let scale = y.max_abs().max(1.0);
    let moved = normalize_point(aligned.conjugate(foot_x))?;
    let residual = ((aligned.conjugate(x) - *y).max_abs() / scale).max((moved - *foot_y).max_abs() / scale);
    if !residual.is_finite() {
        return None;
    }
    let m = (axis_translation(y, l, theta) * aligned).normalized();
    Some(Conjugator { m, residual })
}

/// Gluing residual above which a conjugator is reported as degenerate.
const GLUE_TOLERANCE: f64 = 1e-6;

pub fn build_holonomy(x: &FNPoint) -> Result<Holonomy> {
    let pd: &PantsDecomposition = x.pd();
    let pres = x.surface().presentation();
    let np = pd.pants_count();
    let slot_length = |s: SlotRef| match pd.slot_use(s) {
        SlotUse::Curve { curve, .. } => Some(x.length(curve)),
        SlotUse::Puncture(_) => None,
    };
    let local: Vec<[M; 3]> = (0..np)
        .map(|j| pants_matrices([0, 1, 2].map(|k| slot_length(SlotRef { pants: j, position: k }))))
        .collect();
    let local_foot = |s: SlotRef| -> Option<M> {
        let m = &local[s.pants];
        foot(&m[s.position], &m[(s.position + 1) % 3])
    };
    let degenerate = |curve: usize, reason: &str| Error::DegenerateGluing {
        curve: pd.curve_id(curve).to_string(),
        reason: reason.to_string(),
    };

    // relative gluing of each tree edge in local frames: G_child = G_parent K
    let mut residual: f64 = 0.0;
    let mut adjacent: Vec<Vec<(usize, M)>> = vec![Vec::new(); np];
    for curve in 0..pd.curve_count() {
        if let Gluing::Tree { parent, child } = pres.gluing(curve) {
            let y = local[parent.pants][parent.position].adjugate();
            let fy = local_foot(parent).ok_or_else(|| degenerate(curve, "foot undefined"))?;
            let fx = local_foot(child).ok_or_else(|| degenerate(curve, "foot undefined"))?;
            let xm = local[child.pants][child.position];
            let conj = glue(&xm, &fx, &y, &fy, x.length(curve), x.twist(curve))
                .ok_or_else(|| degenerate(curve, "axis frame is singular"))?;
            if conj.residual > GLUE_TOLERANCE {
                return Err(degenerate(curve, &format!("conjugation residual {:.3e}", conj.residual)));
            }
            residual = residual.max(conj.residual);
            adjacent[parent.pants].push((child.pants, conj.m));
            adjacent[child.pants].push((parent.pants, conj.m.adjugate()));
        }
    }
    // propagate from a pants of minimal eccentricity to keep matrix entries small
    let bfs = |start: usize| -> Vec<(usize, usize, M)> {
        let mut seen = vec![false; np];
        let mut out = Vec::with_capacity(np);
        let mut queue = std::collections::VecDeque::from([(start, 0usize, M::IDENTITY)]);
        seen[start] = true;
        while let Some((j, depth, m)) = queue.pop_front() {
            out.push((j, depth, m));
            for &(k, kmat) in &adjacent[j] {
                if !seen[k] {
                    seen[k] = true;
                    queue.push_back((k, depth + 1, (m * kmat).normalized()));
                }
            }
        }
        out
    };
    let center = (0..np)
        .min_by_key(|&j| bfs(j).iter().map(|t| t.1).max().unwrap_or(0))
        .unwrap_or(0);
    let mut g = vec![M::IDENTITY; np];
    for (j, _, m) in bfs(center) {
        g[j] = m;
    }
    let global = |g: &[M], s: SlotRef| g[s.pants].conjugate(&local[s.pants][s.position]);
    let global_foot = |g: &[M], s: SlotRef| -> Option<M> { normalize_point(g[s.pants].conjugate(&local_foot(s)?)) };

    let mut raw: Vec<M> = Vec::with_capacity(pres.raw_kinds().len());
    for kind in pres.raw_kinds() {
        let m = match *kind {
            GeneratorKind::Slot(s) => global(&g, s),
            GeneratorKind::Stable { curve } => {
                let (first, second) = match pres.gluing(curve) {
                    Gluing::Stable { first, second, .. } => (first, second),
                    Gluing::Tree { .. } => unreachable!(),
                };
                let w = global(&g, first);
                let xm = global(&g, second);
                let fw = global_foot(&g, first).ok_or_else(|| degenerate(curve, "foot undefined"))?;
                let fx = global_foot(&g, second).ok_or_else(|| degenerate(curve, "foot undefined"))?;
                let conj = glue(&xm, &fx, &w.adjugate(), &fw, x.length(curve), x.twist(curve))
                    .ok_or_else(|| degenerate(curve, "axis frame is singular"))?;
                if conj.residual > GLUE_TOLERANCE {
                    return Err(degenerate(curve, &format!("conjugation residual {:.3e}", conj.residual)));
                }
                residual = residual.max(conj.residual);
                conj.m
            }
        };
        raw.push(m.normalized());
    }
    let eval_raw = |w: &Word| {
        let mut m = M::IDENTITY;
        for l in w.letters() {
            let a = raw[l.generator as usize];
            m = m * if l.inverse { a.adjugate() } else { a };
        }
        m
    };
    let generators: Vec<M> = pres.final_raw().iter().map(|&r| raw[r]).collect();
    let hol = Holonomy { generators, relator_residual: 0.0 };

    // slot words, eliminated generators and relators must all be consistent
    for j in 0..np {
        for k in 0..3 {
            let s = SlotRef { pants: j, position: k };
            let direct = global(&g, s);
            let scale = direct.max_abs().max(1.0);
            let via_raw = eval_raw(&pres.raw_slot_words()[j][k]);
            let via_final = hol.evaluate(pres.slot_word(s));
            residual = residual.max((via_raw - direct).max_abs() / scale);
            residual = residual.max((via_final - direct).max_abs() / scale);
        }
    }
    for (r, img) in pres.raw_to_final().iter().enumerate() {
        let scale = raw[r].max_abs().max(1.0);
        residual = residual.max((hol.evaluate(img) - raw[r]).max_abs() / scale);
    }
    for rel in pres.relators() {
        residual = residual.max(hol.evaluate(rel).distance_to_pm_identity());
    }
    Ok(Holonomy { relator_residual: residual, ..hol })
}

pub fn geodesic_length(x: &FNPoint, c: &CurveClass) -> Result<f64> {
    build_holonomy(x)?.length(c.word())
}
