//! Short curves, the simplex of short pants curves, and the thick–thin tile of a point.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperbolic::{build_holonomy, collar_half_width, FNPoint, FnCoordinate, Holonomy, COLLAR_CONSTANT};
use crate::matrix::Mat2;
use crate::topology::{cut_surface, multicurve_type, CutSurface, DecompositionSimplex, PantsDecomposition, TypeLabel};
use crate::words::{CurveClass, Letter, Word};

/// Default thick–thin threshold ε₀.
pub const DEFAULT_EPSILON: f64 = 0.1;
pub const DEFAULT_WORD_BOUND: usize = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct ShortCurve {
    pub class: CurveClass,
    pub length: f64,
    /// Index of the pants curve representing the class, when identified.
    pub pants_curve: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShortCurveReport {
    pub epsilon: f64,
    /// Sorted by length, ties by word.
    pub curves: Vec<ShortCurve>,
    pub word_bound: usize,
    pub complete: bool,
}

fn check_epsilon(epsilon: f64, max: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon <= max) {
        return Err(Error::EpsilonOutOfRange { epsilon, max });
    }
    Ok(())
}

/// True if every essential non-pants curve crosses a pants-curve collar of half-width above
/// `ε/2`, so that all curves shorter than `ε` are pants curves.
pub fn collar_certificate(x: &FNPoint, epsilon: f64) -> bool {
    x.coordinates().iter().all(|c| 2.0 * collar_half_width(c.length) > epsilon)
}

/// Lengths used to tell pants curves apart: distinct, and no one a multiple of another.
fn reference_point(x: &FNPoint) -> Result<FNPoint> {
    let coords = x
        .coordinates()
        .iter()
        .enumerate()
        .map(|(i, c)| FnCoordinate { length: reference_length(i), twist: c.twist })
        .collect();
    FNPoint::new(x.surface().clone(), coords)
}

fn reference_length(i: usize) -> f64 {
    0.6 + 0.1 * std::f64::consts::SQRT_2 * i as f64
}

enum Identified {
    Pants(usize),
    Power,
    Unknown,
}

fn identify(reference: &Holonomy, n: usize, w: &Word) -> Identified {
    let Ok(l) = reference.length(w) else {
        return Identified::Unknown;
    };
    for j in 0..n {
        let r = reference_length(j);
        if (l - r).abs() < 1e-8 {
            return Identified::Pants(j);
        }
        if (2..=16).any(|k| (l - k as f64 * r).abs() < 1e-8) {
            return Identified::Power;
        }
    }
    Identified::Unknown
}

/// Enumeration of conjugacy classes of words up to `word_bound` whose geodesic
/// is shorter than `epsilon`.
pub fn enumerate_short_geodesics(x: &FNPoint, epsilon: f64, word_bound: usize) -> Result<ShortCurveReport> {
    check_epsilon(epsilon, COLLAR_CONSTANT)?;
    if word_bound == 0 {
        return Err(Error::InvalidWordBound);
    }
    let surface = x.surface();
    let hol = build_holonomy(x)?;
    let reference = build_holonomy(&reference_point(x)?)?;
    let n = x.pd().curve_count();
    let gens: Vec<Mat2> = hol.generators().iter().map(|g| g.to_f64()).collect();
    let letters: Vec<(Letter, Mat2)> = gens
        .iter()
        .enumerate()
        .flat_map(|(i, g)| [(Letter::new(i as u16, false), *g), (Letter::new(i as u16, true), g.adjugate())])
        .collect();
    let cutoff = 2.0 * (0.5 * epsilon).cosh();

    let mut found: Vec<(Word, f64)> = Vec::new();
    let mut visit = |v: &[Letter], prod: &Mat2| {
        let f = prod.frobenius();
        if v[0] != v[v.len() - 1].inv() && prod.trace().abs() < cutoff + 1e-9 + 1e-15 * f * f {
            let word = Word(v.to_vec());
            if word.canonical() == word && !word.is_proper_power() && !surface.is_peripheral(&word) {
                if let Ok(len) = hol.length(&word) {
                    if len < epsilon {
                        found.push((word, len));
                    }
                }
            }
        }
    };
    // depth-first over reduced words, carrying prefix products
    let mut stack: Vec<(usize, Mat2)> = Vec::with_capacity(word_bound);
    let mut word: Vec<Letter> = Vec::with_capacity(word_bound);
    let mut choice = 0usize;
    loop {
        if choice < letters.len() && word.len() < word_bound {
            let (l, g) = letters[choice];
            if word.last().is_some_and(|&p| p == l.inv()) {
                choice += 1;
                continue;
            }
            let prod = stack.last().map_or(g, |(_, m)| *m * g);
            word.push(l);
            stack.push((choice, prod));
            visit(&word, &prod);
            choice = 0;
        } else {
            let Some((c, _)) = stack.pop() else { break };
            word.pop();
            choice = c + 1;
        }
    }

    let mut by_curve: Vec<Option<(Word, f64)>> = vec![None; n];
    let mut curves = Vec::new();
    let mut unknown = false;
    for (w, len) in found {
        match identify(&reference, n, &w) {
            Identified::Pants(j) => {
                let keep = by_curve[j].as_ref().is_none_or(|(u, _)| (w.len(), &w) < (u.len(), u));
                if keep {
                    by_curve[j] = Some((w, len));
                }
            }
            Identified::Power => {}
            Identified::Unknown => {
                unknown = true;
                curves.push(ShortCurve { class: CurveClass::new(&w)?, length: len, pants_curve: None });
            }
        }
    }
    for (j, entry) in by_curve.into_iter().enumerate() {
        if let Some((_, len)) = entry {
            curves.push(ShortCurve { class: surface.curve_class(j), length: len, pants_curve: Some(j) });
        }
    }
    let all_pants_found = (0..n).all(|j| x.length(j) >= epsilon || curves.iter().any(|c| c.pants_curve == Some(j)));
    sort_curves(&mut curves);
    Ok(ShortCurveReport {
        epsilon,
        curves,
        word_bound,
        complete: collar_certificate(x, epsilon) && all_pants_found && !unknown,
    })
}

fn sort_curves(curves: &mut [ShortCurve]) {
    curves.sort_by(|a, b| a.length.total_cmp(&b.length).then_with(|| a.class.cmp(&b.class)));
}

/// The short-curve report read directly off the pants lengths. Agrees with
/// [`enumerate_short_geodesics`] whenever the collar certificate holds.
pub fn certified_short_curves(x: &FNPoint, epsilon: f64) -> Result<ShortCurveReport> {
    check_epsilon(epsilon, COLLAR_CONSTANT)?;
    let surface = x.surface();
    let n = x.pd().curve_count();
    let mut curves: Vec<ShortCurve> = (0..n)
        .filter(|&j| x.length(j) < epsilon)
        .map(|j| ShortCurve { class: surface.curve_class(j), length: x.length(j), pants_curve: Some(j) })
        .collect();
    sort_curves(&mut curves);
    let word_bound = (0..n).map(|j| surface.presentation().curve_word(j).len()).max().unwrap_or(1);
    Ok(ShortCurveReport { epsilon, curves, word_bound, complete: collar_certificate(x, epsilon) })
}

/// The simplex spanned by the short curves, or `None` in the thick part.
pub fn short_simplex(x: &FNPoint, report: &ShortCurveReport) -> Result<Option<DecompositionSimplex>> {
    if !report.complete {
        return Err(Error::IncompleteEnumeration { word_bound: report.word_bound });
    }
    if report.curves.is_empty() {
        return Ok(None);
    }
    // completing short non-pants curves to an adapted decomposition would need coordinates in a
    // second decomposition; complete reports never contain them
    let curves = report
        .curves
        .iter()
        .map(|c| c.pants_curve.ok_or(Error::DecompositionMismatch))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(DecompositionSimplex::new(curves, x.pd().curve_count())?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TileKind {
    Thick,
    Thin,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThinTile {
    pub sigma: DecompositionSimplex,
    /// `σ`-lengths set to `ε`, twist fractions and all other coordinates kept.
    pub base_point: FNPoint,
    /// `u_α - a` for `α ∈ σ`, in the order of `sigma`.
    pub cone_coords: Vec<f64>,
    pub type_label: TypeLabel,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Tile {
    Thick,
    Thin(ThinTile),
}

impl Tile {
    pub fn kind(&self) -> TileKind {
        match self {
            Tile::Thick => TileKind::Thick,
            Tile::Thin(_) => TileKind::Thin,
        }
    }

    pub fn thin(&self) -> Option<&ThinTile> {
        match self {
            Tile::Thick => None,
            Tile::Thin(t) => Some(t),
        }
    }
}

/// Cone coordinate `u - a = log(ε/l)/2` of a curve of length `l < ε`.
pub fn cone_coordinate(length: f64, epsilon: f64) -> f64 {
    0.5 * (epsilon / length).ln()
}

/// Thick or thin tile of `x`. Points with every length `≥ ε` are thick.
pub fn classify_tile(x: &FNPoint, epsilon: f64) -> Result<Tile> {
    check_epsilon(epsilon, DEFAULT_EPSILON)?;
    let report = certified_short_curves(x, epsilon)?;
    let Some(sigma) = short_simplex(x, &report)? else {
        return Ok(Tile::Thick);
    };
    let mut coords = x.coordinates().to_vec();
    let mut cone_coords = Vec::with_capacity(sigma.len());
    for &c in sigma.curves() {
        let FnCoordinate { length, twist } = coords[c];
        cone_coords.push(cone_coordinate(length, epsilon));
        coords[c] = FnCoordinate { length: epsilon, twist: twist / length * epsilon };
    }
    let type_label = multicurve_type(x.pd(), &sigma);
    Ok(Tile::Thin(ThinTile { base_point: FNPoint::new(x.surface().clone(), coords)?, sigma, cone_coords, type_label }))
}

pub fn classify_batch(points: &[FNPoint], epsilon: f64) -> Vec<Result<Tile>> {
    points.par_iter().map(|x| classify_tile(x, epsilon)).collect()
}

/// Inverse of [`classify_tile`] on a thin tile.
pub fn reconstruct(tile: &ThinTile, epsilon: f64) -> Result<FNPoint> {
    let mut coords = tile.base_point.coordinates().to_vec();
    for (&c, &u) in tile.sigma.curves().iter().zip(&tile.cone_coords) {
        let length = epsilon * (-2.0 * u).exp();
        let FnCoordinate { length: base, twist } = coords[c];
        coords[c] = FnCoordinate { length, twist: twist / base * length };
    }
    FNPoint::new(tile.base_point.surface().clone(), coords)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerProfile {
    pub twist_rank: usize,
    pub cut: CutSurface,
    /// The boundary face is a torus of dimension `d(S)`: every cut component is a pair of pants.
    pub is_torus_face: bool,
}

pub fn stabilizer_profile(pd: &PantsDecomposition, sigma: &DecompositionSimplex) -> StabilizerProfile {
    let cut = cut_surface(pd, sigma);
    let is_torus_face = cut.components.iter().all(|c| c.genus == 0 && c.punctures + c.boundary == 3);
    StabilizerProfile { twist_rank: sigma.len(), cut, is_torus_face }
}

#[cfg(test)]
mod tests;
