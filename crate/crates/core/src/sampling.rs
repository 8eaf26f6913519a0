//! Seeded random points and words for tests, acceptance runs and the CLI.

use std::sync::Arc;

use rand::Rng;

use crate::complex::{ConePoint, SphericalComplex};
use crate::hyperbolic::{FNPoint, FnCoordinate, MarkedSurface};
use crate::words::{Letter, Word};

/// Lengths log-uniform in `[lo, hi]`, twists uniform in `[-l, l]`.
pub fn random_point<R: Rng + ?Sized>(surface: &Arc<MarkedSurface>, rng: &mut R, lo: f64, hi: f64) -> FNPoint {
    let coords = (0..surface.pd().curve_count())
        .map(|_| {
            let length = (rng.gen_range(lo.ln()..=hi.ln())).exp();
            let twist = rng.gen_range(-length..=length);
            FnCoordinate { length, twist }
        })
        .collect();
    FNPoint::new(surface.clone(), coords).expect("positive lengths")
}

/// A freely reduced word of the given length over `generators` letters.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, generators: usize, len: usize) -> Word {
    let mut v: Vec<Letter> = Vec::with_capacity(len);
    while v.len() < len {
        let l = Letter::new(rng.gen_range(0..generators) as u16, rng.gen_bool(0.5));
        if v.last().is_some_and(|p| *p == l.inv()) {
            continue;
        }
        v.push(l);
    }
    Word(v)
}

/// A cone point over a uniformly chosen simplex, with exponential weights (zero with
/// probability 1/8 each, so faces are hit) and radius uniform in `[0, max_radius]`.
pub fn random_cone_point<R: Rng + ?Sized>(complex: &SphericalComplex, rng: &mut R, max_radius: f64) -> ConePoint {
    let s = complex.simplex(rng.gen_range(0..complex.simplices().len()));
    let mut w: Vec<f64> = (0..s.vertex_count())
        .map(|_| if rng.gen_ratio(1, 8) { 0.0 } else { -rng.gen::<f64>().max(f64::MIN_POSITIVE).ln() })
        .collect();
    if w.iter().all(|&x| x == 0.0) {
        w[0] = 1.0;
    }
    let radius = rng.gen_range(0.0..=max_radius);
    ConePoint::new(radius, &s.id, &w).expect("valid weights")
}
